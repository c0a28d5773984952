"""Desk-scale benchmark protocols: missing measurements, trees, ordinal data."""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..config import (
    D0_DELTA,
    DEFAULT_SPREAD,
    DEFAULT_TRIALS,
    EPS1_FACTOR,
    GEOMETRIES,
    OBJECTIVES,
    ORDINAL_MIN_DISTANCE,
    ORDINAL_TRUE_DIM,
    SOLVED_GRAMIAN_CLAMP_TOL,
    SPARSITY_MAX_NODES,
    SUCCESS_DELTA,
    TREE_EPS1_FACTOR,
    TREE_LOGDET_ROUNDS,
    TREE_MAX_NODES,
)
from ..conic_solver import SolverConfig, solve_psd_least_squares
from ..embedding import SdrOptions, embed_points, sdr_complete
from ..errors import HdgpError, InputError
from ..gramian import Hdm, ObservationMask, hdm_from_gramian, hdm_of_points, relative_error
from ..lorentz import random_loid_points
from .sampling import (
    complete_ordinal_set,
    corrupt_ordinal_set,
    ordinal_accuracy,
    sample_metric_mask,
    sample_ordinal_by_density,
    sample_ordinal_set,
)
from .trees import (
    euclidean_reconstructions,
    hyperbolic_reconstructions,
    optimal_embedding_dimension,
    random_weighted_tree,
    tree_distance_matrix,
)

log = logging.getLogger(__name__)


@dataclass
class TrialSummary:
    """
    Aggregate of M trials at one grid point.

    ``mean``/``std`` describe ``metric`` over the trials that ran; failed
    trials (exceptions) are counted in ``failures`` and score as unsuccessful.
    """

    experiment: str
    params: Dict[str, object]
    trials: int
    seed: int
    metric: str = "e_rel"
    mean: float = float("nan")
    std: float = float("nan")
    successes: Optional[int] = None
    failures: int = 0
    nonconverged: int = 0
    extra: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        counts = [self.failures, self.nonconverged]
        if self.successes is not None:
            counts.append(self.successes)
        if any(c < 0 or c > self.trials for c in counts):
            raise InputError("trial counts must lie in [0, trials]")

    @property
    def success_probability(self) -> Optional[float]:
        if self.successes is None or self.trials == 0:
            return None
        return self.successes / self.trials

    def to_record(self) -> Dict[str, object]:
        record = {"experiment": self.experiment, **self.params}
        record.update(
            {
                "trials": self.trials,
                "seed": self.seed,
                "metric": self.metric,
                "mean": self.mean,
                "std": self.std,
                "successes": self.successes,
                "success_probability": self.success_probability,
                "failures": self.failures,
                "nonconverged": self.nonconverged,
            }
        )
        record.update(self.extra)
        return record


def summaries_to_frame(summaries: Sequence[TrialSummary]) -> pd.DataFrame:
    """One row per TrialSummary, parameters first."""
    if not summaries:
        return pd.DataFrame()
    return pd.DataFrame([s.to_record() for s in summaries])


def _trial_seeds(seed: int, m_trials: int, words: int = 2) -> List[List[int]]:
    """Independent per-trial integer seeds; fixed by (seed, trial index)."""
    children = np.random.SeedSequence(seed).spawn(m_trials)
    return [[int(v) for v in child.generate_state(words)] for child in children]


def _run(fn, jobs, n_jobs):
    if n_jobs == 1:
        return [fn(*args) for args in jobs]
    return Parallel(n_jobs=n_jobs)(delayed(fn)(*args) for args in jobs)


def _stats(values):
    if len(values) == 0:
        return float("nan"), float("nan")
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std())


def solved_hdm(g: np.ndarray) -> Hdm:
    """Distances of a solver-produced Gramian, tolerating residual-level infeasibility."""
    return hdm_from_gramian(g, clamp_tol=SOLVED_GRAMIAN_CLAMP_TOL)


# --- Missing measurements ---


def _sparsity_trial(n, d, s, point_seed, mask_seed, delta, spread, options):
    points = random_loid_points(n, d, seed=point_seed, spread=spread)
    truth = hdm_of_points(points)
    mask = sample_metric_mask(n, s, seed=mask_seed)
    try:
        dtilde = Hdm(truth.values * mask.entries)
        g, report = sdr_complete(dtilde, mask, [], d, options)
        error = relative_error(truth, solved_hdm(g))
    except HdgpError as e:
        log.warning("sparsity trial failed (S=%s): %s", s, e)
        return {"failed": True}
    return {
        "failed": False,
        "e_rel": error,
        "success": error <= delta,
        "converged": report.converged,
    }


def sparsity_success_curve(
    n: int,
    d: int,
    s_grid: Sequence[float],
    m_trials: int = DEFAULT_TRIALS,
    delta: float = SUCCESS_DELTA,
    seed: int = 0,
    spread: float = DEFAULT_SPREAD,
    options: Optional[SdrOptions] = None,
    n_jobs: int = 1,
) -> List[TrialSummary]:
    """
    Probability of delta-accurate completion as a function of the sampling density.

    Each trial draws points on the d-dimensional 'Loid (shared across the grid
    for a given trial index), withholds a fraction S of the pairs, solves the
    noise-free relaxation and scores e_rel = ||D - acosh(-G)|| / ||D||.

    Args:
        n: Number of points
        d: Dimension
        s_grid: Sampling densities
        m_trials: Trials per density (M)
        delta: Success threshold on e_rel
        seed: Master seed
        spread: Standard deviation of the spatial coordinates
        options: Relaxation options (projection reweighting towards rank d by default)
        n_jobs: joblib workers

    Returns:
        List[TrialSummary]: One summary per density, in grid order
    """
    if m_trials < 1:
        raise InputError("m_trials must be at least 1")
    if n > SPARSITY_MAX_NODES:
        log.warning("n=%d exceeds the desk-scale cap %d", n, SPARSITY_MAX_NODES)
    options = options or SdrOptions()
    seeds = _trial_seeds(seed, m_trials)

    summaries = []
    for j, s in enumerate(s_grid):
        jobs = [
            (n, d, float(s), ps, ms + j, delta, spread, options) for ps, ms in seeds
        ]
        outcomes = _run(_sparsity_trial, jobs, n_jobs)
        ran = [o for o in outcomes if not o["failed"]]
        mean, std = _stats([o["e_rel"] for o in ran])
        summaries.append(
            TrialSummary(
                experiment="sparsity",
                params={"n": n, "d": d, "s": float(s), "delta": delta, "spread": spread},
                trials=m_trials,
                seed=seed,
                mean=mean,
                std=std,
                successes=sum(bool(o["success"]) for o in ran),
                failures=m_trials - len(ran),
                nonconverged=sum(not o["converged"] for o in ran),
            )
        )
        log.info("S=%.3f: success %d/%d", s, summaries[-1].successes, m_trials)
    return summaries


# --- Trees ---


def _tree_trial(n, tree_seed, options, lsq_config, delta):
    tree = random_weighted_tree(n, seed=tree_seed)
    dist = tree_distance_matrix(tree)
    try:
        truth = Hdm(dist)
        g_h, report = sdr_complete(truth, ObservationMask.full(n), [], 1, options)
        hyper = hyperbolic_reconstructions(g_h, max(n - 1, 1))
        g_e, lsq_report = solve_psd_least_squares(dist * dist, lsq_config)
        eucl = euclidean_reconstructions(g_e, max(n - 1, 1))
    except HdgpError as e:
        log.warning("tree trial failed (n=%d): %s", n, e)
        return {"failed": True}

    out = {"failed": False, "converged": report.converged and lsq_report.converged}
    for name, recon in (
        (GEOMETRIES["HYPERBOLIC"], hyper),
        (GEOMETRIES["EUCLIDEAN"], eucl),
    ):
        d0 = optimal_embedding_dimension(recon, delta)
        out[name] = {"d0": d0, "e_rel": relative_error(dist, recon[d0 - 1])}
    return out


def tree_benchmark(
    n_grid: Sequence[int],
    m_trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    delta: float = D0_DELTA,
    options: Optional[SdrOptions] = None,
    n_jobs: int = 1,
) -> List[TrialSummary]:
    """
    Paired hyperbolic vs Euclidean embedding of random weighted trees.

    Every trial embeds the same tree both ways: the hyperbolic side solves the
    relaxation with the log-det objective inside a fidelity budget of
    TREE_EPS1_FACTOR, the Euclidean side solves the PSD-constrained
    least-squares problem. Both Gramians lose their eigenvalues below
    RANK_FLOOR before d0 is picked; e_rel(T) = ||D_T - D_{d0}|| / ||D_T||.

    Args:
        n_grid: Node counts
        m_trials: Trials per node count
        seed: Master seed
        delta: Tolerance of the d0 ratio test
        options: Relaxation options of the hyperbolic side
        n_jobs: joblib workers

    Returns:
        List[TrialSummary]: Hyperbolic and Euclidean summaries per n (mean e_rel;
        d0 statistics in ``extra``)
    """
    if m_trials < 1:
        raise InputError("m_trials must be at least 1")
    options = options or SdrOptions(
        objective=OBJECTIVES["LOGDET"],
        logdet_rounds=TREE_LOGDET_ROUNDS,
        noise_scale=TREE_EPS1_FACTOR / EPS1_FACTOR,
    )
    lsq_config = SolverConfig()
    seeds = _trial_seeds(seed, m_trials, words=1)

    summaries = []
    for n in n_grid:
        if n > TREE_MAX_NODES:
            log.warning("n=%d exceeds the desk-scale cap %d", n, TREE_MAX_NODES)
        jobs = [(int(n), s[0], options, lsq_config, delta) for s in seeds]
        outcomes = _run(_tree_trial, jobs, n_jobs)
        ran = [o for o in outcomes if not o["failed"]]
        for geometry in (GEOMETRIES["HYPERBOLIC"], GEOMETRIES["EUCLIDEAN"]):
            mean, std = _stats([o[geometry]["e_rel"] for o in ran])
            d0_mean, d0_std = _stats([o[geometry]["d0"] for o in ran])
            summaries.append(
                TrialSummary(
                    experiment="tree",
                    params={"n": int(n), "geometry": geometry, "delta": delta},
                    trials=m_trials,
                    seed=seed,
                    mean=mean,
                    std=std,
                    failures=m_trials - len(ran),
                    nonconverged=sum(not o["converged"] for o in ran),
                    extra={"d0_mean": d0_mean, "d0_std": d0_std},
                )
            )
    return summaries


# --- Ordinal data ---


def _ordinal_trial(
    n, true_dim, d_grid, k_per_pair, zetas, point_seed, sample_seed, corruption, options
):
    points = random_loid_points(n, true_dim, seed=point_seed)
    complete = complete_ordinal_set(points)
    ordinal = sample_ordinal_set(points, k_per_pair, seed=sample_seed)
    if corruption > 0:
        ordinal = corrupt_ordinal_set(ordinal, corruption, seed=sample_seed + 1)
    empty = Hdm(np.zeros((n, n)))
    mask = ObservationMask.empty(n)
    rows = []
    for zeta in zetas:
        trial_options = replace(options, max_violations_pct=float(zeta))
        # each dimension starts from the solution of the previous one
        g = None
        for d in sorted(d_grid):
            try:
                g, report = sdr_complete(empty, mask, ordinal, d, trial_options, init=g)
                gamma = ordinal_accuracy(embed_points(g, d), complete)
                rows.append((d, zeta, gamma, report.converged, False))
            except HdgpError as e:
                log.warning("ordinal trial failed (zeta=%s, d=%d): %s", zeta, d, e)
                rows.append((d, zeta, 0.0, False, True))
                g = None
    return rows


def ordinal_benchmark(
    n: int,
    d_grid: Sequence[int],
    k_per_pair: int,
    zeta_percent_grid: Sequence[float],
    seed: int = 0,
    m_trials: int = 1,
    true_dim: int = ORDINAL_TRUE_DIM,
    corruption: float = 0.0,
    options: Optional[SdrOptions] = None,
    n_jobs: int = 1,
) -> List[TrialSummary]:
    """
    Ordinal-only embedding accuracy over dimensions and violation budgets.

    Args:
        n: Number of points (generated in true_dim dimensions)
        d_grid: Embedding dimensions
        k_per_pair: Comparisons per pair (|O| = 2K C(N, 2))
        zeta_percent_grid: Budgets p with zeta_p = p/100 * |O| * eps2
        seed: Master seed
        m_trials: Point sets per grid point
        true_dim: Dimension of the generating points
        corruption: Fraction of comparisons flipped before solving
        options: Relaxation options (minimum distance 1 by default)
        n_jobs: joblib workers

    Returns:
        List[TrialSummary]: gamma_d statistics per (d, p), d-major order
    """
    if not d_grid or not zeta_percent_grid:
        raise InputError("d_grid and zeta_percent_grid must be nonempty")
    if m_trials < 1:
        raise InputError("m_trials must be at least 1")
    options = options or SdrOptions(min_distance=ORDINAL_MIN_DISTANCE)
    seeds = _trial_seeds(seed, m_trials)
    jobs = [
        (n, true_dim, list(d_grid), k_per_pair, list(zeta_percent_grid), ps, ss, corruption, options)
        for ps, ss in seeds
    ]
    outcomes = _run(_ordinal_trial, jobs, n_jobs)

    summaries = []
    for d in d_grid:
        for zeta in zeta_percent_grid:
            cells = [r for rows in outcomes for r in rows if r[0] == d and r[1] == zeta]
            ran = [r for r in cells if not r[4]]
            mean, std = _stats([r[2] for r in ran])
            summaries.append(
                TrialSummary(
                    experiment="ordinal",
                    params={
                        "n": n,
                        "d": int(d),
                        "zeta_pct": float(zeta),
                        "k": k_per_pair,
                        "corruption": corruption,
                    },
                    trials=m_trials,
                    seed=seed,
                    metric="gamma",
                    mean=mean,
                    std=std,
                    failures=len(cells) - len(ran),
                    nonconverged=sum(not r[3] for r in ran),
                )
            )
    return summaries


def _consistency_trial(n, d, s, m_sets, point_seed, set_seed, limit, options):
    points = random_loid_points(n, d, seed=point_seed)
    empty = Hdm(np.zeros((n, n)))
    mask = ObservationMask.empty(n)
    estimates = []
    for k in range(m_sets):
        ordinal = sample_ordinal_by_density(points, s, seed=set_seed + k, limit=limit)
        if not ordinal:
            return {"failed": True}
        try:
            g, _ = sdr_complete(empty, mask, ordinal, d, options)
            estimates.append(hdm_of_points(embed_points(g, d)).values)
        except HdgpError as e:
            log.warning("consistency trial failed (S=%s): %s", s, e)
            return {"failed": True}
    mean = np.mean(estimates, axis=0)
    spread = np.mean([relative_error(mean, est) for est in estimates])
    return {"failed": False, "e_rel": float(spread)}


def ordinal_consistency_curve(
    n: int,
    d: int,
    s_grid: Sequence[float],
    m_trials: int = 5,
    k_realizations: int = 5,
    seed: int = 0,
    limit: Optional[int] = None,
    options: Optional[SdrOptions] = None,
    n_jobs: int = 1,
) -> List[TrialSummary]:
    """
    Spread of ordinal-only estimates across random comparison sets.

    For each point set, M comparison sets are drawn at density S; the score is
    the mean relative deviation of the estimated HDMs from their average.

    Args:
        n: Number of points
        d: Dimension of generation and embedding
        s_grid: Ordinal sampling densities
        m_trials: Comparison sets per point set (M)
        k_realizations: Point sets per density (K)
        seed: Master seed
        limit: Optional cap on comparisons per set
        options: Relaxation options (minimum distance 1 by default)
        n_jobs: joblib workers

    Returns:
        List[TrialSummary]: One summary per density
    """
    options = options or SdrOptions(min_distance=ORDINAL_MIN_DISTANCE)
    seeds = _trial_seeds(seed, k_realizations)
    summaries = []
    for j, s in enumerate(s_grid):
        jobs = [
            (n, d, float(s), m_trials, ps, ss + 1000 * j, limit, options) for ps, ss in seeds
        ]
        outcomes = _run(_consistency_trial, jobs, n_jobs)
        ran = [o for o in outcomes if not o["failed"]]
        mean, std = _stats([o["e_rel"] for o in ran])
        summaries.append(
            TrialSummary(
                experiment="ordinal_consistency",
                params={"n": n, "d": d, "s": float(s), "sets": m_trials},
                trials=k_realizations,
                seed=seed,
                mean=mean,
                std=std,
                failures=k_realizations - len(ran),
            )
        )
    return summaries
