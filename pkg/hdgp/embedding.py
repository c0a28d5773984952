"""
End-to-end hyperbolic distance geometry: complete the HDM with the relaxation,
take the best low-rank Lorentz approximation, factor it, and project every
column onto the 'Loid.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .config import (
    DEFAULT_EPS2,
    DEFAULT_NOISE_SCALE,
    MAX_DISTANCE,
    OBJECTIVES,
    PROJECTION_MAXITER,
    PROJECTION_XTOL,
    REWEIGHT_ROUNDS,
    TOL_PSD,
)
from .conic_solver import (
    OrdinalConstraint,
    SolverConfig,
    SolverReport,
    SplitSdpProblem,
    fidelity_budget,
    solve_split_sdp,
)
from .errors import InputError, NoDataError, NotLorentzianError
from .gramian import HGramianSplit, Hdm, ObservationMask, hdm_of_points
from .lorentz import LoidPoint, PoincarePoint, to_poincare

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SdrOptions:
    """
    Options of the relaxation step.

    Args:
        objective: 'trace', 'logdet' or 'projection'
        eps1: Fidelity budget; derived from noise_scale when None
        eps2: Ordinal margin
        noise_scale: Multiplier of the default fidelity budget
        min_distance: Lower bound on every pairwise distance
        max_violations_pct: p of the slack budget p/100 * |O| * eps2
        logdet_rounds: Reweighting rounds for non-trace objectives (None: REWEIGHT_ROUNDS)
        solver: Solver settings
    """

    objective: str = OBJECTIVES["PROJECTION"]
    eps1: Optional[float] = None
    eps2: float = DEFAULT_EPS2
    noise_scale: float = DEFAULT_NOISE_SCALE
    min_distance: Optional[float] = None
    max_violations_pct: Optional[float] = None
    logdet_rounds: Optional[int] = None
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if self.objective not in OBJECTIVES.values():
            raise InputError(f"Unknown objective: {self.objective}")
        if self.eps1 is not None and not self.eps1 > 0:
            raise InputError("eps1 must be positive")
        if not self.eps2 > 0:
            raise InputError("eps2 must be positive")
        if self.max_violations_pct is not None and not 0 <= self.max_violations_pct <= 100:
            raise InputError("max_violations_pct must lie in [0, 100]")
        if self.logdet_rounds is not None and self.logdet_rounds < 0:
            raise InputError("logdet_rounds must be nonnegative")

    def solver_config(self) -> SolverConfig:
        if self.objective == OBJECTIVES["TRACE"]:
            return replace(self.solver, logdet_rounds=0)
        rounds = self.logdet_rounds
        if rounds is None:
            rounds = REWEIGHT_ROUNDS[self.objective]
        return replace(self.solver, logdet_rounds=rounds, reweighting=self.objective)


@dataclass(eq=False)
class EmbeddingResult:
    """Output of the full pipeline."""

    loid_points: List[LoidPoint]
    poincare_points: List[PoincarePoint]
    gramian: np.ndarray
    report: SolverReport
    recon_hdm: Hdm
    rank_deficient: bool = False

    @property
    def dim(self):
        return self.loid_points[0].dim

    @property
    def n(self):
        return len(self.loid_points)


# --- Relaxation ---


def build_problem(
    dtilde: Hdm,
    mask: ObservationMask,
    ordinal: Sequence[OrdinalConstraint],
    d: int,
    options: Optional[SdrOptions] = None,
) -> SplitSdpProblem:
    """Assemble the relaxation data from measurements and options."""
    options = options or SdrOptions()
    if dtilde.n != mask.n:
        raise InputError(f"Hdm is {dtilde.n}x{dtilde.n} but mask is {mask.n}x{mask.n}")
    if d < 1:
        raise InputError("embedding dimension must be at least 1")
    ordinal = list(ordinal or [])
    if mask.measured_pairs == 0 and not ordinal:
        raise NoDataError("no metric or ordinal measurements: nothing to solve")
    measured = mask.entries > 0
    if measured.any() and dtilde.values[measured].max() > MAX_DISTANCE:
        raise InputError(f"distances above {MAX_DISTANCE} are not supported")

    target = np.where(measured, np.cosh(dtilde.values), 0.0)
    eps1 = options.eps1
    if eps1 is None:
        eps1 = fidelity_budget(target, mask, options.noise_scale)
    slack_budget = None
    if options.max_violations_pct is not None and ordinal:
        slack_budget = options.max_violations_pct / 100.0 * len(ordinal) * options.eps2
    return SplitSdpProblem(
        n=dtilde.n,
        mask=mask,
        target_cosh=target,
        epsilon1=eps1,
        ordinal=ordinal,
        epsilon2=options.eps2,
        min_distance=options.min_distance,
        slack_budget=slack_budget,
        target_rank=d,
    )


def sdr_complete(
    dtilde: Hdm,
    mask: ObservationMask,
    ordinal: Sequence[OrdinalConstraint],
    d: int,
    options: Optional[SdrOptions] = None,
    init: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, SolverReport]:
    """
    Complete and denoise an HDM through the split-PSD relaxation.

    Args:
        dtilde: Measured distances (zeros where unmeasured)
        mask: Measured pairs
        ordinal: Distance comparisons
        d: Target dimension (used by the projection reweighting)
        options: Relaxation options
        init: Optional Gramian to warm start from, e.g. the solution for a smaller d

    Returns:
        Tuple[np.ndarray, SolverReport]: G = G+ - G- and the solver report
    """
    options = options or SdrOptions()
    problem = build_problem(dtilde, mask, ordinal, d, options)
    start = None
    if init is not None:
        if np.shape(init) != (dtilde.n, dtilde.n):
            raise InputError(f"warm start must be {dtilde.n}x{dtilde.n}")
        start = HGramianSplit.from_gramian(init)
    split, report = solve_split_sdp(problem, options.solver_config(), start)
    return split.gramian, report


# --- Low-rank step and factorization ---


def _lorentz_spectrum(g, d):
    """Smallest eigenpair plus the d largest remaining ones (clipped at 0, zero-padded)."""
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] == 0:
        raise InputError("expected a nonempty square matrix")
    if d < 1:
        raise InputError("dimension must be at least 1")
    n = g.shape[0]
    w, u = np.linalg.eigh(0.5 * (g + g.T))
    if not w[0] < 0:
        raise NotLorentzianError("matrix has no negative eigenvalue")
    rest = w[1:]
    # stable sort keeps the earlier eigensolver index on ties
    order = np.argsort(-rest, kind="stable")[:d] + 1
    lam = np.zeros(d + 1)
    vecs = np.zeros((n, d + 1))
    lam[0], vecs[:, 0] = w[0], u[:, 0]
    kept = np.clip(w[order], 0.0, None)
    lam[1 : 1 + order.size] = kept
    vecs[:, 1 : 1 + order.size] = u[:, order]
    threshold = TOL_PSD * float(np.max(np.abs(w)))
    n_positive = int(np.sum(kept > threshold))
    return lam, vecs, n_positive


def low_rank_lorentz_approx(g: np.ndarray, d: int) -> np.ndarray:
    """
    Best rank-(d+1) Lorentz Gramian approximation.

    Keeps the smallest eigenvalue and the d largest of the others clipped at 0.

    Args:
        g: Symmetric matrix with a negative eigenvalue
        d: Hyperbolic dimension

    Returns:
        np.ndarray: U_d diag(lambda_0, u(lambda_1), ..., u(lambda_d)) U_d^T
    """
    lam, vecs, _ = _lorentz_spectrum(g, d)
    approx = (vecs * lam) @ vecs.T
    return 0.5 * (approx + approx.T)


def spectral_factor(g: np.ndarray, d: int) -> np.ndarray:
    """
    Factor a Lorentz Gramian as X^T H X with X = |Lambda_d|^(1/2) U_d^T.

    Row 0 carries the negative eigendirection, oriented so that its mean is
    nonnegative; the H-unitary gauge is the identity.

    Args:
        g: Lorentz Gramian of rank at most d+1
        d: Hyperbolic dimension

    Returns:
        np.ndarray: (d+1) x N factor
    """
    g = np.asarray(g, dtype=float)
    lam, vecs, _ = _lorentz_spectrum(g, d)
    w = np.linalg.eigvalsh(0.5 * (g + g.T))
    scale = float(np.max(np.abs(w)))
    if w.size > 1 and w[1] < -1e-8 * scale:
        raise NotLorentzianError(
            f"second negative eigenvalue {w[1]!r}: not a Lorentz Gramian"
        )
    x = np.sqrt(np.abs(lam))[:, None] * vecs.T
    if x[0].mean() < 0:
        x[0] = -x[0]
    return x


# --- Projection onto the 'Loid ---


def _projection_multiplier(z0, zbar2):
    """Root of -z0^2 (1+l)^2 + |zbar|^2 (1-l)^2 + (1-l)^2 (1+l)^2 in the branch interval."""

    def poly(lam):
        a, b = 1.0 - lam, 1.0 + lam
        return -z0 * z0 * b * b + zbar2 * a * a + a * a * b * b

    if z0 > 0:
        lo, hi = -1.0, 1.0
    else:
        lo, hi = 1.0, 2.0
        while poly(hi) <= 0:
            hi = 1.0 + 2.0 * (hi - 1.0)
    return optimize.brentq(poly, lo, hi, xtol=PROJECTION_XTOL, maxiter=PROJECTION_MAXITER)


def project_to_loid_with_multiplier(z) -> Tuple[LoidPoint, float]:
    """
    Euclidean-nearest point of the 'Loid and the multiplier lambda with (I + lambda H) x = z.

    Args:
        z: Vector of length d+1 >= 2

    Returns:
        Tuple[LoidPoint, float]: Projection and its multiplier
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 1 or z.size < 2:
        raise InputError("project_to_loid needs a vector of length d+1 >= 2")
    if not np.all(np.isfinite(z)):
        raise InputError("project_to_loid needs finite coordinates")
    z0, zbar = float(z[0]), z[1:]
    zbar2 = float(zbar @ zbar)

    if zbar2 == 0.0:
        if z0 <= 2.0:
            x = np.zeros_like(z)
            x[0] = 1.0
            return LoidPoint(x), 1.0 - z0
        # any point of the sphere of solutions; take the first spatial axis
        x = np.zeros_like(z)
        x[0] = 0.5 * z0
        x[1] = np.sqrt(0.25 * z0 * z0 - 1.0)
        return LoidPoint(x), -1.0

    if z0 == 0.0:
        lam = 1.0
        spatial = 0.5 * zbar
    else:
        lam = _projection_multiplier(z0, zbar2)
        spatial = zbar / (1.0 + lam)
    return LoidPoint.lift(spatial), float(lam)


def project_to_loid(z) -> LoidPoint:
    """Euclidean-nearest point of the 'Loid to z."""
    return project_to_loid_with_multiplier(z)[0]


def embed_points(g: np.ndarray, d: int) -> List[LoidPoint]:
    """
    Points on the d-dimensional 'Loid whose H-Gramian approximates g.

    Args:
        g: Symmetric matrix with a negative eigenvalue
        d: Hyperbolic dimension

    Returns:
        List[LoidPoint]: One point per column of g
    """
    x = spectral_factor(low_rank_lorentz_approx(g, d), d)
    return [project_to_loid(col) for col in x.T]


def hdgp(
    dtilde: Hdm,
    mask: ObservationMask,
    ordinal: Sequence[OrdinalConstraint],
    d: int,
    options: Optional[SdrOptions] = None,
) -> EmbeddingResult:
    """
    Embed points in d-dimensional hyperbolic space from metric and ordinal data.

    Args:
        dtilde: Measured distances (zeros where unmeasured)
        mask: Measured pairs
        ordinal: Distance comparisons
        d: Target dimension
        options: Relaxation options

    Returns:
        EmbeddingResult: 'Loid and Poincare points, solved Gramian and report
    """
    g, report = sdr_complete(dtilde, mask, ordinal, d, options)
    _, _, n_positive = _lorentz_spectrum(g, d)
    rank_deficient = n_positive < min(d, dtilde.n - 1)
    if rank_deficient:
        log.warning(
            "only %d positive eigenvalues for d=%d; "
            "points lie in a lower-dimensional sub-hyperboloid",
            n_positive,
            d,
        )
    points = embed_points(g, d)
    return EmbeddingResult(
        loid_points=points,
        poincare_points=[to_poincare(p) for p in points],
        gramian=g,
        report=report,
        recon_hdm=hdm_of_points(points),
        rank_deficient=rank_deficient,
    )
