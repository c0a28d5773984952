"""
First-order solvers for the split-PSD relaxation and the Euclidean baseline.

The relaxation is solved by alternating-direction augmented-Lagrangian updates
on the splitting

    P = Zp,  Q = Zq,  P - Q = Zg,  L(P - Q) = t

with Zp, Zq in the PSD cone, Zg in the affine/ball set (diag -1, off-diagonal
cap, fidelity budget) and t in the ordinal set (margins with optional slack
budget). The (P, Q) update is a fixed linear system that does not depend on
the penalty, so it is factored once per problem.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg, optimize

from .config import (
    DEFAULT_EPS2,
    EPS1_FACTOR,
    LOGDET_DELTA0,
    LOGDET_ROUNDS,
    MAX_ITERS,
    RANK_TAIL_TOL,
    RELAXATION,
    RHO,
    RHO_ADAPT_FACTOR,
    RHO_ADAPT_INTERVAL,
    RHO_ADAPT_RATIO,
    SNAP_FACTOR,
    TOL_DUAL,
    TOL_PRIMAL,
)
from .errors import InputError, SolverError
from .gramian import HGramianSplit, ObservationMask

log = logging.getLogger(__name__)

REWEIGHTING_SCHEMES = ("logdet", "projection")


# --- Problem description ---


@dataclass(frozen=True)
class OrdinalConstraint:
    """Comparison d(i1, i2) <= d(i3, i4) between two distinct pairs."""

    i1: int
    i2: int
    i3: int
    i4: int

    def __post_init__(self):
        idx = (self.i1, self.i2, self.i3, self.i4)
        if any(int(i) != i or i < 0 for i in idx):
            raise InputError(f"ordinal indices must be nonnegative integers: {idx}")
        if not (self.i1 < self.i2 and self.i3 < self.i4):
            raise InputError(f"ordinal pairs must be ordered i1<i2, i3<i4: {idx}")
        if (self.i1, self.i2) == (self.i3, self.i4):
            raise InputError(f"ordinal constraint compares a pair with itself: {idx}")

    @classmethod
    def normalized(cls, i1, i2, i3, i4) -> "OrdinalConstraint":
        """Build a constraint from unordered pairs."""
        a, b = sorted((int(i1), int(i2)))
        c, e = sorted((int(i3), int(i4)))
        return cls(a, b, c, e)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.i1, self.i2, self.i3, self.i4)


def ordinal_array(ordinal) -> np.ndarray:
    """Constraints as a (K, 4) integer array."""
    if ordinal is None or len(ordinal) == 0:
        return np.zeros((0, 4), dtype=int)
    if isinstance(ordinal, np.ndarray):
        return ordinal.astype(int).reshape(-1, 4)
    return np.array([c.as_tuple() for c in ordinal], dtype=int)


@dataclass(frozen=True, eq=False)
class SplitSdpProblem:
    """
    Data of the split-PSD relaxation.

    ``target_cosh`` holds cosh of the measured distances wherever the mask is
    one; other entries are ignored. ``min_distance`` turns the off-diagonal
    cap into G_ij <= -cosh(min_distance). ``slack_budget`` enables per-constraint
    ordinal slacks whose sum is capped.
    """

    n: int
    mask: ObservationMask
    target_cosh: np.ndarray
    epsilon1: float
    ordinal: Sequence[OrdinalConstraint] = ()
    epsilon2: float = DEFAULT_EPS2
    w_plus: Optional[np.ndarray] = None
    w_minus: Optional[np.ndarray] = None
    min_distance: Optional[float] = None
    slack_budget: Optional[float] = None
    target_rank: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("problem needs n >= 1")
        if self.mask.n != self.n:
            raise InputError(f"mask is {self.mask.n}x{self.mask.n}, expected n={self.n}")
        target = np.asarray(self.target_cosh, dtype=float)
        if target.shape != (self.n, self.n):
            raise InputError(f"target_cosh must be {self.n}x{self.n}")
        measured = self.mask.entries > 0
        if not np.all(np.isfinite(target[measured])):
            raise InputError("target_cosh must be finite on measured entries")
        if not self.epsilon1 > 0:
            raise InputError("epsilon1 must be positive")
        if not self.epsilon2 > 0:
            raise InputError("epsilon2 must be positive")
        if self.slack_budget is not None and self.slack_budget < 0:
            raise InputError("slack_budget must be nonnegative")
        if self.min_distance is not None and self.min_distance < 0:
            raise InputError("min_distance must be nonnegative")
        ords = ordinal_array(self.ordinal)
        if ords.size and ords.max() >= self.n:
            raise InputError("ordinal constraint index out of range")
        for name in ("w_plus", "w_minus"):
            w = getattr(self, name)
            if w is not None and np.asarray(w).shape != (self.n, self.n):
                raise InputError(f"{name} must be {self.n}x{self.n}")

    @property
    def offdiag_cap(self) -> float:
        if self.min_distance is None:
            return -1.0
        return -float(np.cosh(self.min_distance))

    @property
    def weights(self) -> Tuple[np.ndarray, np.ndarray]:
        eye = np.eye(self.n)
        wp = eye if self.w_plus is None else np.asarray(self.w_plus, dtype=float)
        wm = eye if self.w_minus is None else np.asarray(self.w_minus, dtype=float)
        return wp, wm


def fidelity_budget(
    target_cosh: np.ndarray, mask: ObservationMask, noise_scale: float = 1.0
) -> float:
    """
    Default fidelity budget EPS1_FACTOR * noise_scale * ||W o cosh(D)||_F^2.

    Falls back to EPS1_FACTOR * noise_scale when nothing is measured.
    """
    weighted = mask.entries * np.asarray(target_cosh, dtype=float)
    norm2 = float(np.sum(weighted * weighted))
    return EPS1_FACTOR * noise_scale * (norm2 if norm2 > 0 else 1.0)


# --- Configuration and diagnostics ---


@dataclass(frozen=True)
class SolverConfig:
    """Iteration limits, penalty, tolerances and reweighting rounds."""

    max_iters: int = MAX_ITERS
    rho: float = RHO
    tol_primal: float = TOL_PRIMAL
    tol_dual: float = TOL_DUAL
    logdet_rounds: int = LOGDET_ROUNDS
    logdet_delta0: float = LOGDET_DELTA0
    reweighting: str = "logdet"
    adapt_interval: int = RHO_ADAPT_INTERVAL
    relaxation: float = RELAXATION
    rank_tail_tol: float = RANK_TAIL_TOL

    def __post_init__(self):
        if self.max_iters < 1:
            raise InputError("max_iters must be at least 1")
        if self.rho <= 0 or self.tol_primal <= 0 or self.tol_dual <= 0:
            raise InputError("rho and tolerances must be positive")
        if self.logdet_rounds < 0:
            raise InputError("logdet_rounds must be nonnegative")
        if self.logdet_delta0 <= 0:
            raise InputError("logdet_delta0 must be positive")
        if self.reweighting not in REWEIGHTING_SCHEMES:
            raise InputError(f"Unknown reweighting: {self.reweighting}")
        if self.adapt_interval < 1:
            raise InputError("adapt_interval must be at least 1")
        if not 0 < self.relaxation < 2:
            raise InputError("relaxation must lie in (0, 2)")
        if not self.rank_tail_tol >= 0:
            raise InputError("rank_tail_tol must be nonnegative")

    def delta(self, k: int) -> float:
        """Reweighting offset for round k: delta0 * 2^-k."""
        return self.logdet_delta0 * 2.0 ** (-k)


@dataclass
class SolverReport:
    """Diagnostics of a solve; residuals are relative (see solve_split_sdp)."""

    iterations: int
    primal_residual: float
    dual_residual: float
    objective: float
    converged: bool
    slacks: np.ndarray = field(default_factory=lambda: np.zeros(0))
    rho: float = RHO
    rounds: int = 1
    initial_primal_residual: float = 0.0
    logdet_values: List[float] = field(default_factory=list)

    def summary(self) -> Dict[str, object]:
        """Plain-dict view for provenance blocks."""
        return {
            "iterations": int(self.iterations),
            "primal_residual": float(self.primal_residual),
            "dual_residual": float(self.dual_residual),
            "objective": float(self.objective),
            "converged": bool(self.converged),
            "rounds": int(self.rounds),
            "rho": float(self.rho),
            "slack_total": float(np.sum(self.slacks)),
        }


# --- Projections ---


def psd_project(m: np.ndarray) -> np.ndarray:
    """
    Frobenius-nearest PSD matrix: eigendecomposition with negative eigenvalues clipped.

    Args:
        m: Symmetric matrix

    Returns:
        np.ndarray: Symmetric PSD matrix
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"psd_project needs a square matrix, got shape {m.shape}")
    if m.size == 0:
        return m.copy()
    try:
        w, u = np.linalg.eigh(0.5 * (m + m.T))
    except np.linalg.LinAlgError as e:
        raise SolverError(f"eigendecomposition failed: {e}") from e
    keep = w > 0
    if keep.all():
        out = (u * w) @ u.T
    else:
        out = (u[:, keep] * w[keep]) @ u[:, keep].T
    return 0.5 * (out + out.T)


def _project_box_ball(m, cap, center, radius2):
    """
    Nearest vector to m with g <= cap and ||g - center||^2 <= radius2.

    Solved through the ball multiplier mu >= 0: g(mu) clips the shrunk point
    (m + mu*center)/(1 + mu) to the cap, and ||g(mu) - center|| decreases in mu.
    """

    def point(mu):
        return np.minimum(cap, (m + mu * center) / (1.0 + mu))

    def excess(mu):
        r = point(mu) - center
        return float(r @ r) - radius2

    if excess(0.0) <= 0.0:
        return point(0.0)
    hi = 1.0
    while excess(hi) > 0.0:
        hi *= 4.0
        if hi > 1e16:
            # ball and cap do not intersect; nearest compromise
            return np.minimum(cap, center)
    mu = optimize.brentq(excess, 0.0, hi, xtol=1e-14, rtol=1e-12, maxiter=200)
    return point(mu)


def _project_ordinal(v, eps2, budget):
    """Nearest t to v with sum_k max(0, eps2 - t_k) <= budget (budget None: no slack)."""
    if budget is None or budget <= 0:
        return np.maximum(v, eps2)
    shortfall = np.maximum(eps2 - v, 0.0)
    if shortfall.sum() <= budget:
        return v.copy()
    # shrink the positive shortfalls onto {e >= 0, sum e <= budget}
    s = np.sort(shortfall)[::-1]
    cumsum = np.cumsum(s)
    ks = np.arange(1, s.size + 1)
    theta_candidates = (cumsum - budget) / ks
    rho_idx = np.nonzero(s - theta_candidates > 0)[0][-1]
    theta = theta_candidates[rho_idx]
    e = np.maximum(shortfall - theta, 0.0)
    return np.where(shortfall > 0, eps2 - e, v)


# --- Reweighting ---


def logdet_reweight(split: HGramianSplit, delta: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Log-det linearization weights (G+ + delta I)^-1 and (G- + delta I)^-1.

    Args:
        split: Current PSD split
        delta: Positive regularization offset

    Returns:
        Tuple[np.ndarray, np.ndarray]: Symmetric positive definite weights
    """
    if not delta > 0:
        raise InputError("delta must be positive")
    eye = np.eye(split.n)
    weights = []
    for m in (split.g_plus, split.g_minus):
        w, u = np.linalg.eigh(m + delta * eye)
        inv = (u / np.maximum(w, delta * 1e-3)) @ u.T
        weights.append(0.5 * (inv + inv.T))
    return weights[0], weights[1]


def _top_projector(m, rank):
    w, u = np.linalg.eigh(m)
    top = u[:, ::-1][:, :rank]
    return top @ top.T


def projection_reweight(split: HGramianSplit, d: int) -> Tuple[np.ndarray, np.ndarray]:
    """Weights I - P_d(G+) and I - P_1(G-), P_r the projector on the top r eigenvectors."""
    if d < 1:
        raise InputError("projection reweighting needs d >= 1")
    eye = np.eye(split.n)
    return eye - _top_projector(split.g_plus, d), eye - _top_projector(split.g_minus, 1)


def logdet_value(split: HGramianSplit, delta: float) -> float:
    """log det(G+ + delta I) + log det(G- + delta I)."""
    eye = np.eye(split.n)
    total = 0.0
    for m in (split.g_plus, split.g_minus):
        sign, value = np.linalg.slogdet(m + delta * eye)
        total += value
    return float(total)


def rank_tail(split: HGramianSplit, d: int) -> float:
    """
    Share of Tr G+ + Tr G- outside the top d eigenvalues of G+ and the top one of G-.

    Zero exactly when G+ has rank at most d and G- rank at most 1.
    """
    if d < 1:
        raise InputError("rank_tail needs d >= 1")
    w_plus = np.clip(np.linalg.eigvalsh(split.g_plus), 0.0, None)[::-1]
    w_minus = np.clip(np.linalg.eigvalsh(split.g_minus), 0.0, None)[::-1]
    total = float(w_plus.sum() + w_minus.sum())
    if total == 0.0:
        return 0.0
    return float(w_plus[d:].sum() + w_minus[1:].sum()) / total


# --- Audit ---


def ordinal_margins(g: np.ndarray, ordinal) -> np.ndarray:
    """L_k(G) = G[i1, i2] - G[i3, i4] for every constraint."""
    ords = ordinal_array(ordinal)
    if ords.size == 0:
        return np.zeros(0)
    return g[ords[:, 0], ords[:, 1]] - g[ords[:, 2], ords[:, 3]]


def audit_split(
    problem: SplitSdpProblem,
    split: HGramianSplit,
    slacks: Optional[np.ndarray] = None,
) -> Dict[str, float]:
    """
    Absolute constraint violations of a split.

    Returns:
        dict: 'diag', 'offdiag', 'fidelity' (excess over epsilon1), 'ordinal'
        (margin shortfall net of slacks), 'slack_budget' (excess) and 'psd'
        (negated smallest eigenvalue, floored at 0)
    """
    g = split.gramian
    n = problem.n
    off = ~np.eye(n, dtype=bool)
    residual = problem.mask.entries * (np.asarray(problem.target_cosh) + g)
    k = len(ordinal_array(problem.ordinal))
    s = np.zeros(k) if slacks is None else np.asarray(slacks, dtype=float)
    margins = ordinal_margins(g, problem.ordinal)
    psd_floor = min(
        float(np.linalg.eigvalsh(split.g_plus)[0]),
        float(np.linalg.eigvalsh(split.g_minus)[0]),
    )
    budget = problem.slack_budget
    return {
        "diag": float(np.max(np.abs(np.diag(g) + 1.0))),
        "offdiag": float(np.max(g[off] - problem.offdiag_cap, initial=0.0)),
        "fidelity": max(0.0, float(np.sum(residual * residual)) - problem.epsilon1),
        "ordinal": float(np.max(problem.epsilon2 - margins - s, initial=0.0)),
        "slack_budget": 0.0 if budget is None else max(0.0, float(s.sum()) - budget),
        "psd": max(0.0, -psd_floor),
    }


# --- Splitting method ---


class _SplitAdmm:
    """State of one splitting solve. Not shared across threads."""

    def __init__(self, problem: SplitSdpProblem):
        self.problem = problem
        n = problem.n
        self.n = n
        self.iu = np.triu_indices(n, 1)
        self.m = self.iu[0].size
        pair_index = np.full((n, n), -1, dtype=int)
        pair_index[self.iu] = np.arange(self.m)
        pair_index[(self.iu[1], self.iu[0])] = np.arange(self.m)

        ords = ordinal_array(problem.ordinal)
        self.k = ords.shape[0]
        self.b = np.zeros((self.k, self.m))
        if self.k:
            rows = np.arange(self.k)
            np.add.at(self.b, (rows, pair_index[ords[:, 0], ords[:, 1]]), 1.0)
            np.add.at(self.b, (rows, pair_index[ords[:, 2], ords[:, 3]]), -1.0)
        system = 3.0 * np.eye(self.m) + self.b.T @ self.b
        self.factor = linalg.cho_factor(system) if self.m else None

        mask = problem.mask.entries[self.iu] > 0
        self.measured = mask
        self.center = -np.asarray(problem.target_cosh, dtype=float)[self.iu][mask]
        # ||W o (C + G)||_F^2 counts each measured pair twice
        self.radius2 = 0.5 * problem.epsilon1
        self.cap = problem.offdiag_cap

    # operators on the off-diagonal vector g
    def off(self, mat):
        return mat[self.iu]

    def to_matrix(self, g_off, diag):
        out = np.zeros((self.n, self.n))
        out[self.iu] = g_off
        out = out + out.T
        out[np.diag_indices(self.n)] = diag
        return out

    def lt(self, v):
        """Adjoint of the ordinal map as a symmetric matrix."""
        return self.to_matrix(0.5 * (self.b.T @ v), np.zeros(self.n))

    def project_g(self, mat):
        g_off = self.off(mat).copy()
        free = ~self.measured
        g_off[free] = np.minimum(g_off[free], self.cap)
        if self.measured.any():
            g_off[self.measured] = _project_box_ball(
                g_off[self.measured], self.cap, self.center, self.radius2
            )
        return self.to_matrix(g_off, -np.ones(self.n))

    def project_t(self, v):
        return _project_ordinal(v, self.problem.epsilon2, self.problem.slack_budget)

    def solve_x(self, zp, zq, zg, t, up, uq, ug, ut, wp, wm, rho):
        ap, aq = zp - up, zq - uq
        ag = zg - ug
        at = t - ut
        s = ap + aq - (wp + wm) / rho
        w_diff = wp - wm
        a_diff = ap - aq
        diag = (np.diag(a_diff) + 2.0 * np.diag(ag) - np.diag(w_diff) / rho) / 3.0
        if self.m:
            rhs = self.off(a_diff) + 2.0 * self.off(ag) - self.off(w_diff) / rho
            if self.k:
                rhs = rhs + self.b.T @ at
            g_off = linalg.cho_solve(self.factor, rhs)
        else:
            g_off = np.zeros(0)
        g = self.to_matrix(g_off, diag)
        return 0.5 * (s + g), 0.5 * (s - g), g, self.b @ g_off

    def run(self, wp, wm, config, init, rho):
        problem = self.problem
        n = self.n
        if init is None:
            g0 = self.project_g(-np.asarray(problem.target_cosh) * problem.mask.entries - (
                1.0 - problem.mask.entries
            ))
            init = HGramianSplit.from_gramian(g0)
        p, q = init.g_plus.copy(), init.g_minus.copy()
        g = p - q
        lg = self.b @ self.off(g) if self.k else np.zeros(0)

        zp, zq = psd_project(p), psd_project(q)
        zg = self.project_g(g)
        t = self.project_t(lg)
        up, uq, ug = np.zeros((n, n)), np.zeros((n, n)), np.zeros((n, n))
        ut = np.zeros(self.k)

        def primal(p, q, g, lg, zp, zq, zg, t):
            r = max(
                np.max(np.abs(p - zp)),
                np.max(np.abs(q - zq)),
                np.max(np.abs(g - zg)),
                np.max(np.abs(lg - t), initial=0.0),
            )
            scale = max(
                1.0,
                np.max(np.abs(p)),
                np.max(np.abs(q)),
                np.max(np.abs(zp)),
                np.max(np.abs(zq)),
                np.max(np.abs(zg)),
            )
            return r / scale

        initial = primal(p, q, g, lg, zp, zq, zg, t)
        w_scale = max(1.0, float(np.max(np.abs(wp))), float(np.max(np.abs(wm))))

        alpha = config.relaxation
        best = None
        best_score = np.inf
        r_rel = s_rel = np.inf
        it = 0
        for it in range(1, config.max_iters + 1):
            p, q, g, lg = self.solve_x(zp, zq, zg, t, up, uq, ug, ut, wp, wm, rho)

            zp_old, zq_old, zg_old, t_old = zp, zq, zg, t
            # relaxed iterates feed the projections and multipliers only
            p_hat = alpha * p + (1.0 - alpha) * zp_old
            q_hat = alpha * q + (1.0 - alpha) * zq_old
            g_hat = alpha * g + (1.0 - alpha) * zg_old
            zp = psd_project(p_hat + up)
            zq = psd_project(q_hat + uq)
            zg = self.project_g(g_hat + ug)
            if self.k:
                lg_hat = alpha * lg + (1.0 - alpha) * t_old
                t = self.project_t(lg_hat + ut)

            up += p_hat - zp
            uq += q_hat - zq
            ug += g_hat - zg
            if self.k:
                ut += lg_hat - t

            r_rel = primal(p, q, g, lg, zp, zq, zg, t)
            dzg = zg - zg_old
            if self.k:
                dzg = dzg + self.lt(t - t_old)
            s_abs = rho * max(
                np.max(np.abs(zp - zp_old + dzg)), np.max(np.abs(zq - zq_old - dzg))
            )
            ug_total = ug + self.lt(ut) if self.k else ug
            y_scale = rho * max(
                np.max(np.abs(up + ug_total)), np.max(np.abs(uq - ug_total)), 1e-12
            )
            s_rel = s_abs / max(w_scale, y_scale)

            score = max(r_rel, s_rel)
            if score < best_score:
                best_score = score
                best = (zp.copy(), zq.copy(), t.copy(), it, r_rel, s_rel)
            if r_rel <= config.tol_primal and s_rel <= config.tol_dual:
                break

            if it % config.adapt_interval == 0:
                if r_rel > RHO_ADAPT_RATIO * s_rel:
                    rho *= RHO_ADAPT_FACTOR
                    up /= RHO_ADAPT_FACTOR
                    uq /= RHO_ADAPT_FACTOR
                    ug /= RHO_ADAPT_FACTOR
                    ut /= RHO_ADAPT_FACTOR
                elif s_rel > RHO_ADAPT_RATIO * r_rel:
                    rho /= RHO_ADAPT_FACTOR
                    up *= RHO_ADAPT_FACTOR
                    uq *= RHO_ADAPT_FACTOR
                    ug *= RHO_ADAPT_FACTOR
                    ut *= RHO_ADAPT_FACTOR
                log.debug(
                    "iter %d: primal %.3e dual %.3e rho %.3g", it, r_rel, s_rel, rho
                )

        converged = r_rel <= config.tol_primal and s_rel <= config.tol_dual
        if converged:
            best = (zp, zq, t, it, r_rel, s_rel)
        return best, converged, it, rho, initial


def _snap_spectrum(m, threshold):
    """Drop eigenvalues at or below threshold from a PSD matrix."""
    w, u = np.linalg.eigh(m)
    keep = w > threshold
    if keep.all():
        return m
    out = (u[:, keep] * w[keep]) @ u[:, keep].T
    return 0.5 * (out + out.T)


def _shrink_diagonal(m, amount):
    """
    Lower diag(m) by up to ``amount`` through a diagonal congruence (keeps PSD and rank).

    Returns:
        Tuple[np.ndarray, np.ndarray]: Shrunk matrix and the amount removed per index
    """
    diag = np.diag(m)
    removed = np.where(diag > 0, np.minimum(amount, diag), 0.0)
    factor = np.ones_like(diag)
    positive = diag > 0
    factor[positive] = np.sqrt((diag[positive] - removed[positive]) / diag[positive])
    return m * np.outer(factor, factor), removed


def _repair_diagonal(zp, zq):
    """
    Make diag(Zp - Zq) = -1 exactly while keeping both sides PSD.

    An excess is first shrunk out of the side that causes it; what that side
    cannot absorb is added as diagonal mass to the other side.
    """
    dev = np.diag(zp) - np.diag(zq) + 1.0
    zp, removed_p = _shrink_diagonal(zp, np.maximum(dev, 0.0))
    zq, removed_q = _shrink_diagonal(zq, np.maximum(-dev, 0.0))
    zq = zq + np.diag(np.maximum(dev, 0.0) - removed_p)
    zp = zp + np.diag(np.maximum(-dev, 0.0) - removed_q)
    return zp, zq


def _solve_once(admm, problem, config, wp, wm, init, rho):
    # objective scale does not change the minimizer; keep it comparable to rho
    scale = max(np.linalg.norm(wp, 2), np.linalg.norm(wm, 2), 1e-12)
    best, converged, iters, rho, initial = admm.run(
        wp / scale, wm / scale, config, init, rho
    )
    zp, zq, t, _, r_rel, s_rel = best
    # eigenvalues at the solver tolerance are not resolved
    size = max(1.0, float(np.max(np.abs(zp))), float(np.max(np.abs(zq))))
    floor = SNAP_FACTOR * config.tol_primal * size
    zp, zq = _repair_diagonal(_snap_spectrum(zp, floor), _snap_spectrum(zq, floor))
    split = HGramianSplit(zp, zq)
    if problem.slack_budget is None or admm.k == 0:
        slacks = np.zeros(admm.k)
    else:
        slacks = np.maximum(problem.epsilon2 - t, 0.0)
    objective = float(np.sum(wp * zp) + np.sum(wm * zq))
    report = SolverReport(
        iterations=iters,
        primal_residual=float(r_rel),
        dual_residual=float(s_rel),
        objective=objective,
        converged=bool(converged),
        slacks=slacks,
        rho=float(rho),
        initial_primal_residual=float(initial),
    )
    return split, report


def solve_split_sdp(
    problem: SplitSdpProblem,
    config: Optional[SolverConfig] = None,
    init: Optional[HGramianSplit] = None,
) -> Tuple[HGramianSplit, SolverReport]:
    """
    Solve the split-PSD relaxation, optionally with low-rank reweighting rounds.

    Residuals are infinity norms of the splitting equations and of the dual
    update, relative to the iterate and multiplier magnitudes. The returned
    split is the best iterate seen, with eigenvalues at the solver tolerance
    dropped and its diagonal repaired to -1 exactly.

    Projection reweighting stops early once the rank tail of the split falls
    to ``config.rank_tail_tol``. With reweighting rounds, a warm start
    continues the reweighting sequence: the first solve already uses the
    weights of ``init``.

    Args:
        problem: Relaxation data
        config: Solver settings (defaults from hdgp.config)
        init: Optional warm start

    Returns:
        Tuple[HGramianSplit, SolverReport]: Split and diagnostics of the final round
    """
    config = config or SolverConfig()
    projection = config.reweighting == "projection"
    rounds = config.logdet_rounds
    if projection and rounds > 0 and problem.target_rank is None:
        raise InputError("projection reweighting needs problem.target_rank")

    def reweight(current, k):
        if projection:
            return projection_reweight(current, problem.target_rank)
        return logdet_reweight(current, config.delta(k))

    admm = _SplitAdmm(problem)
    wp, wm = reweight(init, 0) if init is not None and rounds > 0 else problem.weights
    split, report = _solve_once(admm, problem, config, wp, wm, init, config.rho)
    total_iters = report.iterations
    logdet_values = [logdet_value(split, config.delta(0))]

    done = 0
    for k in range(rounds):
        if projection:
            tail = rank_tail(split, problem.target_rank)
            log.debug("round %d: rank tail %.2e", k, tail)
            if tail <= config.rank_tail_tol:
                break
        wp, wm = reweight(split, k)
        split, report = _solve_once(admm, problem, config, wp, wm, split, report.rho)
        total_iters += report.iterations
        logdet_values.append(logdet_value(split, config.delta(k + 1)))
        done += 1

    report = replace(
        report,
        iterations=total_iters,
        rounds=done + 1,
        logdet_values=logdet_values,
    )
    level = logging.INFO if report.converged else logging.WARNING
    log.log(
        level,
        "split SDP n=%d: %s after %d iterations in %d rounds (primal %.2e, dual %.2e)",
        problem.n,
        "converged" if report.converged else "not converged",
        report.iterations,
        report.rounds,
        report.primal_residual,
        report.dual_residual,
    )
    return split, report


# --- Euclidean baseline ---


def edm_operator(g: np.ndarray) -> np.ndarray:
    """K(G) = -2G + diag(G) 1^T + 1 diag(G)^T."""
    dg = np.diag(g)
    return -2.0 * g + dg[:, None] + dg[None, :]


def _edm_adjoint(r):
    return -2.0 * r + np.diag(r.sum(axis=1) + r.sum(axis=0))


def _centered_basis(n):
    """Orthonormal basis of the complement of the all-ones vector."""
    if n == 1:
        return np.zeros((1, 0))
    q, _ = np.linalg.qr(np.eye(n) - 1.0 / n)
    return q[:, : n - 1]


def solve_psd_least_squares(
    dsq: np.ndarray, config: Optional[SolverConfig] = None
) -> Tuple[np.ndarray, SolverReport]:
    """
    Minimize ||dsq - K(G)||_F^2 over PSD G with G 1 = 0.

    Accelerated projected gradient on G = V Y V^T (V spans 1-perp), started at
    the classical scaling solution, with a step from a power-iteration estimate
    of the Lipschitz constant and function-value restarts.

    Args:
        dsq: Squared distances (symmetric, zero diagonal, nonnegative)
        config: Solver settings; max_iters and tol_dual are used

    Returns:
        Tuple[np.ndarray, SolverReport]: Centered PSD Gramian and diagnostics
    """
    config = config or SolverConfig()
    dsq = np.asarray(dsq, dtype=float)
    if dsq.ndim != 2 or dsq.shape[0] != dsq.shape[1]:
        raise InputError("dsq must be square")
    asymmetry = np.max(np.abs(dsq - dsq.T), initial=0.0)
    if (
        np.any(dsq < 0)
        or np.any(np.diag(dsq) != 0)
        or asymmetry > 1e-12 * max(1.0, float(np.max(dsq, initial=0.0)))
    ):
        raise InputError("dsq must be symmetric, nonnegative, with zero diagonal")
    dsq = 0.5 * (dsq + dsq.T)
    n = dsq.shape[0]
    v = _centered_basis(n)
    if v.shape[1] == 0:
        return np.zeros((n, n)), SolverReport(0, 0.0, 0.0, 0.0, True)

    def lift(y):
        return v @ y @ v.T

    def value(y):
        r = dsq - edm_operator(lift(y))
        return float(np.sum(r * r))

    def grad(y):
        r = dsq - edm_operator(lift(y))
        return v.T @ (-2.0 * _edm_adjoint(r)) @ v

    # Lipschitz constant of grad: 2 * largest eigenvalue of K*K on the subspace
    rng = np.random.default_rng(0)
    vec = rng.normal(size=(n - 1, n - 1))
    vec = 0.5 * (vec + vec.T)
    lam = 1.0
    for _ in range(100):
        vec /= np.linalg.norm(vec)
        nxt = v.T @ _edm_adjoint(edm_operator(lift(vec))) @ v
        lam = float(np.sum(nxt * vec))
        vec = nxt
    lipschitz = 2.0 * lam * 1.05

    y = psd_project(v.T @ (-0.5 * dsq) @ v)
    z, momentum = y.copy(), 1.0
    f_prev = value(y)
    grad_scale = max(1.0, float(np.linalg.norm(grad(np.zeros_like(y)))))

    stationarity = np.inf
    it = 0
    for it in range(1, config.max_iters + 1):
        y_new = psd_project(z - grad(z) / lipschitz)
        f_new = value(y_new)
        g_new = grad(y_new)
        stationarity = lipschitz * np.linalg.norm(
            y_new - psd_project(y_new - g_new / lipschitz)
        ) / grad_scale
        if f_new > f_prev:
            # restart momentum
            momentum = 1.0
            z = y.copy()
            continue
        momentum_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * momentum * momentum))
        z = y_new + ((momentum - 1.0) / momentum_next) * (y_new - y)
        y, momentum, f_prev = y_new, momentum_next, f_new
        if stationarity <= config.tol_dual:
            break

    g = lift(y)
    g = 0.5 * (g + g.T)
    row_sums = float(np.max(np.abs(g.sum(axis=1)))) / max(1.0, float(np.max(np.abs(g))))
    converged = stationarity <= config.tol_dual
    if not converged:
        log.warning("PSD least squares stopped at stationarity %.2e", stationarity)
    report = SolverReport(
        iterations=it,
        primal_residual=row_sums,
        dual_residual=float(stationarity),
        objective=f_prev,
        converged=bool(converged),
    )
    return g, report
