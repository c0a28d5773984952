"""Hyperbolic distance matrices, H-Gramians and the H-Gramian certificate."""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import CERTIFICATE_TOL, TOL_CLAMP, TOL_PSD, TOL_SYMMETRY
from .errors import InputError, ManifoldError
from .lorentz import LoidPoint, points_matrix


def _square(m, name):
    m = np.array(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"{name} must be a square matrix, got shape {m.shape}")
    return m


def _check_symmetric(m, name, tol=TOL_SYMMETRY):
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if m.size and np.max(np.abs(m - m.T)) > tol * scale:
        raise InputError(f"{name} is not symmetric")


# --- Domain types ---


@dataclass(frozen=True, eq=False)
class Hdm:
    """Hyperbolic distance matrix: symmetric, zero diagonal, finite entries >= 0."""

    values: np.ndarray

    def __post_init__(self):
        v = _square(self.values, "Hdm")
        if not np.all(np.isfinite(v)):
            raise InputError("Hdm entries must be finite")
        if np.any(v < 0):
            raise InputError("Hdm entries must be nonnegative")
        if np.any(np.diag(v) != 0):
            raise InputError("Hdm diagonal must be zero")
        _check_symmetric(v, "Hdm")
        v = 0.5 * (v + v.T)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class ObservationMask:
    """Symmetric 0/1 matrix of measured pairs (zero diagonal)."""

    entries: np.ndarray

    def __post_init__(self):
        w = _square(self.entries, "ObservationMask")
        if not np.all(np.isin(w, (0.0, 1.0))):
            raise InputError("ObservationMask entries must be 0 or 1")
        if np.any(np.diag(w) != 0):
            raise InputError("ObservationMask diagonal must be zero")
        if np.any(w != w.T):
            raise InputError("ObservationMask must be symmetric")
        w.flags.writeable = False
        object.__setattr__(self, "entries", w)

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def measured_pairs(self):
        """Number of measured unordered pairs."""
        return int(np.triu(self.entries, 1).sum())

    @classmethod
    def full(cls, n: int) -> "ObservationMask":
        return cls(np.ones((n, n)) - np.eye(n))

    @classmethod
    def empty(cls, n: int) -> "ObservationMask":
        return cls(np.zeros((n, n)))


@dataclass(frozen=True, eq=False)
class HGramianSplit:
    """A pair of PSD matrices whose difference G = g_plus - g_minus is an H-Gramian candidate."""

    g_plus: np.ndarray
    g_minus: np.ndarray

    def __post_init__(self):
        gp = _square(self.g_plus, "g_plus")
        gm = _square(self.g_minus, "g_minus")
        if gp.shape != gm.shape:
            raise InputError("g_plus and g_minus must have the same shape")
        for name, m in (("g_plus", gp), ("g_minus", gm)):
            _check_symmetric(m, name)
            if m.size:
                w = np.linalg.eigvalsh(0.5 * (m + m.T))
                if w[0] < -TOL_PSD * max(1.0, float(np.max(np.abs(w)))):
                    raise InputError(f"{name} is not PSD (min eigenvalue {w[0]!r})")
        object.__setattr__(self, "g_plus", 0.5 * (gp + gp.T))
        object.__setattr__(self, "g_minus", 0.5 * (gm + gm.T))

    @property
    def n(self):
        return self.g_plus.shape[0]

    @property
    def gramian(self) -> np.ndarray:
        return self.g_plus - self.g_minus

    @classmethod
    def from_gramian(cls, g: np.ndarray) -> "HGramianSplit":
        """Jordan split of a symmetric matrix into its positive and negative parts."""
        g = _square(g, "g")
        w, u = np.linalg.eigh(0.5 * (g + g.T))
        pos = (u * np.clip(w, 0.0, None)) @ u.T
        neg = (u * np.clip(-w, 0.0, None)) @ u.T
        return cls(pos, neg)


@dataclass(frozen=True)
class GramCertificate:
    """Outcome of checking the H-Gramian conditions on a symmetric matrix."""

    valid: bool
    neg_eigs: int
    pos_eigs: int
    diag_violation: float
    offdiag_violation: float


# --- Conversions ---


def h_gramian(points: Sequence[LoidPoint]) -> np.ndarray:
    """
    H-Gramian X^T H X of a list of 'Loid points.

    Args:
        points: Nonempty list of LoidPoint with a common dimension

    Returns:
        np.ndarray: Symmetric N x N matrix of pairwise Lorentzian inner products
    """
    x = points_matrix(points)
    g = -np.outer(x[0], x[0]) + x[1:].T @ x[1:]
    return 0.5 * (g + g.T)


def hdm_from_gramian(g: np.ndarray, clamp_tol: float = TOL_CLAMP) -> Hdm:
    """
    Elementwise D = acosh(-G).

    Args:
        g: Symmetric matrix with diagonal -1 and -g >= 1 - clamp_tol
        clamp_tol: How far below 1 an acosh argument may fall before it is
            treated as an error rather than roundoff

    Returns:
        Hdm: Distance matrix with an exactly zero diagonal
    """
    g = _square(g, "g")
    _check_symmetric(g, "g")
    if g.size and np.max(np.abs(np.diag(g) + 1.0)) > max(clamp_tol, TOL_CLAMP):
        raise InputError("gramian diagonal must be -1")
    arg = -0.5 * (g + g.T)
    if g.size and arg.min() < 1.0 - clamp_tol:
        raise ManifoldError(f"acosh argument {arg.min()!r} below 1 - {clamp_tol}")
    d = np.arccosh(np.maximum(arg, 1.0))
    np.fill_diagonal(d, 0.0)
    return Hdm(d)


def gramian_from_hdm(d: Hdm) -> np.ndarray:
    """Inverse map -cosh(D); the diagonal is exactly -1."""
    values = d.values if isinstance(d, Hdm) else Hdm(d).values
    return -np.cosh(values)


def hdm_of_points(points: Sequence[LoidPoint]) -> Hdm:
    """Pairwise geodesic distances of a point list."""
    return hdm_from_gramian(h_gramian(points))


def relative_error(
    reference: np.ndarray, estimate: np.ndarray, mask: Optional[np.ndarray] = None
) -> float:
    """
    Relative Frobenius error ||W o (reference - estimate)|| / ||W o reference||.

    Args:
        reference: Reference distance matrix (Hdm or array)
        estimate: Reconstructed distance matrix (Hdm or array)
        mask: Optional 0/1 weights; all entries count when omitted

    Returns:
        float: 0.0 when both sides vanish
    """
    ref = np.asarray(getattr(reference, "values", reference), dtype=float)
    est = np.asarray(getattr(estimate, "values", estimate), dtype=float)
    if ref.shape != est.shape:
        raise InputError(f"shape mismatch: {ref.shape} vs {est.shape}")
    w = np.ones_like(ref) if mask is None else np.asarray(
        getattr(mask, "entries", mask), dtype=float
    )
    num = np.linalg.norm(w * (ref - est))
    den = np.linalg.norm(w * ref)
    if den == 0.0:
        return 0.0 if num == 0.0 else float("inf")
    return float(num / den)


# --- Certificate ---


def certify_h_gramian(
    g: np.ndarray, d: int, tol: float = CERTIFICATE_TOL
) -> GramCertificate:
    """
    Check the H-Gramian conditions on g.

    Rank conditions count eigenvalues beyond tol * ||g||_2; the diagonal must
    equal -1 and every off-diagonal entry must be at most -1, both within tol.

    Args:
        g: Symmetric matrix
        d: Target hyperbolic dimension
        tol: Tolerance for the eigenvalue threshold and entry checks

    Returns:
        GramCertificate: Counts, violations and the overall verdict
    """
    g = _square(g, "g")
    n = g.shape[0]
    if n and np.max(np.abs(g - g.T)) > tol * max(1.0, float(np.max(np.abs(g)))):
        raise InputError("certify_h_gramian needs a symmetric matrix")
    g = 0.5 * (g + g.T)
    if n == 0:
        return GramCertificate(False, 0, 0, 0.0, 0.0)

    w = np.linalg.eigvalsh(g)
    threshold = tol * float(np.max(np.abs(w)))
    neg_eigs = int(np.sum(w < -threshold))
    pos_eigs = int(np.sum(w > threshold))

    diag_violation = float(np.max(np.abs(np.diag(g) + 1.0)))
    off = g[~np.eye(n, dtype=bool)]
    offdiag_violation = float(np.max(np.maximum(off + 1.0, 0.0))) if off.size else 0.0

    valid = (
        neg_eigs == 1
        and pos_eigs <= d
        and diag_violation <= tol
        and offdiag_violation <= tol
    )
    return GramCertificate(valid, neg_eigs, pos_eigs, diag_violation, offdiag_violation)
