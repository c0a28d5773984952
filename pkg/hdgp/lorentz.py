"""Lorentzian linear algebra and the 'Loid <-> Poincare model maps."""

from dataclasses import dataclass, field
from typing import List, Sequence, Union

import numpy as np

from .config import H_UNITARY_TOL, POINCARE_NORM_CAP, TOL_CLAMP, TOL_NORM
from .errors import InputError, ManifoldError

ArrayLike = Union[Sequence[float], np.ndarray]


def _as_vector(x, name="x"):
    v = np.asarray(getattr(x, "coords", x), dtype=float)
    if v.ndim != 1:
        raise InputError(f"{name} must be a vector, got shape {v.shape}")
    return v


# --- Domain types ---


@dataclass(frozen=True, eq=False)
class LoidPoint:
    """
    A point on the upper sheet of the hyperboloid in (d+1)-space.

    The first coordinate is the time-like component x0; the rest is the
    spatial part. Coordinates are stored read-only.
    """

    coords: np.ndarray

    def __post_init__(self):
        x = np.array(self.coords, dtype=float)
        if x.ndim != 1 or x.size < 2:
            raise InputError("LoidPoint needs a vector of length d+1 >= 2")
        if not np.all(np.isfinite(x)):
            raise ManifoldError("LoidPoint coordinates must be finite")
        norm = lorentz_inner(x, x)
        if abs(norm + 1.0) > TOL_NORM * max(1.0, x[0] * x[0]):
            raise ManifoldError(f"point is off the 'Loid: <x,x> = {norm!r}")
        if x[0] < 1.0 - TOL_NORM:
            raise ManifoldError(f"point is on the lower sheet: x0 = {x[0]!r}")
        x.flags.writeable = False
        object.__setattr__(self, "coords", x)

    @property
    def dim(self):
        """Intrinsic dimension d."""
        return self.coords.size - 1

    @property
    def spatial(self):
        return self.coords[1:]

    @classmethod
    def lift(cls, spatial: ArrayLike) -> "LoidPoint":
        """Place a spatial vector on the upper sheet via x0 = sqrt(1 + |x|^2)."""
        s = _as_vector(spatial, "spatial")
        return cls(np.concatenate([[np.sqrt(1.0 + s @ s)], s]))

    def __repr__(self):
        return f"LoidPoint({np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True, eq=False)
class PoincarePoint:
    """A point of the open unit ball."""

    coords: np.ndarray

    def __post_init__(self):
        y = np.array(self.coords, dtype=float)
        if y.ndim != 1 or y.size < 1:
            raise InputError("PoincarePoint needs a vector of length d >= 1")
        if not np.all(np.isfinite(y)) or y @ y >= 1.0:
            raise ManifoldError(f"point is outside the unit ball: |y| = {np.linalg.norm(y)!r}")
        y.flags.writeable = False
        object.__setattr__(self, "coords", y)

    @property
    def dim(self):
        return self.coords.size

    def __repr__(self):
        return f"PoincarePoint({np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True)
class MinkowskiForm:
    """
    The indefinite form H = diag(-1, 1, ..., 1) on (d+1)-space.

    Applied by flipping the sign of component 0; ``matrix()`` is only for
    callers that need to inspect H densely.
    """

    dim: int = field(default=3)

    def __post_init__(self):
        if self.dim < 2:
            raise InputError("MinkowskiForm needs dim >= 2")

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Return H v (along axis 0 for matrices)."""
        out = np.array(v, dtype=float, copy=True)
        if out.shape[0] != self.dim:
            raise InputError(f"expected leading dimension {self.dim}, got {out.shape[0]}")
        out[0] = -out[0]
        return out

    def matrix(self) -> np.ndarray:
        h = np.eye(self.dim)
        h[0, 0] = -1.0
        return h


# --- Lorentzian algebra ---


def lorentz_inner(x: ArrayLike, y: ArrayLike) -> float:
    """
    Lorentzian inner product [x, y] = -x0*y0 + sum_k x_k*y_k.

    Args:
        x: Vector (or LoidPoint) of length >= 2
        y: Vector (or LoidPoint) of the same length

    Returns:
        float: The indefinite inner product
    """
    x = _as_vector(x, "x")
    y = _as_vector(y, "y")
    if x.size != y.size:
        raise InputError(f"dimension mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise InputError("Lorentzian vectors need length >= 2")
    return float(-x[0] * y[0] + x[1:] @ y[1:])


def _as_loid(x) -> LoidPoint:
    return x if isinstance(x, LoidPoint) else LoidPoint(_as_vector(x))


def loid_distance(x, y) -> float:
    """
    Geodesic distance acosh(-[x, y]) between two points of the 'Loid.

    Arguments in [1 - TOL_CLAMP, 1) are clamped to 1; anything smaller means
    an input left the manifold.
    """
    x, y = _as_loid(x), _as_loid(y)
    arg = -lorentz_inner(x.coords, y.coords)
    if arg < 1.0 - TOL_CLAMP:
        raise ManifoldError(f"acosh argument {arg!r} below 1: off-manifold input")
    # [x-y, x-y] = 4 sinh^2(d/2); exact zero for identical points
    diff = x.coords - y.coords
    chord2 = max(lorentz_inner(diff, diff), 0.0)
    return float(2.0 * np.arcsinh(0.5 * np.sqrt(chord2)))


def _as_poincare(y) -> PoincarePoint:
    return y if isinstance(y, PoincarePoint) else PoincarePoint(_as_vector(y))


def poincare_distance(u, v) -> float:
    """
    Distance in the Poincare ball.

    Args:
        u: PoincarePoint (or vector) with norm below POINCARE_NORM_CAP
        v: PoincarePoint (or vector) with norm below POINCARE_NORM_CAP

    Returns:
        float: acosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2)))
    """
    u, v = _as_poincare(u).coords, _as_poincare(v).coords
    if u.size != v.size:
        raise InputError(f"dimension mismatch: {u.size} vs {v.size}")
    nu, nv = u @ u, v @ v
    cap = POINCARE_NORM_CAP * POINCARE_NORM_CAP
    if nu > cap or nv > cap:
        raise ManifoldError("Poincare norm too close to 1; distance would overflow")
    diff = u - v
    # same value as the acosh form, without cancellation near u == v
    ratio = np.sqrt(diff @ diff) / np.sqrt((1.0 - nu) * (1.0 - nv))
    return float(2.0 * np.arcsinh(ratio))


def to_poincare(x) -> PoincarePoint:
    """Stereographic projection y_i = x_{i+1} / (x0 + 1)."""
    x = _as_loid(x).coords
    return PoincarePoint(x[1:] / (x[0] + 1.0))


def from_poincare(y) -> LoidPoint:
    """Inverse stereographic projection onto the upper sheet."""
    y = _as_vector(y, "y")
    n2 = y @ y
    if n2 >= 1.0:
        raise ManifoldError(f"|y| = {np.sqrt(n2)!r} is not inside the unit ball")
    # lifting the spatial part is exact where (1+|y|^2)/(1-|y|^2) cancels
    return LoidPoint.lift(2.0 * y / (1.0 - n2))


# --- H-adjoints and rigid motions ---


def h_adjoint(r: np.ndarray) -> np.ndarray:
    """
    H-adjoint H^{-1} R^T H of a square matrix.

    Args:
        r: (d+1) x (d+1) matrix

    Returns:
        np.ndarray: Dense adjoint; H is applied as row/column sign flips
    """
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise InputError(f"h_adjoint needs a square matrix, got shape {r.shape}")
    adj = r.T.copy()
    adj[0, :] *= -1.0
    adj[:, 0] *= -1.0
    return adj


def is_h_unitary(r: np.ndarray, tol: float = H_UNITARY_TOL) -> bool:
    """True iff ||R^T H R - H||_F <= tol."""
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] < 2:
        return False
    hr = r.copy()
    hr[0, :] *= -1.0
    defect = r.T @ hr
    defect[0, 0] += 1.0
    defect[1:, 1:] -= np.eye(r.shape[0] - 1)
    return bool(np.linalg.norm(defect) <= tol)


def lorentz_boost(t: float, dim: int = 3, axis: int = 1) -> np.ndarray:
    """H-unitary boost mixing the time axis with one spatial axis."""
    r = np.eye(dim)
    r[0, 0] = r[axis, axis] = np.cosh(t)
    r[0, axis] = r[axis, 0] = np.sinh(t)
    return r


# --- Sampling ---


def random_loid_points(
    n: int, d: int, seed: int = 0, spread: float = 1.0
) -> List[LoidPoint]:
    """
    Draw Gaussian spatial parts and lift them onto the 'Loid.

    Args:
        n: Number of points (>= 1)
        d: Hyperbolic dimension (>= 1)
        seed: Seed for numpy's default generator
        spread: Standard deviation of the spatial coordinates

    Returns:
        List[LoidPoint]: Deterministic for a given seed
    """
    if n < 1 or d < 1:
        raise InputError("random_loid_points needs n >= 1 and d >= 1")
    if spread <= 0:
        raise InputError("spread must be positive")
    rng = np.random.default_rng(seed)
    spatial = rng.normal(0.0, spread, size=(n, d))
    return [LoidPoint.lift(s) for s in spatial]


def points_matrix(points: Sequence[LoidPoint]) -> np.ndarray:
    """Stack points as the columns of a (d+1) x N matrix."""
    if len(points) == 0:
        raise InputError("empty point list")
    dims = {p.coords.size for p in points}
    if len(dims) != 1:
        raise InputError(f"mixed point dimensions: {sorted(dims)}")
    return np.column_stack([p.coords for p in points])
