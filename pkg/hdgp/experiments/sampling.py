"""Sampling of measurement masks and distance comparisons, and ordinal scoring."""

import logging
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..conic_solver import OrdinalConstraint, ordinal_array
from ..errors import InputError
from ..gramian import Hdm, ObservationMask, hdm_of_points
from ..lorentz import LoidPoint

log = logging.getLogger(__name__)

PointsOrDistances = Union[Sequence[LoidPoint], Hdm, np.ndarray]


def _distance_values(source: PointsOrDistances) -> np.ndarray:
    if isinstance(source, Hdm):
        return source.values
    if isinstance(source, np.ndarray):
        return Hdm(source).values
    return hdm_of_points(list(source)).values


def sample_metric_mask(n: int, s: float, seed: int = 0) -> ObservationMask:
    """
    Mark round((1 - s) * n(n-1)/2) pairs as measured, uniformly without replacement.

    Args:
        n: Number of points
        s: Metric sampling density (fraction of pairs withheld) in [0, 1]
        seed: Generator seed

    Returns:
        ObservationMask: Symmetric 0/1 mask
    """
    if not 0.0 <= s <= 1.0:
        raise InputError(f"sampling density must lie in [0, 1], got {s}")
    if n < 1:
        raise InputError("n must be at least 1")
    iu = np.triu_indices(n, 1)
    total = iu[0].size
    count = int(round((1.0 - s) * total))
    rng = np.random.default_rng(seed)
    chosen = rng.choice(total, size=count, replace=False)
    w = np.zeros((n, n))
    w[iu[0][chosen], iu[1][chosen]] = 1.0
    return ObservationMask(w + w.T)


def _oriented(dist, p_rows, p_cols, q_rows, q_cols):
    """Rows (i1, i2, i3, i4) with d(i1, i2) <= d(i3, i4)."""
    p = np.column_stack([p_rows, p_cols])
    q = np.column_stack([q_rows, q_cols])
    swap = (dist[p_rows, p_cols] > dist[q_rows, q_cols])[:, None]
    first = np.where(swap, q, p)
    second = np.where(swap, p, q)
    return np.column_stack([first, second]).astype(int)


def complete_ordinal_set(source: PointsOrDistances) -> np.ndarray:
    """
    All comparisons between distinct pairs, oriented by the true distances.

    Returns:
        np.ndarray: (C(m, 2), 4) integer array, m = C(N, 2)
    """
    dist = _distance_values(source)
    rows, cols = np.triu_indices(dist.shape[0], 1)
    a, b = np.triu_indices(rows.size, 1)
    return _oriented(dist, rows[a], cols[a], rows[b], cols[b])


def sample_ordinal_set(
    source: PointsOrDistances, k_per_pair: int, seed: int = 0
) -> List[OrdinalConstraint]:
    """
    Uniform sample of 2 * k_per_pair * C(N, 2) comparisons, capped at the complete set.

    Args:
        source: Generating points or distance matrix
        k_per_pair: Comparisons per pair (K)
        seed: Generator seed

    Returns:
        List[OrdinalConstraint]: Constraints true for the generating distances
    """
    if k_per_pair < 0:
        raise InputError("k_per_pair must be nonnegative")
    dist = _distance_values(source)
    n = dist.shape[0]
    m = n * (n - 1) // 2
    total = m * (m - 1) // 2
    size = min(2 * k_per_pair * m, total)
    if size == 0:
        return []
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(total, size=size, replace=False))
    rows, cols = np.triu_indices(n, 1)
    a, b = np.triu_indices(m, 1)
    a, b = a[chosen], b[chosen]
    table = _oriented(dist, rows[a], cols[a], rows[b], cols[b])
    return [OrdinalConstraint(*map(int, r)) for r in table]


def ordinal_set_from_similarity(
    similarity: np.ndarray, k_per_pair: int, seed: int = 0
) -> List[OrdinalConstraint]:
    """
    Comparisons from a similarity matrix: more similar pairs are closer.

    Args:
        similarity: Symmetric matrix, e.g. correlations of concentration profiles
        k_per_pair: Comparisons per pair (K)
        seed: Generator seed

    Returns:
        List[OrdinalConstraint]: d(i1, i2) <= d(i3, i4) whenever C(i1, i2) >= C(i3, i4)
    """
    sim = np.asarray(similarity, dtype=float)
    if sim.ndim != 2 or sim.shape[0] != sim.shape[1]:
        raise InputError("similarity must be a square matrix")
    # any decreasing map of similarity orders pairs the same way
    pseudo = sim.max() - sim
    pseudo = 0.5 * (pseudo + pseudo.T)
    np.fill_diagonal(pseudo, 0.0)
    return sample_ordinal_set(np.maximum(pseudo, 0.0), k_per_pair, seed)


def concentration_correlations(table: pd.DataFrame) -> pd.DataFrame:
    """
    Pearson correlations C(i, j) between items across samples.

    Args:
        table: Rows are samples, columns are items (e.g. compound concentrations)

    Returns:
        pd.DataFrame: Item-by-item correlation matrix
    """
    if table.empty:
        raise InputError("concentration table is empty")
    numeric = table.apply(pd.to_numeric, errors="coerce")
    dropped = numeric.columns[numeric.isna().all()]
    if len(dropped) > 0:
        log.warning("Dropping non-numeric columns: %s", ", ".join(map(str, dropped)))
        numeric = numeric.drop(columns=dropped)
    return numeric.corr(method="pearson")


def ordinal_accuracy(points: Sequence[LoidPoint], held_out_complete_set) -> float:
    """
    Fraction of ground-truth comparisons reproduced by the embedded distances.

    Ties in the embedded distances count as incorrect.

    Args:
        points: Embedded points
        held_out_complete_set: Comparisons (constraints or (K, 4) array)

    Returns:
        float: Accuracy in [0, 1]; 0.0 for an empty set
    """
    ords = ordinal_array(held_out_complete_set)
    if ords.shape[0] == 0:
        return 0.0
    dist = hdm_of_points(list(points)).values
    near = dist[ords[:, 0], ords[:, 1]]
    far = dist[ords[:, 2], ords[:, 3]]
    return float(np.mean(near < far))


def corrupt_ordinal_set(
    ordinal: Sequence[OrdinalConstraint], fraction: float, seed: int = 0
) -> List[OrdinalConstraint]:
    """Flip the orientation of round(fraction * |O|) comparisons chosen uniformly."""
    if not 0.0 <= fraction <= 1.0:
        raise InputError("corruption fraction must lie in [0, 1]")
    ordinal = list(ordinal)
    count = int(round(fraction * len(ordinal)))
    if count == 0:
        return ordinal
    rng = np.random.default_rng(seed)
    flip = set(rng.choice(len(ordinal), size=count, replace=False).tolist())
    return [
        OrdinalConstraint(c.i3, c.i4, c.i1, c.i2) if k in flip else c
        for k, c in enumerate(ordinal)
    ]


def ordinal_density_to_count(n: int, s: float) -> int:
    """Number of comparisons kept at ordinal sampling density s."""
    m = n * (n - 1) // 2
    return int(round((1.0 - s) * (m * (m - 1) // 2)))


def sample_ordinal_by_density(
    source: PointsOrDistances, s: float, seed: int = 0, limit: Optional[int] = None
) -> List[OrdinalConstraint]:
    """
    Comparisons at ordinal sampling density s = 1 - |O| / |O_c|.

    Args:
        source: Generating points or distances
        s: Density in [0, 1]
        seed: Generator seed
        limit: Optional cap on the number of comparisons

    Returns:
        List[OrdinalConstraint]: Sampled comparisons
    """
    if not 0.0 <= s <= 1.0:
        raise InputError(f"sampling density must lie in [0, 1], got {s}")
    complete = complete_ordinal_set(source)
    count = ordinal_density_to_count(_distance_values(source).shape[0], s)
    if limit is not None:
        count = min(count, limit)
    if count == 0:
        return []
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(complete.shape[0], size=count, replace=False))
    return [OrdinalConstraint(*map(int, r)) for r in complete[chosen]]
