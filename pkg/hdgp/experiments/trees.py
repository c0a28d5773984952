"""Random weighted trees, their path metrics, and embedding-dimension selection."""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from ..config import D0_DELTA, PLATEAU_TOL, RANK_FLOOR, TREE_MAX_DEGREE
from ..embedding import embed_points
from ..errors import InputError
from ..gramian import hdm_of_points

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightedTree:
    """A tree on nodes 0..n-1 with edge weights in (0, 1)."""

    n: int
    edges: Tuple[Tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("tree needs at least one node")
        if len(self.edges) != self.n - 1:
            raise InputError(f"tree on {self.n} nodes needs {self.n - 1} edges")
        graph = self.to_networkx()
        if self.n > 1 and not nx.is_tree(graph):
            raise InputError("edges do not form a tree")
        if any(not 0.0 < w < 1.0 for _, _, w in self.edges):
            raise InputError("edge weights must lie in (0, 1)")

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_weighted_edges_from(self.edges)
        return graph

    @property
    def max_degree(self) -> int:
        degrees = dict(self.to_networkx().degree())
        return max(degrees.values()) if degrees else 0


def random_weighted_tree(
    n: int, seed: int = 0, max_degree: int = TREE_MAX_DEGREE
) -> WeightedTree:
    """
    Grow a tree by attaching each new node to a uniformly chosen node with spare degree.

    Args:
        n: Number of nodes (>= 2)
        seed: Generator seed
        max_degree: Degree cap

    Returns:
        WeightedTree: Weights i.i.d. uniform on (0, 1)
    """
    if n < 2:
        raise InputError("random_weighted_tree needs n >= 2")
    if max_degree < 2:
        raise InputError("max_degree must be at least 2")
    rng = np.random.default_rng(seed)
    degree = np.zeros(n, dtype=int)
    edges = []
    for node in range(1, n):
        open_nodes = np.flatnonzero(degree[:node] < max_degree)
        parent = int(rng.choice(open_nodes))
        weight = 0.0
        while weight == 0.0:
            weight = float(rng.uniform(0.0, 1.0))
        edges.append((parent, node, weight))
        degree[parent] += 1
        degree[node] += 1
    return WeightedTree(n, tuple(edges))


def tree_distance_matrix(t: WeightedTree) -> np.ndarray:
    """Path-weight metric of a tree (symmetric, zero diagonal)."""
    if t.n == 1:
        return np.zeros((1, 1))
    rows = [u for u, v, _ in t.edges] + [v for u, v, _ in t.edges]
    cols = [v for u, v, _ in t.edges] + [u for u, v, _ in t.edges]
    weights = [w for _, _, w in t.edges] * 2
    adjacency = csr_matrix((weights, (rows, cols)), shape=(t.n, t.n))
    dist = shortest_path(adjacency, method="D", directed=False)
    dist = 0.5 * (dist + dist.T)
    np.fill_diagonal(dist, 0.0)
    return dist


def optimal_embedding_dimension(
    d_matrices: Sequence[np.ndarray], delta: float = D0_DELTA
) -> int:
    """
    Smallest d at which one more dimension no longer reduces the error materially.

    d_matrices[k] is the reconstruction in dimension k+1, the last one being
    the reference D_{N-1}. A dimension d qualifies when
    ||D_{N-1} - D_{d+1}|| / ||D_{N-1} - D_d|| >= 1 - delta, or when both
    norms vanish (plateau).

    Args:
        d_matrices: Reconstructions for d = 1 .. N-1
        delta: Tolerance on the error ratio

    Returns:
        int: d0 (the largest dimension if no smaller one qualifies)
    """
    if len(d_matrices) == 0:
        raise InputError("optimal_embedding_dimension needs at least one matrix")
    mats = [np.asarray(getattr(m, "values", m), dtype=float) for m in d_matrices]
    reference = mats[-1]
    floor = PLATEAU_TOL * max(float(np.linalg.norm(reference)), 1.0)
    errors = [float(np.linalg.norm(reference - m)) for m in mats]
    for d in range(1, len(mats)):
        current, following = errors[d - 1], errors[d]
        if current <= floor and following <= floor:
            return d
        if current > floor and following / current >= 1.0 - delta:
            return d
    return len(mats)


def numerical_rank_floor(g: np.ndarray, floor: float = RANK_FLOOR) -> np.ndarray:
    """
    Zero the eigenvalues of a symmetric matrix below floor * (spectral norm).

    Eigenvalues at the residual level of a solver count as zero, so the
    reconstructions of a rank-r Gramian stop changing past d = r.

    Args:
        g: Symmetric matrix
        floor: Relative threshold

    Returns:
        np.ndarray: Symmetric matrix with the small part of the spectrum removed
    """
    g = np.asarray(g, dtype=float)
    w, u = np.linalg.eigh(0.5 * (g + g.T))
    if w.size == 0:
        return g.copy()
    w = np.where(np.abs(w) <= floor * float(np.max(np.abs(w))), 0.0, w)
    out = (u * w) @ u.T
    return 0.5 * (out + out.T)


def hyperbolic_reconstructions(g: np.ndarray, max_dim: int) -> List[np.ndarray]:
    """HDMs of embed_points(g, d) for d = 1 .. max_dim, after the numerical rank floor."""
    g = numerical_rank_floor(g)
    return [hdm_of_points(embed_points(g, d)).values for d in range(1, max_dim + 1)]


def euclidean_points_from_gramian(g: np.ndarray, d: int) -> np.ndarray:
    """Top-d eigenvalue thresholding of a PSD Gramian; rows are points in R^d."""
    w, u = np.linalg.eigh(0.5 * (g + g.T))
    order = np.argsort(-w, kind="stable")[:d]
    lam = np.clip(w[order], 0.0, None)
    coords = u[:, order] * np.sqrt(lam)
    if coords.shape[1] < d:
        coords = np.hstack([coords, np.zeros((coords.shape[0], d - coords.shape[1]))])
    return coords


def euclidean_distances_from_gramian(g: np.ndarray, d: int) -> np.ndarray:
    """Distance matrix of the rank-d Euclidean approximation of g."""
    x = euclidean_points_from_gramian(g, d)
    sq = np.sum(x * x, axis=1)
    dsq = np.maximum(sq[:, None] + sq[None, :] - 2.0 * x @ x.T, 0.0)
    dist = np.sqrt(dsq)
    np.fill_diagonal(dist, 0.0)
    return 0.5 * (dist + dist.T)


def euclidean_reconstructions(g: np.ndarray, max_dim: int) -> List[np.ndarray]:
    g = numerical_rank_floor(g)
    return [euclidean_distances_from_gramian(g, d) for d in range(1, max_dim + 1)]
