"""Synthetic experiment harness: sampling, trees and benchmark protocols."""

from .benchmarks import (
    TrialSummary,
    ordinal_benchmark,
    ordinal_consistency_curve,
    solved_hdm,
    sparsity_success_curve,
    summaries_to_frame,
    tree_benchmark,
)
from .sampling import (
    complete_ordinal_set,
    concentration_correlations,
    corrupt_ordinal_set,
    ordinal_accuracy,
    ordinal_set_from_similarity,
    sample_metric_mask,
    sample_ordinal_by_density,
    sample_ordinal_set,
)
from .trees import (
    WeightedTree,
    euclidean_distances_from_gramian,
    euclidean_points_from_gramian,
    numerical_rank_floor,
    optimal_embedding_dimension,
    random_weighted_tree,
    tree_distance_matrix,
)

__all__ = [
    # Sampling
    "sample_metric_mask",
    "sample_ordinal_set",
    "sample_ordinal_by_density",
    "complete_ordinal_set",
    "corrupt_ordinal_set",
    "ordinal_set_from_similarity",
    "concentration_correlations",
    "ordinal_accuracy",
    # Trees
    "WeightedTree",
    "random_weighted_tree",
    "tree_distance_matrix",
    "optimal_embedding_dimension",
    "numerical_rank_floor",
    "euclidean_points_from_gramian",
    "euclidean_distances_from_gramian",
    # Benchmarks
    "TrialSummary",
    "sparsity_success_curve",
    "tree_benchmark",
    "ordinal_benchmark",
    "ordinal_consistency_curve",
    "summaries_to_frame",
    "solved_hdm",
]
