"""File formats: loaders and writers."""

from .data_loader import (
    EmbeddingFile,
    load_distances,
    load_embedding,
    load_ordinal,
    load_points,
    load_run_config,
)
from .exporters import hdm_to_frame, save_embedding, save_hdm, save_points, save_trials

__all__ = [
    "EmbeddingFile",
    "load_distances",
    "load_ordinal",
    "load_embedding",
    "load_points",
    "load_run_config",
    "hdm_to_frame",
    "save_embedding",
    "save_hdm",
    "save_points",
    "save_trials",
]
