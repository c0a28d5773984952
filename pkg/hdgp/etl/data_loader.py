"""Loading and validation of distance, ordinal, embedding, point and run-config files."""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..config import (
    DISTANCE_FILE_CONFIG,
    EMBEDDING_FILE_CONFIG,
    EMBEDDING_MODELS,
    MAX_DISTANCE,
    ORDINAL_FILE_CONFIG,
    POINTS_FILE_CONFIG,
    RUN_CONFIG_KEYS,
)
from ..conic_solver import OrdinalConstraint
from ..errors import InputError, NoDataError
from ..gramian import Hdm, ObservationMask
from ..lorentz import LoidPoint, PoincarePoint

log = logging.getLogger(__name__)


@dataclass
class EmbeddingFile:
    """Contents of a saved embedding."""

    model: str
    dim: int
    points: List[Union[LoidPoint, PoincarePoint]]
    provenance: Dict[str, object] = field(default_factory=dict)

    @property
    def n(self):
        return len(self.points)


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"File not found: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")


def _is_integer(value):
    return isinstance(value, int) and not isinstance(value, bool)


# --- Distances ---


def _fetch_table(path, config):
    """Read a long-form CSV; '#' lines are comments."""
    try:
        df = pd.read_csv(
            path,
            comment="#",
            skipinitialspace=True,
            # keeps %.17g values bitwise
            float_precision="round_trip",
        )
    except FileNotFoundError:
        raise InputError(f"File not found: {path}")
    except pd.errors.EmptyDataError:
        raise NoDataError(f"No data found in '{path}'")

    df.columns = [str(c).strip() for c in df.columns]
    for col in config["required_columns"]:
        if col not in df.columns:
            raise InputError(f"Required column '{col}' not found in '{path}'")
    return df


def _clean_and_process_data(df, config):
    """Coerce the configured columns to numbers and drop incomplete rows."""
    df = df.copy()
    for col in config["integer_columns"] + config["numeric_columns"]:
        if col in df.columns:
            df[col] = pd.to_numeric(df[col], errors="coerce")

    incomplete = df[config["required_columns"]].isna().any(axis=1)
    if incomplete.any():
        log.warning(
            "Dropping %d row(s) of '%s' with missing or non-numeric fields",
            int(incomplete.sum()),
            config["name"],
        )
        df = df[~incomplete]

    for col in config["integer_columns"]:
        values = df[col].to_numpy(dtype=float)
        if np.any(values != np.round(values)):
            raise InputError(f"Column '{col}' must hold integer indices")
        df[col] = values.astype(int)

    if df.empty:
        raise NoDataError(f"No valid data remains for '{config['name']}' after cleaning")
    return df


def load_distances(path, n: Optional[int] = None) -> Tuple[Hdm, ObservationMask]:
    """
    Load a long-form distance file with header ``i,j,value``.

    Pairs are 0-based; rows with i > j are accepted and swapped. Unlisted pairs
    are missing.

    Args:
        path: CSV path
        n: Number of points; inferred as the largest index + 1 when omitted

    Returns:
        Tuple[Hdm, ObservationMask]: Symmetric distances (zero where missing) and mask
    """
    config = DISTANCE_FILE_CONFIG
    df = _fetch_table(path, config)
    df = _clean_and_process_data(df, config)

    i = df["i"].to_numpy()
    j = df["j"].to_numpy()
    values = df["value"].to_numpy(dtype=float)

    if np.any(i < 0) or np.any(j < 0):
        raise InputError("Indices must be nonnegative")
    if np.any(i == j):
        raise InputError("Diagonal pairs (i == j) are not allowed")
    lo, hi = np.minimum(i, j), np.maximum(i, j)
    if np.any(i > j):
        log.info("Reordered %d pair(s) listed with i > j", int(np.sum(i > j)))

    pairs = pd.Series(list(zip(lo.tolist(), hi.tolist())))
    duplicated = pairs[pairs.duplicated()]
    if not duplicated.empty:
        raise InputError(f"Duplicate pair(s): {', '.join(map(str, duplicated.unique()))}")
    if np.any(values < 0):
        raise InputError("Distances must be nonnegative")
    if not np.all(np.isfinite(values)):
        raise InputError("Distances must be finite")
    if np.any(values > MAX_DISTANCE):
        raise InputError(f"Distances above {MAX_DISTANCE} are not supported")

    size = int(hi.max()) + 1
    if n is not None:
        if size > n:
            raise InputError(f"Index {size - 1} out of range for n={n}")
        size = n

    dist = np.zeros((size, size))
    mask = np.zeros((size, size))
    dist[lo, hi] = dist[hi, lo] = values
    mask[lo, hi] = mask[hi, lo] = 1.0
    log.info("Loaded %d measured pair(s) on %d points from %s", len(values), size, path)
    return Hdm(dist), ObservationMask(mask)


# --- Ordinal data ---


def load_ordinal(path) -> List[OrdinalConstraint]:
    """
    Load comparisons stored as a JSON array of [i1, i2, i3, i4] records.

    A top-level object with an ``ordinal`` key is accepted as well.
    """
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get(ORDINAL_FILE_CONFIG["name"])
    if not isinstance(data, list):
        raise InputError(f"{path}: expected an array of comparison records")

    width = ORDINAL_FILE_CONFIG["record_length"]
    constraints = []
    for k, record in enumerate(data):
        if not isinstance(record, list) or len(record) != width:
            raise InputError(f"{path}: record {k} must hold {width} indices")
        if not all(_is_integer(v) for v in record):
            raise InputError(f"{path}: record {k} has non-integer indices")
        constraints.append(OrdinalConstraint.normalized(*record))
    return constraints


# --- Embeddings and raw points ---


def load_embedding(path) -> EmbeddingFile:
    """Load a file written by save_embedding."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    missing = [k for k in EMBEDDING_FILE_CONFIG["required_keys"] if k not in data]
    if missing:
        raise InputError(f"{path}: missing key(s) {', '.join(missing)}")

    model, dim, n = data["model"], data["dim"], data["n"]
    if model not in EMBEDDING_MODELS.values():
        raise InputError(f"{path}: unknown model '{model}'")
    if not _is_integer(dim) or not _is_integer(n) or dim < 1:
        raise InputError(f"{path}: dim and n must be positive integers")
    if len(data["points"]) != n:
        raise InputError(f"{path}: n={n} but {len(data['points'])} points stored")

    width = dim + 1 if model == EMBEDDING_MODELS["LOID"] else dim
    point_type = LoidPoint if model == EMBEDDING_MODELS["LOID"] else PoincarePoint
    points = []
    for k, coords in enumerate(data["points"]):
        if not isinstance(coords, list) or len(coords) != width:
            raise InputError(f"{path}: point {k} must have {width} coordinates")
        points.append(point_type(np.array(coords, dtype=float)))
    return EmbeddingFile(model, dim, points, data.get("provenance", {}))


def load_points(path) -> np.ndarray:
    """
    Load raw vectors of R^{d+1} for projection onto the 'Loid.

    Returns:
        np.ndarray: (N, d+1) array
    """
    data = _read_json(path)
    if isinstance(data, dict):
        missing = [k for k in POINTS_FILE_CONFIG["required_keys"] if k not in data]
        if missing:
            raise InputError(f"{path}: missing key(s) {', '.join(missing)}")
        data = data["points"]
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{path}: points must be a rectangular array of numbers")
    if arr.size == 0:
        raise NoDataError(f"No points found in '{path}'")
    if arr.ndim != 2 or arr.shape[1] < 2:
        raise InputError(f"{path}: expected an (N, d+1) array with d >= 1")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{path}: coordinates must be finite")
    return arr


# --- Run configuration ---


def load_run_config(path) -> Dict[str, object]:
    """
    Per-run overrides of solver and relaxation settings.

    Args:
        path: JSON object whose keys are listed in RUN_CONFIG_KEYS

    Returns:
        dict: Validated overrides (only the keys present in the file)
    """
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    unknown = sorted(set(data) - set(RUN_CONFIG_KEYS))
    if unknown:
        raise InputError(f"{path}: unknown key(s) {', '.join(unknown)}")
    for key, value in data.items():
        types = RUN_CONFIG_KEYS[key]
        if isinstance(value, bool) or not isinstance(value, types):
            expected = " or ".join(t.__name__ for t in types)
            raise InputError(f"{path}: '{key}' must be {expected}")
    return dict(data)
