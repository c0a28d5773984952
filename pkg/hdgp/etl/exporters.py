"""Writers for embeddings, completed HDMs, projected points and benchmark tables."""

import json
import logging
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from ..config import COMMENT_PREFIX, CSV_FLOAT_FORMAT, EMBEDDING_MODELS
from ..errors import InputError
from ..gramian import Hdm

log = logging.getLogger(__name__)


def _plain(value):
    """JSON-ready copy of numpy scalars, arrays and nested containers."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _write_text(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise InputError(f"Cannot write '{path}': {e}")


def _write_json(path, payload):
    # float repr is the shortest string that reads back to the same double
    _write_text(path, json.dumps(_plain(payload), indent=2) + "\n")


def _comment_block(invocation, warning=None):
    lines = []
    if invocation:
        lines.append(f"invocation: {json.dumps(_plain(invocation), sort_keys=True)}")
    if warning:
        lines.append(f"warning: {warning}")
    return "".join(f"{COMMENT_PREFIX}{line}\n" for line in lines)


def _write_csv(path, df, invocation, warning=None):
    body = df.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    _write_text(path, _comment_block(invocation, warning) + body)


def save_embedding(
    result,
    path,
    model: str = EMBEDDING_MODELS["POINCARE"],
    provenance: Optional[Dict[str, object]] = None,
    warning: Optional[str] = None,
) -> None:
    """
    Write an EmbeddingResult as JSON.

    Args:
        result: EmbeddingResult
        path: Output path
        model: 'loid' writes (d+1)-vectors, 'poincare' writes d-vectors
        provenance: Invocation, seed and any extra run facts
        warning: Optional top-level warning (e.g. non-convergence)
    """
    if model not in EMBEDDING_MODELS.values():
        raise InputError(f"Unknown model: {model}")
    if model == EMBEDDING_MODELS["LOID"]:
        points = [p.coords for p in result.loid_points]
    else:
        points = [p.coords for p in result.poincare_points]

    block = dict(provenance or {})
    block["solver"] = result.report.summary()
    block["rank_deficient"] = bool(result.rank_deficient)
    payload = {
        "model": model,
        "dim": result.dim,
        "n": result.n,
        "points": points,
        "provenance": block,
    }
    if warning:
        payload["warning"] = warning
    _write_json(path, payload)
    log.info("Wrote %d %s point(s) to %s", result.n, model, path)


def save_points(
    points,
    path,
    multipliers: Optional[Sequence[float]] = None,
    provenance: Optional[Dict[str, object]] = None,
) -> None:
    """Write 'Loid points (e.g. projection output) as a loid-model embedding file."""
    points = list(points)
    if not points:
        raise InputError("No points to write")
    payload = {
        "model": EMBEDDING_MODELS["LOID"],
        "dim": points[0].dim,
        "n": len(points),
        "points": [p.coords for p in points],
        "provenance": dict(provenance or {}),
    }
    if multipliers is not None:
        payload["multipliers"] = list(multipliers)
    _write_json(path, payload)


def hdm_to_frame(hdm: Hdm) -> pd.DataFrame:
    """Long-form i < j records of every pair."""
    rows, cols = np.triu_indices(hdm.n, 1)
    return pd.DataFrame({"i": rows, "j": cols, "value": hdm.values[rows, cols]})


def save_hdm(
    hdm: Hdm,
    path,
    invocation: Optional[Dict[str, object]] = None,
    warning: Optional[str] = None,
) -> None:
    """Write a complete HDM as ``i,j,value`` CSV preceded by an invocation comment."""
    _write_csv(path, hdm_to_frame(hdm), invocation, warning)
    log.info("Wrote %d pair(s) to %s", hdm.n * (hdm.n - 1) // 2, path)


def save_trials(summaries, path, invocation: Optional[Dict[str, object]] = None) -> None:
    """
    Write benchmark summaries as CSV.

    Args:
        summaries: DataFrame or sequence of TrialSummary
        path: Output path
        invocation: Flags and seed of the run
    """
    if isinstance(summaries, pd.DataFrame):
        df = summaries
    else:
        df = pd.DataFrame([s.to_record() for s in summaries])
    _write_csv(path, df, invocation)
    log.info("Wrote %d summary row(s) to %s", len(df), path)
