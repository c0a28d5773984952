"""Static SVG rendering of Poincare disk embeddings."""

import html
import json
import logging
from typing import Dict, Optional, Sequence

from ..config import SVG_LABEL_OFFSET, SVG_POINT_RADIUS, SVG_VIEWPORT
from ..errors import InputError
from ..lorentz import PoincarePoint
from .tokens import (
    SVG_BACKGROUND,
    SVG_BOUNDARY_COLOR,
    SVG_BOUNDARY_WIDTH,
    SVG_FONT_FAMILY,
    SVG_FONT_SIZE,
    SVG_LABEL_COLOR,
    SVG_POINT_COLOR,
)

log = logging.getLogger(__name__)

# unit circle radius as a fraction of half the viewport
DISK_FILL = 0.95


def _as_disk_point(p):
    point = p if isinstance(p, PoincarePoint) else PoincarePoint(p)
    if point.dim > 2:
        raise InputError(f"Cannot draw a {point.dim}-dimensional point in the disk")
    x = float(point.coords[0])
    y = float(point.coords[1]) if point.dim == 2 else 0.0
    return x, y


def poincare_svg(
    points: Sequence,
    labels: Optional[Sequence[str]] = None,
    invocation: Optional[Dict[str, object]] = None,
) -> str:
    """
    SVG markup of points in the Poincare disk.

    The unit circle is centered in a square viewport; identical input gives
    byte-identical output.

    Args:
        points: PoincarePoint (or coordinate vectors) of dimension 1 or 2
        labels: Optional text per point (escaped)
        invocation: Flags and seed of the run, kept in a <metadata> element

    Returns:
        str: Complete SVG document
    """
    points = list(points)
    if labels is not None and len(labels) != len(points):
        raise InputError(f"{len(labels)} labels for {len(points)} points")

    size = SVG_VIEWPORT
    center = size / 2
    radius = center * DISK_FILL

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="{SVG_BACKGROUND}"/>',
        f'<circle cx="{center:.3f}" cy="{center:.3f}" r="{radius:.3f}" fill="none" '
        f'stroke="{SVG_BOUNDARY_COLOR}" stroke-width="{SVG_BOUNDARY_WIDTH}"/>',
    ]
    if invocation:
        # argv holds "--", which XML comments cannot
        record = html.escape(json.dumps(invocation, sort_keys=True, default=str))
        parts.insert(1, f"<metadata>invocation: {record}</metadata>")
    for k, p in enumerate(points):
        x, y = _as_disk_point(p)
        cx = center + radius * x
        cy = center - radius * y
        parts.append(
            f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{SVG_POINT_RADIUS}" '
            f'fill="{SVG_POINT_COLOR}"/>'
        )
        if labels is not None:
            text = html.escape(str(labels[k]).strip())
            parts.append(
                f'<text x="{cx + SVG_LABEL_OFFSET:.3f}" y="{cy - SVG_LABEL_OFFSET:.3f}" '
                f'font-family="{SVG_FONT_FAMILY}" font-size="{SVG_FONT_SIZE}" '
                f'fill="{SVG_LABEL_COLOR}">{text}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_poincare_svg(
    points: Sequence,
    labels: Optional[Sequence[str]] = None,
    path=None,
    invocation: Optional[Dict[str, object]] = None,
) -> str:
    """Render the disk and write it to path when given; returns the markup."""
    svg = poincare_svg(points, labels, invocation)
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(svg)
        except OSError as e:
            raise InputError(f"Cannot write '{path}': {e}")
        log.info("Wrote disk rendering of %d point(s) to %s", len(points), path)
    return svg
