"""
Visual tokens for benchmark figures and the Poincare disk renderer.
Single source of truth for chart colors, typography and labels.
"""

# =============================================================================
# COLOR TOKENS
# =============================================================================

NEUTRAL_200 = "#e5e7eb"
NEUTRAL_300 = "#d1d5db"
NEUTRAL_500 = "#6b7280"
NEUTRAL_800 = "#1f2937"

BRAND_PRIMARY = "#3b82f6"

# One color per geometry so paired comparisons read at a glance
GEOMETRY_COLORS = {
    "hyperbolic": "#d62728",
    "euclidean": "#2ca02c",
}

# =============================================================================
# CHART CONFIGURATION TOKENS
# =============================================================================

CHART_TEMPLATE = "plotly_white"

CHART_FONT_FAMILY = (
    "Inter, -apple-system, BlinkMacSystemFont, 'Segoe UI', Roboto, sans-serif"
)
CHART_FONT_SIZE = 12

CHART_HEIGHT = 400
CHART_MARGIN = dict(l=50, r=50, t=50, b=50)

CHART_GRID_COLOR = NEUTRAL_200
CHART_AXIS_LINE_COLOR = NEUTRAL_300
CHART_AXIS_LINE_WIDTH = 1
CHART_GRID_WIDTH = 1

CHART_PLOT_BGCOLOR = "rgba(0,0,0,0)"
CHART_PAPER_BGCOLOR = "rgba(0,0,0,0)"

CHART_COLORS = [
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
]

CHART_LABELS = {
    "s": "Sampling density S",
    "success_probability": "Success probability",
    "n": "Number of nodes N",
    "mean": "Mean relative error",
    "e_rel": "Relative error",
    "d0_mean": "Mean optimal dimension",
    "d": "Embedding dimension d",
    "gamma": "Accuracy",
    "zeta_pct": "Violation budget p (%)",
    "geometry": "Geometry",
}

# =============================================================================
# DISK RENDERING TOKENS
# =============================================================================

SVG_BACKGROUND = "#ffffff"
SVG_BOUNDARY_COLOR = NEUTRAL_800
SVG_BOUNDARY_WIDTH = 2
SVG_POINT_COLOR = BRAND_PRIMARY
SVG_LABEL_COLOR = NEUTRAL_800
SVG_FONT_FAMILY = "sans-serif"
SVG_FONT_SIZE = 14
