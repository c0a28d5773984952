import html
import json

import plotly.express as px
import plotly.graph_objs as go

from ..errors import InputError
from .formatting import (
    format_log_axis,
    format_number_axis,
    format_probability_axis,
    get_chart_label,
)
from .tokens import (
    CHART_AXIS_LINE_COLOR,
    CHART_AXIS_LINE_WIDTH,
    CHART_COLORS,
    CHART_FONT_FAMILY,
    CHART_FONT_SIZE,
    CHART_GRID_COLOR,
    CHART_GRID_WIDTH,
    CHART_HEIGHT,
    CHART_MARGIN,
    CHART_PAPER_BGCOLOR,
    CHART_PLOT_BGCOLOR,
    CHART_TEMPLATE,
    GEOMETRY_COLORS,
    NEUTRAL_500,
    SVG_BOUNDARY_COLOR,
    SVG_POINT_COLOR,
)

# --- Shared styling ---


def _empty_figure(height=CHART_HEIGHT):
    fig = go.Figure()
    fig.add_annotation(
        text="No data available",
        xref="paper",
        yref="paper",
        x=0.5,
        y=0.5,
        showarrow=False,
        font=dict(size=16, color=NEUTRAL_500),
    )
    fig.update_layout(
        height=height,
        font=dict(family=CHART_FONT_FAMILY, size=CHART_FONT_SIZE),
        plot_bgcolor=CHART_PLOT_BGCOLOR,
        paper_bgcolor=CHART_PAPER_BGCOLOR,
        margin=CHART_MARGIN,
    )
    return fig


def _apply_layout(fig, x_label, y_label, title=None, show_legend=True):
    fig.update_layout(
        title=title,
        font=dict(family=CHART_FONT_FAMILY, size=CHART_FONT_SIZE),
        plot_bgcolor=CHART_PLOT_BGCOLOR,
        paper_bgcolor=CHART_PAPER_BGCOLOR,
        margin=CHART_MARGIN,
        showlegend=show_legend,
        hovermode="x unified",
    )
    for update, label in ((fig.update_xaxes, x_label), (fig.update_yaxes, y_label)):
        update(
            title_text=label,
            showgrid=True,
            gridwidth=CHART_GRID_WIDTH,
            gridcolor=CHART_GRID_COLOR,
            zeroline=False,
            showline=True,
            linecolor=CHART_AXIS_LINE_COLOR,
            linewidth=CHART_AXIS_LINE_WIDTH,
        )
    return fig


def _has_columns(df, cols):
    return df is not None and not df.empty and all(c in df.columns for c in cols)


# --- Benchmark charts ---


def create_success_curve(df, height=CHART_HEIGHT, title=None):
    """
    Success probability against the metric sampling density.

    Args:
        df: Sparsity summaries with 's' and 'success_probability' columns
        height: Chart height
        title: Optional title
    """
    if not _has_columns(df, ["s", "success_probability"]):
        return _empty_figure(height)
    df = df.sort_values("s")
    fig = px.line(
        df,
        x="s",
        y="success_probability",
        markers=True,
        height=height,
        template=CHART_TEMPLATE,
        color_discrete_sequence=CHART_COLORS,
    )
    _apply_layout(
        fig,
        get_chart_label("s"),
        get_chart_label("success_probability"),
        title=title,
        show_legend=False,
    )
    format_number_axis(fig, axis="x", decimals=2)
    return format_probability_axis(fig, axis="y")


def create_tree_comparison_chart(df, height=CHART_HEIGHT, title=None, metric="mean"):
    """
    Paired hyperbolic vs Euclidean tree results against the number of nodes.

    Args:
        df: Tree summaries with 'n', 'geometry', 'mean', 'std', 'd0_mean' columns
        height: Chart height
        title: Optional title
        metric: 'mean' (relative error, log scale) or 'd0_mean'
    """
    if not _has_columns(df, ["n", "geometry", metric]):
        return _empty_figure(height)
    df = df.sort_values(["geometry", "n"])
    fig = px.line(
        df,
        x="n",
        y=metric,
        color="geometry",
        error_y="std" if metric == "mean" and "std" in df.columns else None,
        markers=True,
        height=height,
        template=CHART_TEMPLATE,
        color_discrete_map=GEOMETRY_COLORS,
    )
    _apply_layout(
        fig, get_chart_label("n"), get_chart_label(metric), title=title, show_legend=True
    )
    fig.update_layout(legend_title_text=get_chart_label("geometry"))
    if metric == "mean":
        format_log_axis(fig, axis="y")
    return fig


def create_ordinal_accuracy_chart(df, height=CHART_HEIGHT, title=None):
    """
    Ordinal accuracy against the embedding dimension, one line per budget.

    Args:
        df: Ordinal summaries with 'd', 'zeta_pct' and 'mean' columns
        height: Chart height
        title: Optional title
    """
    if not _has_columns(df, ["d", "zeta_pct", "mean"]):
        return _empty_figure(height)
    df = df.sort_values(["zeta_pct", "d"]).assign(
        budget=lambda x: x["zeta_pct"].map(lambda p: f"p = {p:g}")
    )
    fig = px.line(
        df,
        x="d",
        y="mean",
        color="budget",
        markers=True,
        height=height,
        template=CHART_TEMPLATE,
        color_discrete_sequence=CHART_COLORS,
    )
    _apply_layout(fig, get_chart_label("d"), get_chart_label("gamma"), title=title)
    fig.update_layout(legend_title_text=get_chart_label("zeta_pct"))
    return format_probability_axis(fig, axis="y")


def create_consistency_curve(df, height=CHART_HEIGHT, title=None):
    """Mean deviation of ordinal-only estimates against the ordinal sampling density."""
    if not _has_columns(df, ["s", "mean"]):
        return _empty_figure(height)
    df = df.sort_values("s")
    fig = px.line(
        df,
        x="s",
        y="mean",
        error_y="std" if "std" in df.columns else None,
        markers=True,
        height=height,
        template=CHART_TEMPLATE,
        color_discrete_sequence=CHART_COLORS,
    )
    _apply_layout(
        fig, get_chart_label("s"), get_chart_label("e_rel"), title=title, show_legend=False
    )
    return format_number_axis(fig, axis="x", decimals=2)


BENCHMARK_CHARTS = {
    "sparsity": create_success_curve,
    "tree": create_tree_comparison_chart,
    "ordinal": create_ordinal_accuracy_chart,
    "ordinal_consistency": create_consistency_curve,
}


def create_benchmark_chart(df, height=CHART_HEIGHT, title=None):
    """Pick the chart matching the 'experiment' column of a summary table."""
    if df is None or df.empty or "experiment" not in df.columns:
        return _empty_figure(height)
    experiments = df["experiment"].unique()
    if len(experiments) != 1 or experiments[0] not in BENCHMARK_CHARTS:
        raise InputError(f"Cannot chart experiment(s): {', '.join(map(str, experiments))}")
    return BENCHMARK_CHARTS[experiments[0]](df, height=height, title=title)


# --- Disk figure ---


def create_poincare_disk_figure(points, labels=None, height=600, title=None):
    """
    Interactive view of 2-D Poincare points inside the unit circle.

    Args:
        points: PoincarePoint list of dimension 2
        labels: Optional hover labels
        height: Chart height
        title: Optional title
    """
    points = list(points)
    if any(p.dim != 2 for p in points):
        raise InputError("Disk figure needs 2-dimensional Poincare points")
    fig = go.Figure()
    fig.add_shape(
        type="circle",
        xref="x",
        yref="y",
        x0=-1,
        y0=-1,
        x1=1,
        y1=1,
        line=dict(color=SVG_BOUNDARY_COLOR, width=2),
    )
    if points:
        fig.add_trace(
            go.Scatter(
                x=[p.coords[0] for p in points],
                y=[p.coords[1] for p in points],
                mode="markers+text" if labels else "markers",
                text=[str(label) for label in labels] if labels else None,
                textposition="top right",
                marker=dict(color=SVG_POINT_COLOR, size=8),
                showlegend=False,
            )
        )
    fig.update_layout(
        title=title,
        height=height,
        width=height,
        template=CHART_TEMPLATE,
        font=dict(family=CHART_FONT_FAMILY, size=CHART_FONT_SIZE),
        plot_bgcolor=CHART_PLOT_BGCOLOR,
        paper_bgcolor=CHART_PAPER_BGCOLOR,
        margin=CHART_MARGIN,
    )
    fig.update_xaxes(range=[-1.05, 1.05], visible=False)
    fig.update_yaxes(range=[-1.05, 1.05], visible=False, scaleanchor="x", scaleratio=1)
    return fig


def write_html(fig, path, invocation=None):
    """Save a figure as a standalone HTML file; the invocation goes in a <meta> tag."""
    page = fig.to_html(include_plotlyjs=True, full_html=True)
    if invocation:
        record = html.escape(json.dumps(invocation, sort_keys=True, default=str))
        tag = f'<meta name="hdgp-invocation" content="{record}">'
        page = page.replace("<head>", "<head>" + tag, 1)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(page)
    except OSError as e:
        raise InputError(f"Cannot write '{path}': {e}")
