# Formatting helpers for charts

from .tokens import CHART_FONT_SIZE, CHART_LABELS


def format_number_axis(fig, axis="y", decimals=2):
    """
    Format the specified axis as fixed-point numbers.

    Args:
        fig: Plotly figure object
        axis: Which axis to format ('x' or 'y')
        decimals: Number of decimal places (default: 2)
    """
    fmt = f".{decimals}f"
    if axis == "y":
        fig.update_yaxes(tickformat=fmt, tickfont=dict(size=CHART_FONT_SIZE))
    elif axis == "x":
        fig.update_xaxes(tickformat=fmt, tickfont=dict(size=CHART_FONT_SIZE))
    return fig


def format_probability_axis(fig, axis="y"):
    """Pin the axis to [0, 1] with percentage ticks."""
    if axis == "y":
        fig.update_yaxes(
            range=[0, 1.05], tickformat=".0%", tickfont=dict(size=CHART_FONT_SIZE)
        )
    elif axis == "x":
        fig.update_xaxes(
            range=[0, 1.05], tickformat=".0%", tickfont=dict(size=CHART_FONT_SIZE)
        )
    return fig


def format_log_axis(fig, axis="y"):
    """Logarithmic scale with exponent ticks, for error magnitudes."""
    if axis == "y":
        fig.update_yaxes(
            type="log", exponentformat="power", tickfont=dict(size=CHART_FONT_SIZE)
        )
    elif axis == "x":
        fig.update_xaxes(
            type="log", exponentformat="power", tickfont=dict(size=CHART_FONT_SIZE)
        )
    return fig


def get_chart_label(label_key, default=None):
    """
    Get a chart label from the configuration.

    Args:
        label_key: Key to look up in CHART_LABELS
        default: Default value if key not found

    Returns:
        Label string or default value
    """
    return CHART_LABELS.get(label_key, default or label_key)
