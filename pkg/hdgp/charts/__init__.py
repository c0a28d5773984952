from .base import (
    create_benchmark_chart,
    create_consistency_curve,
    create_ordinal_accuracy_chart,
    create_poincare_disk_figure,
    create_success_curve,
    create_tree_comparison_chart,
    write_html,
)
from .formatting import (
    format_log_axis,
    format_number_axis,
    format_probability_axis,
    get_chart_label,
)
from .poincare import poincare_svg, render_poincare_svg
