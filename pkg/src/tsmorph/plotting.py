"""Performance-understanding plots as standalone SVG.

One SVG per feature: feature value on the y-axis, morph step index on the
x-axis, one circle marker per (pair, step); the marker fill interpolates
linearly between the ramp endpoint colors according to the pair's min-max
normalized MASE. Pure text output with fixed number formatting, so a
given report renders to byte-identical SVG on every run.
"""

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .analysis import MorphAnalysisReport, relative_mase
from .errors import FeatureNotInReportError

Color = tuple[int, int, int]

DEFAULT_COLOR_LOW: Color = (33, 102, 172)
DEFAULT_COLOR_HIGH: Color = (178, 24, 43)


@dataclass(frozen=True)
class PlotSpec:
    feature: str
    marker_size: float = 4.0
    width: int = 720
    height: int = 480
    color_low: Color = DEFAULT_COLOR_LOW
    color_high: Color = DEFAULT_COLOR_HIGH

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("plot dimensions must be positive")
        if self.marker_size <= 0:
            raise ValueError("marker size must be positive")


def parse_color(text: str) -> Color:
    """'#rrggbb' hex triple to an RGB tuple."""
    token = text.strip().lstrip("#")
    if len(token) != 6:
        raise ValueError(f"expected #rrggbb color, got {text!r}")
    return (int(token[0:2], 16), int(token[2:4], 16), int(token[4:6], 16))


def _ramp(low: Color, high: Color, t: float) -> str:
    channels = (round(lo + t * (hi - lo)) for lo, hi in zip(low, high))
    return "#{:02x}{:02x}{:02x}".format(*channels)


def _px(value: float) -> str:
    return f"{value:.2f}"


def _tick_label(value: float) -> str:
    return f"{value:.4g}"


def render_plot(report: MorphAnalysisReport, spec: PlotSpec) -> str:
    """Render one feature of the report to SVG text."""
    points: list[tuple[int, float, float]] = []  # (step, value, relative mase)
    shading = relative_mase(report)
    found = False
    for table, shade in zip(report.per_pair, shading):
        for row, t in zip(table.rows, shade["values"]):
            if spec.feature in row.features:
                found = True
                points.append((row.step, row.features[spec.feature], t))
    if not found:
        raise FeatureNotInReportError(
            f"feature {spec.feature!r} does not appear in the report"
        )

    margin_left, margin_right, margin_top, margin_bottom = 60.0, 95.0, 42.0, 48.0
    plot_w = spec.width - margin_left - margin_right
    plot_h = spec.height - margin_top - margin_bottom
    x_max = max(report.config.n - 1, 1)
    y_values = [v for _, v, _ in points]
    y_min, y_max = min(y_values), max(y_values)
    if y_min == y_max:
        y_min, y_max = y_min - 1.0, y_max + 1.0
    pad = 0.05 * (y_max - y_min)
    y_min -= pad
    y_max += pad

    def sx(step: float) -> float:
        return margin_left + plot_w * (step / x_max)

    def sy(value: float) -> float:
        return margin_top + plot_h * (1.0 - (value - y_min) / (y_max - y_min))

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">'
    )
    parts.append('<rect width="100%" height="100%" fill="white"/>')
    title = escape(f"{spec.feature} vs morph step")
    parts.append(
        f'<text x="{_px(spec.width / 2)}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>'
    )

    # axes
    x0, x1 = margin_left, margin_left + plot_w
    y0, y1 = margin_top, margin_top + plot_h
    parts.append(
        f'<line x1="{_px(x0)}" y1="{_px(y1)}" x2="{_px(x1)}" y2="{_px(y1)}" '
        'stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_px(x0)}" y1="{_px(y0)}" x2="{_px(x0)}" y2="{_px(y1)}" '
        'stroke="black" stroke-width="1"/>'
    )

    # x ticks at integer steps
    n_steps = report.config.n
    if n_steps <= 15:
        tick_steps = list(range(n_steps))
    else:
        stride = max(1, (n_steps - 1) // 8)
        tick_steps = list(range(0, n_steps, stride))
        if tick_steps[-1] != n_steps - 1:
            tick_steps.append(n_steps - 1)
    for step in tick_steps:
        x = sx(step)
        parts.append(
            f'<line x1="{_px(x)}" y1="{_px(y1)}" x2="{_px(x)}" y2="{_px(y1 + 5)}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_px(x)}" y="{_px(y1 + 18)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{step}</text>'
        )
    parts.append(
        f'<text x="{_px((x0 + x1) / 2)}" y="{_px(spec.height - 10)}" '
        'text-anchor="middle" font-family="sans-serif" font-size="12">morph step</text>'
    )

    # y ticks
    for i in range(5):
        value = y_min + (y_max - y_min) * i / 4
        y = sy(value)
        parts.append(
            f'<line x1="{_px(x0 - 5)}" y1="{_px(y)}" x2="{_px(x0)}" y2="{_px(y)}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_px(x0 - 8)}" y="{_px(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_tick_label(value)}</text>'
        )

    # markers
    for step, value, t in points:
        fill = _ramp(spec.color_low, spec.color_high, t)
        parts.append(
            f'<circle class="marker" cx="{_px(sx(step))}" cy="{_px(sy(value))}" '
            f'r="{_px(spec.marker_size)}" fill="{fill}" fill-opacity="0.85"/>'
        )

    # color bar
    bar_x = x1 + 24.0
    bar_w = 14.0
    segments = 32
    for i in range(segments):
        t_low = i / segments
        t_high = (i + 1) / segments
        seg_top = y0 + plot_h * (1.0 - t_high)
        seg_h = plot_h / segments
        parts.append(
            f'<rect x="{_px(bar_x)}" y="{_px(seg_top)}" width="{_px(bar_w)}" '
            f'height="{_px(seg_h + 0.5)}" '
            f'fill="{_ramp(spec.color_low, spec.color_high, (t_low + t_high) / 2)}"/>'
        )
    parts.append(
        f'<rect x="{_px(bar_x)}" y="{_px(y0)}" width="{_px(bar_w)}" '
        f'height="{_px(plot_h)}" fill="none" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{_px(bar_x + bar_w + 6)}" y="{_px(y1 + 4)}" '
        'font-family="sans-serif" font-size="11">0</text>'
    )
    parts.append(
        f'<text x="{_px(bar_x + bar_w + 6)}" y="{_px(y0 + 4)}" '
        'font-family="sans-serif" font-size="11">1</text>'
    )
    parts.append(
        f'<text x="{_px(bar_x + bar_w / 2)}" y="{_px(y0 - 10)}" text-anchor="middle" '
        'font-family="sans-serif" font-size="11">relative MASE</text>'
    )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
