"""
Context: Recovery || Category: Experiments || **Command: phase_diagram** view.

A small SVG heatmap: one cell per grid point shaded by success rate, axis
labels, and the theoretical boundary as a polyline.
"""

from html import escape

import polars as pl

from plantedsdp.core.standard_models.abstract.chart import Chart, ChartTemplate

_CELL = 40
_MARGIN = 60
_SKIPPED = "rgb(200,200,200)"


def _shade(rate: float) -> str:
    level = int(round(255 * (1.0 - rate)))
    return f"rgb({level},{level},255)"


def _axis_position(values: list[float], value: float) -> float:
    """Pixel centre of `value` along an axis of grid `values` (interpolated)."""
    if len(values) == 1 or value <= values[0]:
        idx = 0.0
    elif value >= values[-1]:
        idx = float(len(values) - 1)
    else:
        idx = 0.0
        for i in range(1, len(values)):
            if value <= values[i]:
                span = values[i] - values[i - 1]
                idx = i - 1 + (value - values[i - 1]) / span
                break
    return _MARGIN + (idx + 0.5) * _CELL


def generate_heatmap(
    points: pl.DataFrame,
    boundary: dict[float, dict[str, float | None]],
    title: str = "",
) -> Chart:
    """
    Build the heatmap of success rates over the (b, a) grid.

    Parameters
    ----------
    points : pl.DataFrame
        Sweep rows with columns a, b, trials, successes.
    boundary : dict
        For each a, the lower and upper boundary values of b.
    """
    a_values = sorted(set(points["a"].to_list()))
    b_values = sorted(set(points["b"].to_list()))
    width = 2 * _MARGIN + _CELL * len(b_values)
    height = 2 * _MARGIN + _CELL * len(a_values)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<text x="{width / 2}" y="20" text-anchor="middle">{escape(title)}</text>',
    ]
    for row in points.iter_rows(named=True):
        x = _MARGIN + b_values.index(row["b"]) * _CELL
        y = _MARGIN + (len(a_values) - 1 - a_values.index(row["a"])) * _CELL
        if row["trials"]:
            rate = row["successes"] / row["trials"]
            fill, label = _shade(rate), f"rate={rate:.2f}"
        else:
            fill, label = _SKIPPED, "skipped"
        parts.append(
            f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
            f'fill="{fill}"><title>a={row["a"]} b={row["b"]} '
            f'{label}</title></rect>'
        )
    for i, b in enumerate(b_values):
        x = _MARGIN + (i + 0.5) * _CELL
        parts.append(
            f'<text x="{x}" y="{height - _MARGIN + 15}" font-size="10" '
            f'text-anchor="middle">{b:g}</text>'
        )
    for j, a in enumerate(a_values):
        y = _MARGIN + (len(a_values) - 1 - j + 0.5) * _CELL
        parts.append(
            f'<text x="{_MARGIN - 5}" y="{y}" font-size="10" '
            f'text-anchor="end">{a:g}</text>'
        )
    parts.append(
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle">b</text>'
    )
    parts.append(f'<text x="15" y="{height / 2}">a</text>')

    for branch in ("lower", "upper"):
        coords = []
        for j, a in enumerate(a_values):
            b_star = boundary.get(a, {}).get(branch)
            if b_star is None or not b_values[0] <= b_star <= b_values[-1]:
                continue
            y = _MARGIN + (len(a_values) - 1 - j + 0.5) * _CELL
            coords.append(f"{_axis_position(b_values, b_star):.1f},{y:.1f}")
        if len(coords) == 1:
            x, y = coords[0].split(",")
            parts.append(
                f'<line x1="{x}" y1="{float(y) - _CELL / 2}" x2="{x}" '
                f'y2="{float(y) + _CELL / 2}" stroke="red" stroke-width="2"/>'
            )
        elif coords:
            parts.append(
                f'<polyline points="{" ".join(coords)}" fill="none" '
                'stroke="red" stroke-width="2"/>'
            )
    parts.append("</svg>")
    return Chart(content="\n".join(parts), theme=ChartTemplate.svg)
