"""Static SVG grouped bar charts for task results.

Plain markup, no external assets; values are assumed to lie in [0, 1].
"""

from __future__ import annotations

from html import escape

_PALETTE = ("#4878a8", "#d65f5f", "#e8b450", "#6aa56a", "#8d6bb8")

_BAR_W = 18
_BAR_GAP = 4
_GROUP_GAP = 26
_PLOT_H = 260
_MARGIN_L = 64
_MARGIN_T = 56
_MARGIN_B = 120


def grouped_bar_svg(title: str, ylabel: str, group_labels: list[str],
                    series: list[tuple[str, list[float]]]) -> str:
    """Render one bar per (group, series) pair with numeric labels."""
    n_groups = len(group_labels)
    for _, values in series:
        if len(values) != n_groups:
            raise ValueError("every series needs one value per group")

    group_w = len(series) * (_BAR_W + _BAR_GAP) - _BAR_GAP
    width = _MARGIN_L + n_groups * (group_w + _GROUP_GAP) + 160
    height = _MARGIN_T + _PLOT_H + _MARGIN_B
    base_y = _MARGIN_T + _PLOT_H

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f'<text x="{_MARGIN_L}" y="24" font-size="15" font-weight="bold">{escape(title)}</text>',
        f'<text x="14" y="{_MARGIN_T + _PLOT_H / 2:.0f}" font-size="12" '
        f'transform="rotate(-90 14 {_MARGIN_T + _PLOT_H / 2:.0f})" '
        f'text-anchor="middle">{escape(ylabel)}</text>',
    ]

    # y axis, gridlines, tick labels at 0.0 .. 1.0
    for i in range(6):
        v = i / 5
        y = base_y - v * _PLOT_H
        parts.append(f'<line x1="{_MARGIN_L}" y1="{y:.1f}" x2="{width - 20}" y2="{y:.1f}" '
                     f'stroke="#ddd" stroke-width="1"/>')
        parts.append(f'<text x="{_MARGIN_L - 8}" y="{y + 4:.1f}" font-size="11" '
                     f'text-anchor="end">{v:.1f}</text>')
    parts.append(f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" y2="{base_y}" '
                 f'stroke="#333" stroke-width="1"/>')
    parts.append(f'<line x1="{_MARGIN_L}" y1="{base_y}" x2="{width - 20}" y2="{base_y}" '
                 f'stroke="#333" stroke-width="1"/>')

    x = _MARGIN_L + _GROUP_GAP / 2
    for g, label in enumerate(group_labels):
        for s, (_, values) in enumerate(series):
            v = max(0.0, min(1.0, values[g]))
            bar_h = v * _PLOT_H
            bx = x + s * (_BAR_W + _BAR_GAP)
            by = base_y - bar_h
            color = _PALETTE[s % len(_PALETTE)]
            parts.append(f'<rect x="{bx:.1f}" y="{by:.1f}" width="{_BAR_W}" '
                         f'height="{bar_h:.1f}" fill="{color}"/>')
            parts.append(f'<text x="{bx + _BAR_W / 2:.1f}" y="{by - 4:.1f}" font-size="9" '
                         f'text-anchor="middle">{values[g]:.3g}</text>')
        cx = x + group_w / 2
        parts.append(f'<text x="{cx:.1f}" y="{base_y + 12:.1f}" font-size="10" '
                     f'text-anchor="end" transform="rotate(-45 {cx:.1f} {base_y + 12:.1f})">'
                     f'{escape(label)}</text>')
        x += group_w + _GROUP_GAP

    legend_x = width - 150
    for s, (name, _) in enumerate(series):
        ly = _MARGIN_T + s * 18
        color = _PALETTE[s % len(_PALETTE)]
        parts.append(f'<rect x="{legend_x}" y="{ly}" width="12" height="12" fill="{color}"/>')
        parts.append(f'<text x="{legend_x + 18}" y="{ly + 10}" font-size="11">{escape(name)}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
