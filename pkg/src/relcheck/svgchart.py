"""Grouped bar charts as standalone SVG, no plotting dependencies.

Output is deterministic: fixed palette, fixed float formatting, no
timestamps. NaN values render as a marker glyph at the baseline instead of a
bar, so undefined correlations stay visibly distinct from zeros.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860")

_MARGIN_LEFT = 52
_MARGIN_RIGHT = 16
_MARGIN_TOP = 48
_MARGIN_BOTTOM = 64


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _num(value: float) -> str:
    return f"{value:.2f}"


def grouped_bar_chart(
    groups: Sequence[tuple[str, Mapping[str, float]]],
    series: Sequence[str],
    *,
    title: str = "",
    y_min: float = 0.0,
    y_max: float = 1.0,
    height: int = 320,
) -> str:
    """One bar group per entry in ``groups``, one bar per series, values mapped to [y_min, y_max]."""
    n_groups = max(1, len(groups))
    n_series = max(1, len(series))
    bar_w = 16
    group_pad = 18
    group_w = n_series * bar_w + group_pad
    width = _MARGIN_LEFT + n_groups * group_w + _MARGIN_RIGHT
    plot_h = height - _MARGIN_TOP - _MARGIN_BOTTOM
    span = y_max - y_min

    def y_of(value: float) -> float:
        return _MARGIN_TOP + plot_h * (1.0 - (value - y_min) / span)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_num(width / 2)}" y="20" text-anchor="middle" '
            f'font-size="14">{_esc(title)}</text>'
        )

    # horizontal gridlines every quarter of the value range
    ticks = 4
    for t in range(ticks + 1):
        value = y_min + span * t / ticks
        y = y_of(value)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{_num(y)}" x2="{width - _MARGIN_RIGHT}" '
            f'y2="{_num(y)}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 6}" y="{_num(y + 3)}" '
            f'text-anchor="end" fill="#444444">{value:.2f}</text>'
        )
    if y_min < 0.0 < y_max:
        zero = y_of(0.0)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{_num(zero)}" x2="{width - _MARGIN_RIGHT}" '
            f'y2="{_num(zero)}" stroke="#888888" stroke-width="1"/>'
        )

    baseline = y_of(max(0.0, y_min))
    for gi, (label, values) in enumerate(groups):
        gx = _MARGIN_LEFT + gi * group_w + group_pad / 2
        for si, name in enumerate(series):
            x = gx + si * bar_w
            color = PALETTE[si % len(PALETTE)]
            value = values.get(name, float("nan"))
            if isinstance(value, float) and math.isnan(value):
                parts.append(
                    f'<text class="nan-marker" x="{_num(x + bar_w / 2)}" '
                    f'y="{_num(baseline - 4)}" text-anchor="middle" '
                    f'fill="{color}">&#215;</text>'
                )
                continue
            clamped = min(y_max, max(y_min, value))
            top = y_of(max(0.0, clamped))
            bottom = y_of(min(0.0, clamped)) if y_min < 0.0 else y_of(y_min)
            bar_h = max(0.0, bottom - top)
            parts.append(
                f'<rect class="bar" x="{_num(x + 1)}" y="{_num(top)}" '
                f'width="{bar_w - 2}" height="{_num(bar_h)}" fill="{color}"/>'
            )
        anchor_x = gx + (n_series * bar_w) / 2
        label_y = height - _MARGIN_BOTTOM + 14
        parts.append(
            f'<text x="{_num(anchor_x)}" y="{_num(label_y)}" text-anchor="end" '
            f'transform="rotate(-35 {_num(anchor_x)} {_num(label_y)})" '
            f'fill="#222222">{_esc(label)}</text>'
        )

    # legend along the top edge
    lx = float(_MARGIN_LEFT)
    ly = _MARGIN_TOP - 14
    for si, name in enumerate(series):
        color = PALETTE[si % len(PALETTE)]
        parts.append(f'<rect x="{_num(lx)}" y="{ly - 9}" width="10" height="10" fill="{color}"/>')
        parts.append(f'<text x="{_num(lx + 14)}" y="{ly}" fill="#222222">{_esc(name)}</text>')
        lx += 14 + 7 * len(name) + 18

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
