"""Persistence diagram rendering as standalone SVG.

No plotting dependency: the output is assembled from fixed-precision
strings so identical barcodes give identical bytes.
"""

from __future__ import annotations

import math

SIZE = 360
MARGIN = 44
BAND = 26  # height of the strip where infinite deaths are drawn


def _f(v: float) -> str:
    return f"{v:.2f}"


def render_diagram(bars, max_value: float, title: str = "") -> str:
    """SVG scatter of (birth, death) points above the diagonal.

    Finite points are drawn in the square plot area; points with infinite
    death go to a separate band along the top edge, at their birth x.
    """
    finite_max = max(
        [max_value]
        + [v for x, y in bars for v in (x, y) if v != math.inf]
    )
    vmax = finite_max if finite_max > 0 else 1.0
    plot = SIZE - 2 * MARGIN - BAND
    x0, y0 = MARGIN, MARGIN + BAND + plot  # origin in SVG coordinates

    def sx(v: float) -> float:
        return x0 + (v / vmax) * plot

    def sy(v: float) -> float:
        return y0 - (v / vmax) * plot

    band_y = MARGIN + BAND / 2
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0 + plot)}" y2="{_f(y0)}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0)}" y2="{_f(MARGIN)}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0 + plot)}" y2="{_f(y0 - plot)}" '
        'stroke="#999999" stroke-width="1"/>',
        f'<line x1="{_f(x0)}" y1="{_f(MARGIN + BAND)}" x2="{_f(x0 + plot)}" '
        f'y2="{_f(MARGIN + BAND)}" stroke="#999999" stroke-width="1" '
        'stroke-dasharray="4 3"/>',
        f'<text x="{_f(x0 - 8)}" y="{_f(band_y + 4)}" font-size="13" '
        'text-anchor="end" font-family="sans-serif">&#8734;</text>',
        f'<text x="{_f(x0 - 6)}" y="{_f(y0 + 14)}" font-size="11" '
        'text-anchor="middle" font-family="sans-serif">0</text>',
        f'<text x="{_f(x0 + plot)}" y="{_f(y0 + 14)}" font-size="11" '
        f'text-anchor="middle" font-family="sans-serif">{_f(vmax).rstrip("0").rstrip(".")}</text>',
    ]
    if title:
        parts.append(
            f'<text x="{SIZE / 2:.2f}" y="{_f(MARGIN - 16)}" font-size="12" '
            f'text-anchor="middle" font-family="sans-serif">{title}</text>'
        )
    for x, y in sorted(bars):
        if y == math.inf:
            parts.append(
                f'<circle cx="{_f(sx(x))}" cy="{_f(band_y)}" r="3.5" '
                'fill="#d45500"/>'
            )
        else:
            parts.append(
                f'<circle cx="{_f(sx(x))}" cy="{_f(sy(y))}" r="3.5" '
                'fill="#1f6fb2"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
