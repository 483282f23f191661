"""Deterministic SVG drawings of configurations, the grid and shaded regions."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .geometry import SIDE, T, bary_to_cart_array
from .objectives import Configuration, evaluate
from .partition import RegionSpec

WIDTH = 400
MARGIN = 24
PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c")


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    def __init__(self):
        self.scale = (WIDTH - 2 * MARGIN) / SIDE
        self.height = int(round(2 * MARGIN + T.v0.y * self.scale))

    def xy(self, cart) -> tuple:
        x = MARGIN + (cart[0] + SIDE / 2) * self.scale
        y = self.height - MARGIN - cart[1] * self.scale
        return x, y

    def points_attr(self, bary: np.ndarray) -> str:
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.xy(c) for c in bary_to_cart_array(bary)))


def render_svg(config: Optional[Configuration] = None, regions: Sequence[RegionSpec] = (),
               grid: int = 0, labels: Optional[Sequence[str]] = None, title: str = "") -> str:
    """Draw T, an optional ``grid``-order partition, shaded regions and labelled points.

    The triple of smallest area is outlined with a dashed line.  Identical
    input gives byte-identical output.
    """
    cv = _Canvas()
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{cv.height}" viewBox="0 0 {WIDTH} {cv.height}">',
    ]
    if title:
        out.append(f"  <title>{title}</title>")
    out.append('  <rect width="100%" height="100%" fill="white"/>')
    for j, r in enumerate(regions):
        color = PALETTE[j % len(PALETTE)]
        out.append(f'  <g id="region-{r.name}" fill="{color}" fill-opacity="0.35" stroke="none">')
        for c in sorted(r.cells):
            out.append(f'    <polygon points="{cv.points_attr(c.bary)}"/>')
        out.append("  </g>")
    if grid:
        out.append('  <g id="grid" stroke="#999999" stroke-width="0.5">')
        for i in range(1, grid):
            t = i / grid
            # one family of lines parallel to each side
            for a, b in (((t, 1 - t, 0), (t, 0, 1 - t)),
                         ((1 - t, t, 0), (0, t, 1 - t)),
                         ((1 - t, 0, t), (0, 1 - t, t))):
                (x1, y1), (x2, y2) = (cv.xy(c) for c in bary_to_cart_array(np.array([a, b], float)))
                out.append(f'    <line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
        out.append("  </g>")
    out.append(f'  <polygon id="T" points="{cv.points_attr(np.eye(3))}" fill="none" '
               f'stroke="black" stroke-width="1.5"/>')
    if config is not None:
        pts = config.as_array()
        if config.n >= 3:
            rep = evaluate(config)
            tri = pts[list(rep.min_triple)]
            out.append(f'  <polygon id="min-triple" points="{cv.points_attr(tri)}" fill="none" '
                       f'stroke="#c44e52" stroke-width="1.2" stroke-dasharray="4,3"/>')
        labels = list(labels) if labels else [f"p{i + 1}" for i in range(config.n)]
        out.append('  <g id="points" font-family="sans-serif" font-size="12">')
        for lab, c in zip(labels, bary_to_cart_array(pts)):
            x, y = cv.xy(c)
            out.append(f'    <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="black"/>')
            out.append(f'    <text x="{_fmt(x + 5)}" y="{_fmt(y - 5)}">{lab}</text>')
        out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
