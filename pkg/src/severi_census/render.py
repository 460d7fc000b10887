"""Deterministic standalone SVG figures.

Lattice geometry is drawn with exact integer coordinates scaled by a
declared integer factor; dual-curve positions are rationals rendered with a
fixed decimal precision, so identical inputs always produce byte-identical
files.
"""

from __future__ import annotations

from fractions import Fraction

from .lattice import lattice_points
from .triangulate import Triangulation
from .tropical import TropicalCurve

SCALE = 40  # integer lattice-to-pixel factor


def _fmt(q) -> str:
    return f"{float(q):.4f}"


class _Canvas:
    def __init__(self, xmin, ymin, xmax, ymax, scale=SCALE, pad=1):
        self.scale = scale
        self.xmin, self.ymax = xmin - pad, ymax + pad
        self.width = (xmax - xmin + 2 * pad) * scale
        self.height = (ymax - ymin + 2 * pad) * scale
        self.body: list[str] = []

    def map(self, x, y):
        # y axis flipped so the lattice y grows upward
        return (Fraction(x) - self.xmin) * self.scale, (self.ymax - Fraction(y)) * self.scale

    def line(self, p, q, stroke, width="1", dash=None):
        (x1, y1), (x2, y2) = self.map(*p), self.map(*q)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.body.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{width}"{extra} />'
        )

    def circle(self, p, r, fill):
        x, y = self.map(*p)
        self.body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{fill}" />')

    def path(self, pts, stroke, fill="none", width="1.5"):
        cmds = []
        for i, p in enumerate(pts):
            x, y = self.map(*p)
            cmds.append(f'{"M" if i == 0 else "L"} {_fmt(x)} {_fmt(y)}')
        cmds.append("Z")
        self.body.append(
            f'<path d="{" ".join(cmds)}" stroke="{stroke}" fill="{fill}" stroke-width="{width}" />'
        )

    def render(self) -> str:
        head = (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{_fmt(self.width)}" height="{_fmt(self.height)}" '
            f'data-scale="{self.scale}">'
        )
        return "\n".join([head, *self.body, "</svg>"]) + "\n"


def triangulation_svg(tri: Triangulation, curve: TropicalCurve | None = None,
                      scale: int = SCALE) -> str:
    """Polygon, sublattice members, triangulation, and (optionally) the dual
    curve overlay in its gradient embedding."""
    poly = tri.polygon
    xs = [v.x for v in poly.vertices]
    ys = [v.y for v in poly.vertices]
    if curve is not None and curve.positions:
        xs += [x for x, _ in curve.positions]
        ys += [y for _, y in curve.positions]
    canvas = _Canvas(min(xs), min(ys), max(xs), max(ys), scale=scale)

    for a, b, c in (tri.ccw(t) for t in tri.triangles):
        canvas.path([tri.vertices[a], tri.vertices[b], tri.vertices[c]],
                    stroke="#888888", width="1")
    canvas.path(list(poly.vertices), stroke="#000000", width="2")
    for p in lattice_points(poly, "all"):
        color = "#1a6fb8" if tri.lattice.contains(p) else "#c8c8c8"
        canvas.circle(p, 4 if tri.lattice.contains(p) else 2.5, color)
    for i in tri.interior_indices:
        canvas.circle(tri.vertices[i], 5.5, "#d84315")

    if curve is not None:
        for e in curve.edges:
            canvas.line(curve.positions[e.tail], curve.positions[e.head],
                        stroke="#2e7d32", width="2")
        leg_len = Fraction(3, 2)
        for l in curve.legs:
            x, y = curve.positions[l.vertex]
            end = (x + leg_len * l.slope.x, y + leg_len * l.slope.y)
            canvas.line(curve.positions[l.vertex], end,
                        stroke="#2e7d32", width="2", dash="6,4")
        for pos in curve.positions:
            canvas.circle(pos, 4, "#2e7d32")
    return canvas.render()


def amoeba_svg(points: list[tuple[float, float]], size: int = 480) -> str:
    """Scatter plot of an amoeba sample; a valid axes-only figure when the
    cloud is empty."""
    if points:
        us = [u for u, _ in points]
        vs = [v for _, v in points]
        lo = min(min(us), min(vs), -1.0) - 0.5
        hi = max(max(us), max(vs), 1.0) + 0.5
    else:
        lo, hi = -3.0, 3.0
    span = hi - lo

    def map_pt(u, v):
        return (u - lo) / span * size, (hi - v) / span * size

    body = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{size}" height="{size}" data-window="{_fmt(lo)},{_fmt(hi)}">'
    ]
    x0, y0 = map_pt(0.0, 0.0)
    body.append(f'<line x1="0" y1="{_fmt(y0)}" x2="{size}" y2="{_fmt(y0)}" '
                'stroke="#aaaaaa" stroke-width="1" />')
    body.append(f'<line x1="{_fmt(x0)}" y1="0" x2="{_fmt(x0)}" y2="{size}" '
                'stroke="#aaaaaa" stroke-width="1" />')
    for u, v in points:
        x, y = map_pt(u, v)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="1.6" fill="#5e35b1" />')
    body.append("</svg>")
    return "\n".join(body) + "\n"
