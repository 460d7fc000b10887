"""Dual tropical curves of convex lattice triangulations.

Each triangle of a lifted triangulation contributes one curve vertex, placed
at the gradient of its lifted plane.  Interior edges dualize to bounded
edges, boundary edges to unbounded legs; the slope across a primal edge is
its lattice-primitive vector turned a quarter turn clockwise (oriented away
from the vertex), weighted by the sublattice-integral edge length.  The dual
of a triangulation is automatically trivalent and balanced, and its first
Betti number equals the number of interior triangulation vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DualityViolation, MissingHeights, NotRegular
from .lattice import (
    Pt,
    Sublattice,
    cross,
    hnf_sublattice,
    lattice_length,
    rotate_dual,
)
from .triangulate import Triangulation, edge_incidence, lifting_certifies

QQPoint = tuple[Fraction, Fraction]


class DualEdge(NamedTuple):
    tail: int                 # triangle index
    head: int                 # triangle index
    slope: Pt                 # primitive slope, oriented tail -> head
    weight: int               # integral length of the primal edge
    length: Fraction          # stretch factor: head - tail = length * slope
    primal: tuple[int, int]   # primal edge (vertex indices)


class DualLeg(NamedTuple):
    vertex: int               # triangle index
    slope: Pt                 # primitive slope, oriented away from the vertex
    weight: int
    primal: tuple[int, int]


@dataclass(frozen=True)
class TropicalCurve:
    """Trivalent balanced graph embedded by the gradient map."""

    positions: tuple[QQPoint, ...]
    edges: tuple[DualEdge, ...]
    legs: tuple[DualLeg, ...]
    genus: int

    def degrees(self) -> list[int]:
        deg = [0] * len(self.positions)
        for e in self.edges:
            deg[e.tail] += 1
            deg[e.head] += 1
        for l in self.legs:
            deg[l.vertex] += 1
        return deg

    def is_trivalent(self) -> bool:
        return all(d == 3 for d in self.degrees())

    def balancing_defects(self) -> list[Pt]:
        """Weighted sum of outgoing primitive slopes per vertex; all (0, 0)
        iff the curve balances."""
        totals = [Pt(0, 0)] * len(self.positions)
        for e in self.edges:
            w = e.slope.scaled(e.weight)
            totals[e.tail] = totals[e.tail] + w
            totals[e.head] = totals[e.head] - w
        for l in self.legs:
            totals[l.vertex] = totals[l.vertex] + l.slope.scaled(l.weight)
        return totals

    def balancing_defect(self, v: int) -> Pt:
        return self.balancing_defects()[v]

    def is_balanced(self) -> bool:
        return all(d == Pt(0, 0) for d in self.balancing_defects())

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[str(x), str(y)] for x, y in self.positions],
            "edges": [
                {
                    "ends": [e.tail, e.head],
                    "slope": [e.slope.x, e.slope.y],
                    "weight": e.weight,
                    "length": str(e.length),
                    "primal": list(e.primal),
                }
                for e in self.edges
            ],
            "legs": [
                {
                    "vertex": l.vertex,
                    "slope": [l.slope.x, l.slope.y],
                    "weight": l.weight,
                    "primal": list(l.primal),
                }
                for l in self.legs
            ],
            "genus": self.genus,
        }


def _gradient(a: Pt, b: Pt, c: Pt, ha: Fraction, hb: Fraction, hc: Fraction) -> QQPoint:
    """Gradient of the affine function interpolating the lifted triangle."""
    u, v = b - a, c - a
    det = cross(u, v)
    cu, cv = hb - ha, hc - ha
    gx = Fraction(cu * v.y - cv * u.y, det)
    gy = Fraction(cv * u.x - cu * v.x, det)
    return (gx, gy)


def _away_slope(tri_ccw, vertices, edge: frozenset) -> tuple[Pt, Pt]:
    """(edge vector traversed ccw within the triangle, clockwise quarter turn).

    The quarter-turn vector points out of the triangle across that edge,
    which orients the dual edge away from the triangle's curve vertex.
    """
    a, b, c = tri_ccw
    for i, j in ((a, b), (b, c), (c, a)):
        if frozenset((i, j)) == edge:
            vec = vertices[j] - vertices[i]
            return vec, Pt(vec.y, -vec.x)
    raise AssertionError("edge does not belong to the triangle")


def dual_tropical_curve(tri: Triangulation) -> TropicalCurve:
    """Dual curve of a lifted triangulation, embedded by plane gradients.

    Requires a valid heights certificate: raises MissingHeights when absent
    and NotRegular when the attached heights fail the convexity check.
    """
    if tri.heights is None:
        raise MissingHeights("dual curves need a lifting certificate")
    if not lifting_certifies(tri, tri.heights):
        raise NotRegular("attached heights are not strictly convex")

    hs = tri.heights
    ccw = [tri.ccw(t) for t in tri.triangles]
    positions = tuple(
        _gradient(*(tri.vertices[i] for i in t), *(hs[i] for i in t)) for t in ccw
    )

    edges: list[DualEdge] = []
    legs: list[DualLeg] = []
    for e, tris in sorted(edge_incidence(tri.triangles).items(), key=lambda kv: sorted(kv[0])):
        i, j = sorted(e)
        vec = tri.vertices[j] - tri.vertices[i]
        weight = lattice_length(vec, tri.lattice)
        if len(tris) == 2:
            t0, t1 = tris
            _, away = _away_slope(ccw[t0], tri.vertices, e)
            m_prim = Pt(away.x // weight, away.y // weight)
            dx = positions[t1][0] - positions[t0][0]
            dy = positions[t1][1] - positions[t0][1]
            length = dx / m_prim.x if m_prim.x else dy / m_prim.y
            if length <= 0 or dx * m_prim.y != dy * m_prim.x:
                raise DualityViolation(f"dual edge across {e} is not a positive "
                                       "multiple of the rotated primal edge")
            edges.append(DualEdge(t0, t1, m_prim, weight, length, (i, j)))
        else:
            (t0,) = tris
            _, away = _away_slope(ccw[t0], tri.vertices, e)
            m_prim = Pt(away.x // weight, away.y // weight)
            legs.append(DualLeg(t0, m_prim, weight, (i, j)))

    genus = 1 - len(tri.triangles) + len(edges)
    assert genus == tri.genus, "first Betti number must match interior vertex count"
    return TropicalCurve(positions=positions, edges=tuple(edges), legs=tuple(legs), genus=genus)


def curve_lattices(curve: TropicalCurve, tri: Triangulation) -> tuple[Sublattice, Sublattice]:
    """(slope lattice, vertex lattice) of a dual curve.

    The slope lattice is generated by the weighted slopes of all edges and
    legs; the vertex lattice by the triangulation vertices (origin-normalized
    when the origin is not among them).  The two are exchanged by a quarter
    turn; any failure of that duality raises, since it indicates a
    construction bug rather than bad input.
    """
    slopes = [e.slope.scaled(e.weight) for e in curve.edges]
    slopes += [l.slope.scaled(l.weight) for l in curve.legs]
    n_gamma = hnf_sublattice(slopes)

    verts = list(tri.vertices)
    if Pt(0, 0) not in verts:
        base = min(verts)
        verts = [v - base for v in verts]
    m_gamma = hnf_sublattice(verts)

    if rotate_dual(n_gamma) != m_gamma:
        raise DualityViolation(
            f"slope lattice {n_gamma} and vertex lattice {m_gamma} are not dual")
    return n_gamma, m_gamma
