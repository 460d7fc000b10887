"""Exact integer geometry: lattice polygons, lattice-point enumeration,
finite-index sublattices of Z^2 in Hermite normal form, and the quarter-turn
duality between slope lattices and monomial lattices.

Everything in this module is exact (Python ints and fractions.Fraction);
there are no tolerances here.  All values are immutable after construction,
so every operation is a pure function that is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import Degenerate, NotConvex, RankDeficient


class Pt(NamedTuple):
    """A point of Z^2.  Coordinates are exact integers."""

    x: int
    y: int

    def __add__(self, other: "Pt") -> "Pt":
        return Pt(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Pt") -> "Pt":
        return Pt(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Pt":
        return Pt(-self.x, -self.y)

    def scaled(self, s: int) -> "Pt":
        return Pt(self.x * s, self.y * s)

    def rot90(self) -> "Pt":
        """Counterclockwise quarter turn (x, y) -> (-y, x)."""
        return Pt(-self.y, self.x)


def cross(a: Pt, b: Pt) -> int:
    return a.x * b.y - a.y * b.x


def dot(a: Pt, b: Pt) -> int:
    return a.x * b.x + a.y * b.y


def as_pt(p) -> Pt:
    x, y = p
    if not isinstance(x, int) or not isinstance(y, int):
        raise TypeError(f"lattice points need integer coordinates, got {p!r}")
    return Pt(x, y)


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticePolygon:
    """Strictly convex lattice polygon.

    ``vertices`` are counterclockwise, starting at the lexicographically
    smallest vertex.  ``offset`` records the translation that was applied
    during normalization (normalized = raw + offset), so reports can be
    mapped back to the caller's coordinates.
    """

    vertices: tuple[Pt, ...]
    offset: Pt = Pt(0, 0)

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 3:
            raise Degenerate("a polygon needs at least 3 vertices")
        if _shoelace2(vs) <= 0:
            raise Degenerate("vertices must be counterclockwise with positive area")
        n = len(vs)
        for i in range(n):
            turn = cross(vs[(i + 1) % n] - vs[i], vs[(i + 2) % n] - vs[(i + 1) % n])
            if turn <= 0:
                raise NotConvex(f"turn at vertex {vs[(i + 1) % n]} is not strictly convex")

    @cached_property
    def area2(self) -> int:
        """Twice the Euclidean area (always a positive integer)."""
        return _shoelace2(self.vertices)

    def edges(self) -> list[tuple[Pt, Pt]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def classify(self, p: Pt) -> str:
        """'interior', 'boundary', or 'outside' -- decided exactly."""
        on_edge = False
        for a, b in self.edges():
            c = cross(b - a, p - a)
            if c < 0:
                return "outside"
            if c == 0:
                on_edge = True
        return "boundary" if on_edge else "interior"

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[v.x, v.y] for v in self.vertices],
            "offset": [self.offset.x, self.offset.y],
        }


def _shoelace2(vs: Sequence[Pt]) -> int:
    n = len(vs)
    return sum(cross(vs[i], vs[(i + 1) % n]) for i in range(n))


def polygon_from_json(d: dict) -> LatticePolygon:
    """Documents with an ``offset`` key are trusted as already normalized
    (round-trips of emitted reports); raw vertex lists are normalized."""
    if "offset" in d:
        return LatticePolygon(tuple(Pt(*v) for v in d["vertices"]), offset=Pt(*d["offset"]))
    return normalize_polygon([tuple(v) for v in d["vertices"]])


def normalize_polygon(raw_vertices: Iterable) -> LatticePolygon:
    """Validate a vertex cycle and bring it to normal form.

    Accepts any orientation and translation.  Output is counterclockwise and
    translated so the lexicographically smallest vertex sits at the origin;
    the applied translation is recorded in ``offset``.

    Raises Degenerate (fewer than 3 distinct points, zero area) or NotConvex
    (collinear triple or reflex turn).
    """
    pts = [as_pt(p) for p in raw_vertices]
    if len(set(pts)) < 3:
        raise Degenerate("need at least 3 distinct points")
    area2 = _shoelace2(pts)
    if area2 == 0:
        raise Degenerate("zero area")
    if area2 < 0:
        pts.reverse()
    n = len(pts)
    for i in range(n):
        turn = cross(pts[(i + 1) % n] - pts[i], pts[(i + 2) % n] - pts[(i + 1) % n])
        if turn <= 0:
            raise NotConvex(f"vertex {pts[(i + 1) % n]} breaks strict convexity")
    start = min(range(n), key=lambda i: pts[i])
    pts = pts[start:] + pts[:start]
    off = -pts[0]
    return LatticePolygon(tuple(p + off for p in pts), offset=off)


def lattice_points(poly: LatticePolygon, region: str = "all") -> list[Pt]:
    """Enumerate lattice points of the polygon, exactly.

    ``region`` is one of 'interior', 'boundary', 'all'.  A y-scanline
    computes rational x-bounds per row; each candidate is then classified by
    exact cross-product signs, so no point is ever misattributed to the
    boundary.  Output is in lexicographic (x, y) order.  Runtime is linear
    in the area of the bounding box; no coordinate bound is imposed.
    """
    if region not in ("interior", "boundary", "all"):
        raise ValueError(f"unknown region {region!r}")
    vs = poly.vertices
    ymin = min(v.y for v in vs)
    ymax = max(v.y for v in vs)
    out = []
    for y in range(ymin, ymax + 1):
        xs: list[Fraction] = []
        for a, b in poly.edges():
            if a.y == b.y:
                if a.y == y:
                    xs.append(Fraction(a.x))
                    xs.append(Fraction(b.x))
            elif min(a.y, b.y) <= y <= max(a.y, b.y):
                xs.append(Fraction(a.x) + Fraction(y - a.y, b.y - a.y) * (b.x - a.x))
        if not xs:
            continue
        for x in range(math.ceil(min(xs)), math.floor(max(xs)) + 1):
            cls = poly.classify(Pt(x, y))
            if cls == "outside":
                continue
            if region == "all" or region == cls:
                out.append(Pt(x, y))
    out.sort()
    return out


def interior_count(poly: LatticePolygon) -> int:
    return len(lattice_points(poly, "interior"))


# ---------------------------------------------------------------------------
# sublattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Sublattice:
    """Finite-index sublattice of Z^2 in column Hermite normal form.

    The basis columns are (d1, c) and (0, d2) with d1 > 0, d2 > 0 and
    0 <= c < d2.  This representative is unique, so sublattices compare and
    hash as sets of points.
    """

    d1: int
    c: int
    d2: int

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1 or not 0 <= self.c < self.d2:
            raise ValueError(f"not a canonical HNF triple: {(self.d1, self.c, self.d2)}")

    @property
    def index(self) -> int:
        return self.d1 * self.d2

    @property
    def is_full(self) -> bool:
        return self.index == 1

    @property
    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Row-major 2x2 matrix [[d1, 0], [c, d2]] whose columns generate the lattice."""
        return ((self.d1, 0), (self.c, self.d2))

    @property
    def basis_vectors(self) -> tuple[Pt, Pt]:
        return (Pt(self.d1, self.c), Pt(0, self.d2))

    def contains(self, p: Pt) -> bool:
        """Membership by exact triangular back-substitution."""
        p = as_pt(p)
        if p.x % self.d1 != 0:
            return False
        return (p.y - (p.x // self.d1) * self.c) % self.d2 == 0

    def to_json(self) -> list[list[int]]:
        return [[self.d1, 0], [self.c, self.d2]]


ZZ2 = Sublattice(1, 0, 1)


def sublattice_from_basis(rows) -> Sublattice:
    (a, z), (c, d) = rows
    if z != 0:
        raise ValueError("basis rows must be [[d1, 0], [c, d2]]")
    return hnf_sublattice([Pt(a, c), Pt(0, d)])


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_sublattice(generators: Iterable) -> Sublattice:
    """Hermite normal form of the lattice generated by the given vectors.

    Raises RankDeficient when the generators span a line or a point.
    """
    vecs = [as_pt(v) for v in generators]
    vecs = [v for v in vecs if v != Pt(0, 0)]
    u: Pt | None = None
    for v in vecs:
        if v.x == 0:
            continue
        if u is None:
            u = v if v.x > 0 else -v
        else:
            g, s, t = _ext_gcd(u.x, v.x)
            u = Pt(g, s * u.y + t * v.y)
    if u is None:
        raise RankDeficient("generators span at most a vertical line")
    ys = [v.y - (v.x // u.x) * u.y for v in vecs]
    d2 = 0
    for y in ys:
        d2 = math.gcd(d2, y)
    if d2 == 0:
        raise RankDeficient("generators span a single line")
    return Sublattice(u.x, u.y % d2, d2)


def rotate_dual(lat: Sublattice) -> Sublattice:
    """The lattice {m : <n, m> in rZ for all n in lat}, r = index(lat).

    Equals the image of ``lat`` under the quarter turn (x, y) -> (-y, x),
    re-canonicalized; the index is preserved and the map is an involution on
    canonical forms.
    """
    dual = hnf_sublattice([v.rot90() for v in lat.basis_vectors])
    assert dual.index == lat.index
    return dual


def lattice_length(vec: Pt, lat: Sublattice = ZZ2) -> int:
    """Integral length of ``vec`` with respect to ``lat``: the largest t such
    that vec/t is a lattice member.  ``vec`` must lie in ``lat``."""
    g = math.gcd(abs(vec.x), abs(vec.y))
    if g == 0:
        raise ValueError("zero vector has no length")
    for t in range(g, 0, -1):
        if g % t == 0 and lat.contains(Pt(vec.x // t, vec.y // t)):
            return t
    raise ValueError(f"{vec} is not a member of the lattice")


def primitive(vec: Pt, lat: Sublattice = ZZ2) -> Pt:
    t = lattice_length(vec, lat)
    return Pt(vec.x // t, vec.y // t)


def boundary_sublattice(poly: LatticePolygon) -> Sublattice:
    """Lattice generated by the boundary lattice points (as vectors).

    Precondition: the origin is itself a boundary lattice point (true for
    normalized polygons and for kite frames), which makes the affine lattice
    of boundary points a linear one.
    """
    bpts = lattice_points(poly, "boundary")
    if Pt(0, 0) not in bpts:
        raise ValueError("origin must be a boundary lattice point; normalize first")
    return hnf_sublattice(bpts)


def delta_m(poly: LatticePolygon, lat: Sublattice, g: int) -> int:
    """Interior-point deficiency: |interior points in lat| - g (may be negative)."""
    inside = sum(1 for p in lattice_points(poly, "interior") if lat.contains(p))
    return inside - g


# ---------------------------------------------------------------------------
# kites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KiteSpec:
    """The narrow polygon with vertices (0,0), (+-1, k), (0, k+k').

    Requires k' >= k >= 0 and k' > 0.  For k = 0 the convex hull is the
    triangle (-1,0), (1,0), (0,k') and the origin is a boundary (non-vertex)
    lattice point; every sublattice compatible with the boundary contains
    (1, 0), so working in this frame keeps all such sublattices linear.
    """

    k: int
    k_prime: int

    def __post_init__(self):
        if self.k < 0 or self.k_prime <= 0 or self.k_prime < self.k:
            raise ValueError(f"need k' >= k >= 0 and k' > 0, got k={self.k}, k'={self.k_prime}")

    @property
    def height(self) -> int:
        """Total lattice height k + k' of the symmetry axis."""
        return self.k + self.k_prime

    @property
    def interior_point_count(self) -> int:
        return self.height - 1

    @cached_property
    def polygon(self) -> LatticePolygon:
        """The kite in its own frame (no normalizing translation is applied:
        the symmetry axis stays on x = 0)."""
        k, h = self.k, self.height
        if k == 0:
            verts = (Pt(-1, 0), Pt(1, 0), Pt(0, h))
        else:
            verts = (Pt(-1, k), Pt(0, 0), Pt(1, k), Pt(0, h))
        return LatticePolygon(verts)


def kite(k: int, k_prime: int) -> KiteSpec:
    return KiteSpec(k, k_prime)
