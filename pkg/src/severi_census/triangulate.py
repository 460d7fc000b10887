"""Convex lattice triangulations.

Two constructions are provided.  The incremental one starts from the fan
over one interior generating point and the boundary points, then inserts
interior lattice points one at a time (inside a triangle when possible,
otherwise on a shared edge), keeping an exact convexity certificate at every
step.  The axis construction builds, for a kite and an admissible odd-index
pair (r, kappa), the triangulation whose interior vertices sit on the
symmetry axis at the prescribed spacings, together with a closed-form
certificate.

Regularity (existence of a strictly convex lift) is decided exactly:
a valid attached certificate is accepted after verification, and otherwise a
rational Fourier-Motzkin feasibility solve either produces witness heights
or proves there are none.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .census import admissible_pairs, kite_delta
from .errors import (
    EvenIndexUnsupported,
    GenusOutOfRange,
    NoGeneratingPoint,
    NotAdmissible,
)
from .lattice import (
    KiteSpec,
    LatticePolygon,
    Pt,
    Sublattice,
    cross,
    hnf_sublattice,
    lattice_points,
    primitive,
)

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of a lattice polygon with all vertices in ``lattice``.

    ``triangles`` holds index triples into ``vertices`` (sorted within each
    triple; counterclockwise orientation is recovered geometrically).
    ``heights`` is an optional lifting certificate: rational heights whose
    piecewise-linear lift is strictly convex across every interior edge.
    ``shift`` records the frame translation used by axis constructions
    (public coordinates are always unshifted polygon coordinates).
    """

    polygon: LatticePolygon
    lattice: Sublattice
    vertices: tuple[Pt, ...]
    triangles: tuple[Triangle, ...]
    heights: Optional[tuple[Fraction, ...]] = None
    shift: Pt = Pt(0, 0)

    def __post_init__(self):
        assert len(set(self.vertices)) == len(self.vertices)
        area2 = sum(_tri_area2(self.vertices, t) for t in self.triangles)
        assert area2 == self.polygon.area2, "triangles must tile the polygon"
        if self.heights is not None:
            assert len(self.heights) == len(self.vertices)

    @cached_property
    def interior_indices(self) -> tuple[int, ...]:
        return tuple(
            i for i, v in enumerate(self.vertices) if self.polygon.classify(v) == "interior"
        )

    @property
    def genus(self) -> int:
        return len(self.interior_indices)

    def ccw(self, tri: Triangle) -> Triangle:
        a, b, c = tri
        if cross(self.vertices[b] - self.vertices[a], self.vertices[c] - self.vertices[a]) < 0:
            return (a, c, b)
        return (a, b, c)

    def validate(self) -> None:
        """Full structural check: positive areas, exact tiling, pairwise
        interior-disjoint triangles, boundary/interior edge incidences, and
        lattice membership of every vertex.  Quadratic; meant for tests."""
        for t in self.triangles:
            assert _tri_area2(self.vertices, t) > 0, f"degenerate triangle {t}"
        assert sum(_tri_area2(self.vertices, t) for t in self.triangles) == self.polygon.area2
        for i, s in enumerate(self.triangles):
            for t in self.triangles[i + 1:]:
                assert not _triangles_overlap(self.vertices, s, t), f"{s} and {t} overlap"
        for v in self.vertices:
            assert self.lattice.contains(v), f"vertex {v} escapes the lattice"
            assert self.polygon.classify(v) != "outside"
        for e, tris in edge_incidence(self.triangles).items():
            a, b = sorted(e)
            mid_on_boundary = _edge_on_boundary(self.polygon, self.vertices[a], self.vertices[b])
            assert len(tris) == (1 if mid_on_boundary else 2), f"edge {e} has {len(tris)} triangles"
        for p in lattice_points(self.polygon, "boundary"):
            if self.lattice.contains(p):
                assert p in self.vertices, f"boundary lattice point {p} missing"

    def to_json_dict(self) -> dict:
        d = {
            "polygon": self.polygon.to_json_dict(),
            "lattice": self.lattice.to_json(),
            "vertices": [[v.x, v.y] for v in self.vertices],
            "triangles": [list(t) for t in self.triangles],
            "shift": [self.shift.x, self.shift.y],
            "genus": self.genus,
        }
        if self.heights is not None:
            d["heights"] = [str(h) for h in self.heights]
        return d


def triangulation_from_json(d: dict, polygon: LatticePolygon | None = None) -> Triangulation:
    from .lattice import sublattice_from_basis

    poly = polygon if polygon is not None else LatticePolygon(
        tuple(Pt(*v) for v in d["polygon"]["vertices"]), offset=Pt(*d["polygon"]["offset"])
    )
    heights = None
    if "heights" in d:
        heights = tuple(Fraction(h) for h in d["heights"])
    return Triangulation(
        polygon=poly,
        lattice=sublattice_from_basis(d["lattice"]),
        vertices=tuple(Pt(*v) for v in d["vertices"]),
        triangles=tuple(tuple(t) for t in d["triangles"]),
        heights=heights,
        shift=Pt(*d["shift"]),
    )


# ---------------------------------------------------------------------------
# shared geometry helpers
# ---------------------------------------------------------------------------

def _tri_area2(vertices, tri: Triangle) -> int:
    a, b, c = (vertices[i] for i in tri)
    return abs(cross(b - a, c - a))


def _edge_on_boundary(poly: LatticePolygon, a: Pt, b: Pt) -> bool:
    mid_ok = poly.classify(a) == "boundary" and poly.classify(b) == "boundary"
    if not mid_ok:
        return False
    # Both endpoints on the boundary is not enough (a chord); require the
    # segment to lie on a single polygon edge.
    for u, v in poly.edges():
        if cross(v - u, a - u) == 0 and cross(v - u, b - u) == 0:
            return True
    return False


def _triangles_overlap(vertices, s: Triangle, t: Triangle) -> bool:
    """Exact open-interior intersection test via separating axes."""
    ps = [vertices[i] for i in s]
    pt = [vertices[i] for i in t]

    def separated(tri_a, tri_b):
        n = len(tri_a)
        for i in range(n):
            edge = tri_a[(i + 1) % n] - tri_a[i]
            if cross(edge, tri_a[(i + 2) % n] - tri_a[i]) < 0:
                edge = -edge  # orient so the triangle lies on the left
            if all(cross(edge, q - tri_a[i]) <= 0 for q in tri_b):
                return True
        return False

    return not (separated(ps, pt) or separated(pt, ps))


def edge_incidence(triangles) -> dict[frozenset, list[int]]:
    inc: dict[frozenset, list[int]] = {}
    for ti, tri in enumerate(triangles):
        a, b, c = tri
        for e in (frozenset((a, b)), frozenset((b, c)), frozenset((a, c))):
            inc.setdefault(e, []).append(ti)
    return inc


def _barycentric(p: Pt, q: Pt, u: Pt, v: Pt) -> tuple[Fraction, Fraction, Fraction]:
    """Affine coordinates of v with respect to the triangle (p, q, u)."""
    den = cross(q - p, u - p)
    lp = Fraction(cross(q - v, u - v), den)
    lq = Fraction(cross(u - v, p - v), den)
    lu = Fraction(cross(p - v, q - v), den)
    assert lp + lq + lu == 1
    return lp, lq, lu


def interior_folds(vertices, triangles) -> list[dict[int, Fraction]]:
    """One linear form per interior edge; the lift is strictly convex across
    that edge iff the form applied to the heights is > 0.

    For the edge (p, q) shared by triangles (p, q, u) and (p, q, v) the form
    is h_v - lp*h_p - lq*h_q - lu*h_u where (lp, lq, lu) are the affine
    coordinates of v in (p, q, u).
    """
    folds = []
    for e, tris in edge_incidence(triangles).items():
        if len(tris) != 2:
            continue
        i, j = sorted(e)
        far = []
        for ti in tris:
            (far_v,) = [k for k in triangles[ti] if k not in (i, j)]
            far.append(far_v)
        u, v = far
        lp, lq, lu = _barycentric(vertices[i], vertices[j], vertices[u], vertices[v])
        form = {v: Fraction(1)}
        for idx, lam in ((i, lp), (j, lq), (u, lu)):
            form[idx] = form.get(idx, Fraction(0)) - lam
        folds.append(form)
    return folds


def lifting_certifies(tri: Triangulation, heights) -> bool:
    """Exact check that ``heights`` makes the lift strictly convex across
    every interior edge.  Works on cross-multiplied integers (no rational
    reduction) when all heights are integral, which they are for the
    closed-form certificates."""
    hs = list(heights)
    if all(isinstance(h, Fraction) and h.denominator == 1 for h in hs):
        hs = [h.numerator for h in hs]
    verts = tri.vertices
    for e, tris in edge_incidence(tri.triangles).items():
        if len(tris) != 2:
            continue
        i, j = sorted(e)
        (u,) = (k for k in tri.triangles[tris[0]] if k != i and k != j)
        (v,) = (k for k in tri.triangles[tris[1]] if k != i and k != j)
        p, q, pu, pv = verts[i], verts[j], verts[u], verts[v]
        den = cross(q - p, pu - p)
        num = (cross(q - pv, pu - pv) * hs[i] + cross(pu - pv, p - pv) * hs[j]
               + cross(p - pv, q - pv) * hs[u])
        lhs = den * hs[v] - num
        if lhs == 0 or (lhs > 0) != (den > 0):
            return False
    return True


# ---------------------------------------------------------------------------
# regularity: exact Fourier-Motzkin feasibility
# ---------------------------------------------------------------------------

def _fm_feasible(rows: list[tuple[dict[int, int], int]]) -> Optional[dict[int, Fraction]]:
    """Find x with sum(a_i x_i) >= b for every row, or None.

    Rows hold integer coefficients.  Variables are eliminated one at a time
    (cheapest pos*neg product first); a witness is recovered by back
    substitution.  Blowup is controlled by gcd normalization and row dedup;
    fine at the scale of desk triangulations.
    """

    def normalize(coeffs: dict[int, int], rhs: int):
        coeffs = {k: v for k, v in coeffs.items() if v != 0}
        g = abs(rhs)
        for v in coeffs.values():
            g = math.gcd(g, abs(v))
        if g > 1:
            coeffs = {k: v // g for k, v in coeffs.items()}
            rhs //= g
        return coeffs, rhs

    work: dict[tuple, int] = {}

    def add_row(coeffs: dict[int, int], rhs: int) -> bool:
        coeffs, rhs = normalize(coeffs, rhs)
        if not coeffs:
            return rhs <= 0
        key = tuple(sorted(coeffs.items()))
        if key not in work or work[key] < rhs:
            work[key] = rhs
        return True

    for coeffs, rhs in rows:
        if not add_row(dict(coeffs), rhs):
            return None

    eliminated: list[tuple[int, list[tuple[dict[int, int], int]]]] = []
    while True:
        variables = {}
        for key, _rhs in work.items():
            for var, coef in key:
                pos, neg = variables.get(var, (0, 0))
                variables[var] = (pos + (coef > 0), neg + (coef < 0))
        if not variables:
            break
        var = min(variables, key=lambda v: (variables[v][0] * variables[v][1], v))
        pos_rows, neg_rows, rest = [], [], []
        for key, rhs in work.items():
            coeffs = dict(key)
            coef = coeffs.get(var, 0)
            if coef > 0:
                pos_rows.append((coeffs, rhs))
            elif coef < 0:
                neg_rows.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        eliminated.append((var, pos_rows + neg_rows))
        work = {}
        ok = all(add_row(c, r) for c, r in rest)
        if ok:
            for pc, pr in pos_rows:
                for nc, nr in neg_rows:
                    a, b = pc[var], -nc[var]
                    combo = {k: v * b for k, v in pc.items()}
                    for k, v in nc.items():
                        combo[k] = combo.get(k, 0) + v * a
                    if not add_row(combo, pr * b + nr * a):
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            return None

    assign: dict[int, Fraction] = {}
    for var, var_rows in reversed(eliminated):
        lo, hi = None, None
        for coeffs, rhs in var_rows:
            rest = sum(Fraction(v) * assign[k] for k, v in coeffs.items() if k != var)
            bound = Fraction(rhs - rest, coeffs[var])
            if coeffs[var] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            assert lo <= hi
            assign[var] = (lo + hi) / 2
        elif lo is not None:
            assign[var] = lo + 1
        elif hi is not None:
            assign[var] = hi - 1
        else:
            assign[var] = Fraction(0)
    return assign


def find_lifting(vertices, triangles) -> Optional[list[Fraction]]:
    """Solve for strictly convex heights from scratch (no certificate reuse).

    The strict homogeneous system is feasible iff the same system with
    right-hand side 1 is (scale any rational solution); heights are pinned
    to 0 on the first triangle since the system is invariant under adding
    affine functions.
    """
    folds = interior_folds(vertices, triangles)
    if not folds:
        return [Fraction(0)] * len(vertices)
    pinned = set(triangles[0])
    rows = []
    for form in folds:
        den = 1
        for lam in form.values():
            den = den * lam.denominator // math.gcd(den, lam.denominator)
        coeffs = {idx: int(lam * den) for idx, lam in form.items() if idx not in pinned}
        rows.append((coeffs, den))
    sol = _fm_feasible(rows)
    if sol is None:
        return None
    heights = [sol.get(i, Fraction(0)) for i in range(len(vertices))]
    for i in pinned:
        heights[i] = Fraction(0)
    return heights


def is_regular(tri: Triangulation) -> Optional[tuple[Fraction, ...]]:
    """Decide regularity: return witness heights, or None when no strictly
    convex lift exists.

    An attached certificate is verified exactly and reused when valid;
    otherwise the rational feasibility solver runs from scratch.
    """
    if tri.heights is not None and lifting_certifies(tri, tri.heights):
        return tri.heights
    sol = find_lifting(tri.vertices, tri.triangles)
    if sol is None:
        return None
    heights = tuple(sol)
    assert lifting_certifies(tri, heights)
    return heights


# ---------------------------------------------------------------------------
# incremental construction
# ---------------------------------------------------------------------------

def _boundary_cycle(poly: LatticePolygon) -> list[Pt]:
    """Boundary lattice points in counterclockwise cyclic order."""
    out = []
    for a, b in poly.edges():
        step = primitive(b - a)
        n = (b - a).x // step.x if step.x else (b - a).y // step.y
        out.extend(a + step.scaled(j) for j in range(n))
    return out


def _plane_value(vertices, heights, tri: Triangle, p: Pt) -> Fraction:
    a, b, c = tri
    la, lb, lc = _barycentric(vertices[a], vertices[b], vertices[c], p)
    return la * heights[a] + lb * heights[b] + lc * heights[c]


def _locate(vertices, triangles, p: Pt):
    """(triangle, edge or None) for the triangle whose closure holds p
    (strictly inside, or on the named edge)."""
    for tri in triangles:
        a, b, c = tri
        va, vb, vc = vertices[a], vertices[b], vertices[c]
        if cross(vb - va, vc - va) < 0:
            b, c = c, b
            vb, vc = vc, vb
        c1 = cross(vb - va, p - va)
        c2 = cross(vc - vb, p - vb)
        c3 = cross(va - vc, p - vc)
        if c1 > 0 and c2 > 0 and c3 > 0:
            return tri, None
        if c1 == 0 and c2 > 0 and c3 > 0:
            return tri, frozenset((a, b))
        if c2 == 0 and c1 > 0 and c3 > 0:
            return tri, frozenset((b, c))
        if c3 == 0 and c1 > 0 and c2 > 0:
            return tri, frozenset((a, c))
    return None, None


def _insert_vertex(vertices: list[Pt], triangles: list[Triangle],
                   heights: list[Fraction], p: Pt,
                   location: tuple[Triangle, frozenset | None]) -> list[Triangle]:
    """Insert interior point p at the given location, retriangulating locally
    and extending the certificate; returns the replaced triangles.

    The new height is the current lift value at p minus a dent eps chosen so
    that every fold of the new triangulation stays strictly convex; folds are
    linear in eps, so the bound is read off exactly.  Folds not involving the
    new vertex keep both their planes, so only the local ones are checked.
    """
    tri, edge = location
    base = _plane_value(vertices, heights, tri, p)
    pi = len(vertices)
    new_triangles = []
    if edge is None:
        a, b, c = tri
        replaced = [tri]
        new_triangles = [tuple(sorted((pi, a, b))), tuple(sorted((pi, b, c))),
                         tuple(sorted((pi, a, c)))]
    else:
        i, j = sorted(edge)
        replaced = [t for t in triangles if i in t and j in t]
        assert len(replaced) == 2, "insertion point must lie on an interior edge"
        for t in replaced:
            (far,) = [v for v in t if v not in (i, j)]
            new_triangles.append(tuple(sorted((pi, i, far))))
            new_triangles.append(tuple(sorted((pi, j, far))))

    candidate = [t for t in triangles if t not in replaced] + new_triangles
    vertices.append(p)

    # Folds are linear in the dent: value(eps) = A + B*eps with A >= 0 at
    # eps = 0 (the undented lift).  Strictness needs B > 0 when A = 0, and
    # eps below A/-B when B < 0.
    upper = Fraction(1)
    h0 = heights + [base]
    h1 = heights + [base - 1]
    for e, tris in edge_incidence(candidate).items():
        if len(tris) != 2:
            continue
        i, j = sorted(e)
        (u,) = (k for k in candidate[tris[0]] if k != i and k != j)
        (v,) = (k for k in candidate[tris[1]] if k != i and k != j)
        if pi not in (i, j, u, v):
            continue
        lp, lq, lu = _barycentric(vertices[i], vertices[j], vertices[u], vertices[v])
        form = [(v, Fraction(1)), (i, -lp), (j, -lq), (u, -lu)]
        value0 = sum(lam * h0[idx] for idx, lam in form)
        slope = sum(lam * h1[idx] for idx, lam in form) - value0
        assert value0 > 0 or slope > 0, "insertion broke convexity"
        if slope < 0:
            upper = min(upper, value0 / -slope)
    eps = upper / 2
    triangles[:] = candidate
    heights.append(base - eps)
    return replaced


def incremental_triangulation(poly: LatticePolygon, lat: Sublattice, g: int) -> Triangulation:
    """Convex lattice triangulation with exactly g interior vertices whose
    vertex set generates ``lat``.

    Starts from the fan over the lexicographically smallest interior lattice
    member m that completes the boundary points to a generating set, then
    repeatedly inserts the smallest remaining interior member, preferring
    points strictly inside a triangle over points on a shared edge.
    """
    boundary = _boundary_cycle(poly)
    for p in boundary:
        if not lat.contains(p):
            raise ValueError(f"boundary point {p} escapes the lattice; "
                             "the census only emits boundary-compatible lattices")
    interior = [p for p in lattice_points(poly, "interior") if lat.contains(p)]
    if not 1 <= g <= len(interior):
        raise GenusOutOfRange(f"need 1 <= g <= {len(interior)}, got {g}")

    m = None
    for p in interior:
        if hnf_sublattice(boundary + [p]) == lat:
            m = p
            break
    if m is None:
        raise NoGeneratingPoint("no interior member completes the boundary to a generating set")

    vertices = list(boundary) + [m]
    mi = len(boundary)
    triangles: list[Triangle] = []
    for i in range(len(boundary)):
        j = (i + 1) % len(boundary)
        triangles.append(tuple(sorted((mi, i, j))))
    heights = find_lifting(vertices, triangles)
    assert heights is not None, "a fan over one interior point is always regular"

    # Each unused interior member keeps its containing triangle (or interior
    # edge); insertions only relocate the points inside replaced triangles.
    locations = {}
    for p in interior:
        if p != m:
            locations[p] = _locate(vertices, triangles, p)
            assert locations[p][0] is not None
    for _ in range(g - 1):
        in_triangle = [p for p, (_, edge) in locations.items() if edge is None]
        p = min(in_triangle) if in_triangle else min(locations)
        replaced = set(_insert_vertex(vertices, triangles, heights, p, locations.pop(p)))
        # new triangles tile the replaced region exactly, so points whose
        # stored triangle survived need no relocation
        fresh = [t for t in triangles if len(vertices) - 1 in t]
        for q, (tri, _edge) in locations.items():
            if tri in replaced:
                locations[q] = _locate(vertices, fresh, q)
                assert locations[q][0] is not None

    return Triangulation(
        polygon=poly,
        lattice=lat,
        vertices=tuple(vertices),
        triangles=tuple(sorted(triangles)),
        heights=tuple(heights),
    )


# ---------------------------------------------------------------------------
# kite axis construction
# ---------------------------------------------------------------------------

def kite_triangulation(spec: KiteSpec, g: int, r: int, kappa: int) -> Triangulation:
    """Axis triangulation realizing the admissible pair (r, kappa), r odd.

    In the shifted frame where the symmetry axis spans [-k, k'], the interior
    vertices sit at k'-2r, ..., k'-2*kappa*r (kappa steps of two lattice
    units of the index-r sublattice) followed by g-kappa further steps of one
    unit; every axis interval is joined to both apexes (+-1, 0).  The bottom
    interval has odd sublattice length delta - kappa + 1.  Stored coordinates
    are unshifted; ``shift`` records the frame.  Heights y^2 on the axis and
    k*k' + 1 on the apexes certify convexity.
    """
    if g < 1:
        raise GenusOutOfRange("the axis construction needs genus >= 1")
    if r % 2 == 0:
        raise EvenIndexUnsupported(
            "even index has no axis construction; use incremental_triangulation "
            "on the index-r sublattice")
    if (r, kappa) not in admissible_pairs(spec, g):
        raise NotAdmissible(f"(r={r}, kappa={kappa}) is not admissible for genus {g}")

    k, kp = spec.k, spec.k_prime
    ys = [kp - 2 * r * j for j in range(1, kappa + 1)]
    top = kp - 2 * kappa * r
    ys += [top - r * j for j in range(1, g - kappa + 1)]
    assert len(ys) == g and all(-k < y < kp for y in ys)
    breaks = [kp] + ys + [-k]  # descending along the shifted axis

    dm = kite_delta(spec, r, g)
    assert (breaks[-2] - breaks[-1]) // r == dm - kappa + 1
    assert (dm - kappa + 1) % 2 == 1, "bottom interval length must be odd"

    shift = Pt(0, -k)
    axis = [Pt(0, y + k) for y in reversed(breaks)]  # unshifted, ascending
    apex_p, apex_m = Pt(1, k), Pt(-1, k)
    vertices = [apex_m, apex_p] + axis
    triangles = []
    for i in range(len(axis) - 1):
        lo, hi = 2 + i, 2 + i + 1
        triangles.append(tuple(sorted((lo, hi, 1))))
        triangles.append(tuple(sorted((lo, hi, 0))))

    apex_h = Fraction(k * kp + 1)
    heights = []
    for v in vertices:
        if v in (apex_p, apex_m):
            heights.append(apex_h)
        else:
            heights.append(Fraction((v.y - k) ** 2))

    lat = hnf_sublattice([Pt(1, k), Pt(0, r)])
    tri = Triangulation(
        polygon=spec.polygon,
        lattice=lat,
        vertices=tuple(vertices),
        triangles=tuple(sorted(triangles)),
        heights=tuple(heights),
        shift=shift,
    )
    assert lifting_certifies(tri, tri.heights)
    assert hnf_sublattice(tri.vertices) == lat, "vertices must generate the sublattice"
    return tri
