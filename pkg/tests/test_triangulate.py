from fractions import Fraction

import pytest

from severi_census import (
    Pt,
    Triangulation,
    ZZ2,
    admissible_pairs,
    find_lifting,
    hnf_sublattice,
    incremental_triangulation,
    is_regular,
    kite,
    kite_sublattices,
    kite_triangulation,
    lifting_certifies,
    normalize_polygon,
    triangulation_from_json,
)
from severi_census.errors import (
    EvenIndexUnsupported,
    GenusOutOfRange,
    NotAdmissible,
)

from conftest import kite_shapes


def axis_vertices(tri):
    return sorted(v for v in tri.vertices if v.x == 0)


# -- axis construction ------------------------------------------------------------

def test_kite03_g1_r1_kappa1():
    tri = kite_triangulation(kite(0, 3), 1, 1, 1)
    tri.validate()
    assert [tri.vertices[i] for i in tri.interior_indices] == [Pt(0, 1)]
    # axis intervals [0,1] and [1,3]: bottom has unit length
    assert axis_vertices(tri) == [Pt(0, 0), Pt(0, 1), Pt(0, 3)]
    assert len(tri.triangles) == 4
    assert tri.shift == Pt(0, 0)


def test_kite13_g1_r1_kappa0():
    tri = kite_triangulation(kite(1, 3), 1, 1, 0)
    tri.validate()
    # shifted interior vertex (0, 2) is (0, 3) in polygon coordinates
    assert [tri.vertices[i] for i in tri.interior_indices] == [Pt(0, 3)]
    assert len(tri.triangles) == 4
    assert tri.shift == Pt(0, -1)
    # bottom interval spans 3 lattice units
    assert axis_vertices(tri)[:2] == [Pt(0, 0), Pt(0, 3)]


def test_kite13_wrong_parity_is_not_admissible():
    with pytest.raises(NotAdmissible):
        kite_triangulation(kite(1, 3), 1, 1, 1)


def test_even_index_routes_elsewhere():
    with pytest.raises(EvenIndexUnsupported):
        kite_triangulation(kite(1, 3), 1, 2, 2)


def test_axis_construction_genus_zero_rejected():
    with pytest.raises(GenusOutOfRange):
        kite_triangulation(kite(1, 3), 0, 1, 0)


def test_axis_interval_lengths_follow_kappa():
    # kappa top intervals of sublattice length 2, g - kappa of length 1,
    # odd bottom interval
    spec = kite(2, 6)
    g, r, kappa = 3, 1, 2
    assert (r, kappa) in admissible_pairs(spec, g)
    tri = kite_triangulation(spec, g, r, kappa)
    ys = [v.y for v in axis_vertices(tri)]
    gaps = [b - a for a, b in zip(ys, ys[1:])]
    dm = spec.height // r - 1 - g
    bottom = (dm - kappa + 1) * r
    assert bottom % 2 == 1
    assert gaps == [bottom] + [r] * (g - kappa) + [2 * r] * kappa


def test_axis_construction_all_small_kites():
    for k, kp in kite_shapes(12):
        spec = kite(k, kp)
        for g in range(1, spec.interior_point_count + 1):
            for r, kappa in admissible_pairs(spec, g):
                if r % 2 == 0:
                    continue
                tri = kite_triangulation(spec, g, r, kappa)
                assert tri.genus == g
                assert lifting_certifies(tri, tri.heights)
                assert sum(1 for _ in tri.triangles) == 2 * (g + 1)


# -- regularity ---------------------------------------------------------------------

def test_fan_with_flat_boundary_heights_certifies():
    # fan over one interior point, boundary heights 0, center -1
    spec = kite(1, 3)
    tri = incremental_triangulation(spec.polygon, ZZ2, 1)
    fan_heights = [Fraction(0)] * len(tri.vertices)
    fan_heights[list(tri.vertices).index(Pt(0, 1))] = Fraction(-1)
    assert lifting_certifies(tri, fan_heights)


def test_is_regular_prefers_valid_certificate():
    tri = kite_triangulation(kite(1, 3), 1, 1, 0)
    assert is_regular(tri) == tri.heights


def test_solver_agrees_on_axis_constructions():
    for args in [(kite(0, 3), 1, 1, 1), (kite(1, 3), 2, 1, 1), (kite(2, 4), 3, 1, 2),
                 (kite(3, 9), 2, 3, 1)]:
        tri = kite_triangulation(*args)
        solved = find_lifting(tri.vertices, tri.triangles)
        assert solved is not None
        assert lifting_certifies(tri, solved)


def test_pinwheel_is_not_regular():
    outer = [Pt(0, 0), Pt(4, 0), Pt(0, 4)]
    inner = [Pt(1, 1), Pt(2, 1), Pt(1, 2)]
    verts = tuple(outer + inner)
    A, B, C, a, b, c = range(6)
    triangles = tuple(sorted(tuple(sorted(t)) for t in [
        (A, B, b), (A, b, a), (B, C, c), (B, c, b), (C, A, a), (C, a, c), (a, b, c),
    ]))
    tri = Triangulation(
        polygon=normalize_polygon([(0, 0), (4, 0), (0, 4)]),
        lattice=ZZ2,
        vertices=verts,
        triangles=triangles,
    )
    assert is_regular(tri) is None


def test_is_regular_solves_when_no_certificate_attached():
    base = kite_triangulation(kite(2, 4), 3, 1, 0)
    bare = Triangulation(polygon=base.polygon, lattice=base.lattice,
                         vertices=base.vertices, triangles=base.triangles)
    heights = is_regular(bare)
    assert heights is not None
    assert lifting_certifies(bare, heights)


# -- incremental construction ----------------------------------------------------------

def test_incremental_fan_on_kite13():
    tri = incremental_triangulation(kite(1, 3).polygon, ZZ2, 1)
    tri.validate()
    assert tri.genus == 1
    assert [tri.vertices[i] for i in tri.interior_indices] == [Pt(0, 1)]
    assert len(tri.triangles) == 4


def test_incremental_uses_every_interior_point():
    tri = incremental_triangulation(kite(1, 3).polygon, ZZ2, 3)
    tri.validate()
    assert tri.genus == 3
    assert {tri.vertices[i] for i in tri.interior_indices} == {Pt(0, 1), Pt(0, 2), Pt(0, 3)}
    assert lifting_certifies(tri, tri.heights)


def test_incremental_unit_triangle_rejected():
    with pytest.raises(GenusOutOfRange):
        incremental_triangulation(normalize_polygon([(0, 0), (1, 0), (0, 1)]), ZZ2, 1)


def test_incremental_triangle_interior_preferred():
    # the reference triangle has points both inside triangles and on edges
    poly = normalize_polygon([(0, 0), (4, 1), (0, 3)])
    for g in range(1, 5):
        tri = incremental_triangulation(poly, ZZ2, g)
        tri.validate()
        assert tri.genus == g
        assert lifting_certifies(tri, tri.heights)


def test_incremental_on_proper_sublattice():
    spec = kite(2, 4)
    lat = dict(kite_sublattices(spec))[2]
    for g in (1, 2):
        tri = incremental_triangulation(spec.polygon, lat, g)
        tri.validate()
        assert tri.genus == g
        assert hnf_sublattice(tri.vertices) == lat


def test_incremental_on_boundary_rich_polygon():
    # 24 boundary points: exercises the feasibility solve on a larger fan
    poly = normalize_polygon([(0, 0), (6, 0), (6, 6), (0, 6)])
    tri = incremental_triangulation(poly, ZZ2, 25)
    tri.validate()
    assert tri.genus == 25
    assert lifting_certifies(tri, tri.heights)


def test_incremental_vertices_generate_lattice():
    poly = normalize_polygon([(0, 0), (4, 1), (0, 3)])
    lat = hnf_sublattice([(2, 0), (0, 1)])
    tri = incremental_triangulation(poly, lat, 1)
    tri.validate()
    assert hnf_sublattice(tri.vertices) == lat
    assert [tri.vertices[i] for i in tri.interior_indices] == [Pt(2, 1)]


# -- serialization -----------------------------------------------------------------------

def test_triangulation_json_round_trip():
    tri = kite_triangulation(kite(1, 3), 2, 1, 1)
    doc = tri.to_json_dict()
    back = triangulation_from_json(doc)
    assert back == tri
