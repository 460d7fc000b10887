import random

import pytest

from severi_census import (
    Pt,
    Sublattice,
    ZZ2,
    admissible_pairs,
    delta_m,
    divisor_count,
    divisors,
    general_lower_bound,
    genus1_closed_form,
    hnf_sublattice,
    intermediate_lattices,
    kite,
    kite_count,
    kite_sublattices,
    normalize_polygon,
    severi_dimension,
)
from severi_census.errors import GenusOutOfRange

from conftest import kite_shapes, naive_intermediate_lattices, random_convex_polygon

REFERENCE_TRIANGLE = [(0, 0), (4, 1), (0, 3)]


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisor_count(1) == 1
    assert divisor_count(2) == 2
    assert divisor_count(4) == 3


# -- intermediate lattices -----------------------------------------------------

def test_intermediate_lattices_reference_triangle():
    poly = normalize_polygon(REFERENCE_TRIANGLE)
    lats = intermediate_lattices(poly)
    assert lats == [ZZ2, Sublattice(2, 0, 1)]


def test_intermediate_lattices_unit_square():
    poly = normalize_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert intermediate_lattices(poly) == [ZZ2]


def test_intermediate_lattices_kite24():
    lats = intermediate_lattices(kite(2, 4).polygon)
    assert set(lats) == {ZZ2, hnf_sublattice([(1, 2), (0, 2)])}


def test_intermediate_lattices_against_hnf_scan():
    rng = random.Random(99)
    for _ in range(40):
        poly = random_convex_polygon(rng, 8)
        assert set(intermediate_lattices(poly)) == naive_intermediate_lattices(poly)


def test_kite_sublattices_match_intermediate_lattices():
    for k, kp in kite_shapes(20):
        spec = kite(k, kp)
        from_divisors = {lat for _, lat in kite_sublattices(spec)}
        assert from_divisors == set(intermediate_lattices(spec.polygon))


# -- general lower bound --------------------------------------------------------

def test_general_lower_bound_reference_triangle():
    poly = normalize_polygon(REFERENCE_TRIANGLE)
    assert general_lower_bound(poly, 1).total == 2
    assert general_lower_bound(poly, 2).total == 1


def test_general_lower_bound_kite24_g3():
    assert general_lower_bound(kite(2, 4).polygon, 3).total == 1


def test_general_lower_bound_entries_have_unit_multiplicity():
    census = general_lower_bound(normalize_polygon(REFERENCE_TRIANGLE), 1)
    assert all(e.multiplicity == 1 and e.kappas == () for e in census.entries)
    assert census.total == len(census.entries)
    assert [e.index_r for e in census.entries] == sorted(e.index_r for e in census.entries)


def test_general_lower_bound_genus_errors():
    poly = normalize_polygon(REFERENCE_TRIANGLE)
    with pytest.raises(GenusOutOfRange):
        general_lower_bound(poly, 5)  # only 4 interior points
    with pytest.raises(GenusOutOfRange):
        general_lower_bound(poly, -1)


def test_genus_zero_reports_irreducible():
    census = general_lower_bound(normalize_polygon(REFERENCE_TRIANGLE), 0)
    assert census.total == 1 and census.entries == () and census.note


# -- kite sublattices ------------------------------------------------------------

def test_kite_sublattices_examples():
    assert [(r, lat) for r, lat in kite_sublattices(kite(1, 3))] == [
        (1, ZZ2),
        (2, Sublattice(1, 1, 2)),
    ]
    assert [r for r, _ in kite_sublattices(kite(0, 4))] == [1, 2, 4]
    assert [r for r, _ in kite_sublattices(kite(1, 2))] == [1]


def test_kite_sublattices_contain_vertices_and_axis_step():
    for k, kp in kite_shapes(16):
        spec = kite(k, kp)
        for r, lat in kite_sublattices(spec):
            assert lat.index == r
            assert lat.contains(Pt(0, 2 * k))
            for v in spec.polygon.vertices:
                assert lat.contains(v)


# -- admissible pairs -------------------------------------------------------------

def test_admissible_pairs_examples():
    assert admissible_pairs(kite(1, 3), 1) == [(1, 0), (2, 2)]
    assert admissible_pairs(kite(2, 4), 3) == [(1, 0), (1, 2)]
    assert admissible_pairs(kite(1, 1), 1) == [(1, 0)]


def test_admissible_pairs_parity_and_range():
    for k, kp in kite_shapes(14):
        spec = kite(k, kp)
        for g in range(0, spec.interior_point_count + 1):
            for r, kappa in admissible_pairs(spec, g):
                dm = spec.height // r - 1 - g
                assert dm >= 0
                if r % 2 == 0:
                    assert kappa == g + 1
                else:
                    assert 0 <= kappa <= min(dm, g)
                    assert (kappa - dm) % 2 == 0


def test_admissible_pairs_genus_out_of_range():
    with pytest.raises(GenusOutOfRange):
        admissible_pairs(kite(1, 3), 4)


# -- kite count --------------------------------------------------------------------

def test_kite_count_examples():
    assert kite_count(kite(0, 4), 1).total == 2
    assert kite_count(kite(1, 1), 1).total == 1
    assert kite_count(kite(2, 4), 3).total == 2


def test_kite_count_equals_closed_form_at_genus_one():
    for k, kp in kite_shapes(60):
        spec = kite(k, kp)
        if spec.interior_point_count < 1:
            continue
        assert kite_count(spec, 1).total == genus1_closed_form(spec), (k, kp)


def brute_force_kite_count(spec, g):
    """Multiplicity count straight from the definition, using polygon-side
    enumeration (intermediate_lattices + delta_m) instead of the divisor
    shortcut and the closed-form deficiency."""
    total = 0
    for lat in intermediate_lattices(spec.polygon):
        dm = delta_m(spec.polygon, lat, g)
        if dm < 0:
            continue
        if lat.index % 2 == 0:
            total += 1
        else:
            total += sum(1 for kappa in range(0, min(dm, g) + 1)
                         if kappa % 2 == dm % 2)
    return total


def test_kite_count_matches_polygon_side_enumeration():
    for k, kp in kite_shapes(16):
        spec = kite(k, kp)
        for g in range(1, spec.interior_point_count + 1):
            assert kite_count(spec, g).total == brute_force_kite_count(spec, g), (k, kp, g)


def test_two_node_kites_have_exactly_two_entries():
    for k, kp in kite_shapes(24):
        spec = kite(k, kp)
        if spec.height < 5:
            continue
        assert kite_count(spec, spec.height - 3).total == 2


def test_kite_count_dominates_general_lower_bound():
    for k, kp in kite_shapes(14):
        spec = kite(k, kp)
        for g in range(1, spec.interior_point_count + 1):
            assert kite_count(spec, g).total >= general_lower_bound(spec.polygon, g).total


def test_kite_count_even_entries_respect_signature_bound():
    for k, kp in kite_shapes(16):
        spec = kite(k, kp)
        for g in range(1, spec.interior_point_count + 1):
            census = kite_count(spec, g)
            for e in census.entries:
                if e.index_r % 2 == 0:
                    assert e.kappas == (g + 1,)
                    assert delta_m(spec.polygon, ZZ2, g) >= g + 1


def test_kite_count_entry_multiplicities():
    census = kite_count(kite(2, 4), 3)
    (entry,) = census.entries
    assert entry.index_r == 1 and entry.kappas == (0, 2) and entry.multiplicity == 2


def test_kite_count_genus_zero_and_range():
    assert kite_count(kite(1, 3), 0).total == 1
    with pytest.raises(GenusOutOfRange):
        kite_count(kite(1, 3), 4)


# -- genus-one closed form ------------------------------------------------------------

def test_genus1_closed_form_examples():
    assert genus1_closed_form(kite(1, 3)) == 2
    assert genus1_closed_form(kite(1, 1)) == 1   # k = k' subtracts one
    assert genus1_closed_form(kite(0, 4)) == 2   # k = 0 subtracts one


def test_severi_dimension():
    assert severi_dimension(normalize_polygon(REFERENCE_TRIANGLE), 2) == 7  # 6 + 2 - 1
    assert severi_dimension(kite(1, 3).polygon, 1) == 4


def test_severi_dimension_equals_system_dimension_minus_nodes():
    # |boundary|+g-1 == (|all lattice points|-1) - (|interior|-g)
    from severi_census import lattice_points

    rng = random.Random(17)
    for _ in range(20):
        poly = random_convex_polygon(rng, 8)
        interior = len(lattice_points(poly, "interior"))
        total = len(lattice_points(poly, "all"))
        for g in range(0, interior + 1):
            assert severi_dimension(poly, g) == (total - 1) - delta_m(poly, ZZ2, g)


def test_census_json_shape():
    census = kite_count(kite(0, 4), 1)
    doc = census.to_json_dict()
    assert doc["total"] == 2
    assert [e["index"] for e in doc["entries"]] == [1, 2]
    assert all(set(e) == {"basis", "index", "delta_M", "kappas", "multiplicity"}
               for e in doc["entries"])
