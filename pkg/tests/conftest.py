"""Shared corpus generators and independent oracles.

Oracles here deliberately avoid the library code paths they check: the
intermediate-lattice oracle scans HNF triples directly, the duality oracle
evaluates the pairing congruence over a box, and Pick's theorem is evaluated
from the shoelace formula.
"""

from __future__ import annotations

import random

from severi_census import (
    LatticePolygon,
    LaurentPoly,
    Pt,
    Sublattice,
    boundary_sublattice,
    lattice_points,
    normalize_polygon,
)


def strict_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Monotone-chain convex hull keeping only strict corners."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return []

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 3 else []


def random_convex_polygon(rng: random.Random, bound: int, max_points: int = 10) -> LatticePolygon:
    while True:
        n = rng.randint(3, max_points)
        pts = [(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(n)]
        hull = strict_hull(pts)
        if hull:
            return normalize_polygon(hull)


def all_sublattices(max_index: int) -> list[Sublattice]:
    out = []
    for d1 in range(1, max_index + 1):
        for d2 in range(1, max_index // d1 + 1):
            out.extend(Sublattice(d1, c, d2) for c in range(d2))
    return out


def naive_intermediate_lattices(poly: LatticePolygon) -> set[Sublattice]:
    """Brute-force oracle: scan every HNF triple with index up to the
    boundary-lattice index, keep those containing the boundary lattice and
    all boundary lattice points."""
    lb = boundary_sublattice(poly)
    bpts = lattice_points(poly, "boundary")
    keep = set()
    for cand in all_sublattices(lb.index):
        if all(cand.contains(v) for v in lb.basis_vectors) and all(
            cand.contains(p) for p in bpts
        ):
            keep.add(cand)
    return keep


def pick_interior(poly: LatticePolygon) -> int:
    """Interior count from Pick's theorem: I = A - B/2 + 1."""
    b = len(lattice_points(poly, "boundary"))
    assert (poly.area2 - b) % 2 == 0
    return (poly.area2 - b) // 2 + 1


def brute_dual_members(lat: Sublattice, box: int) -> set[Pt]:
    """Members of {m : <n, m> in rZ for all n in lat} inside a box, evaluated
    from the defining congruence on the basis vectors."""
    r = lat.index
    n1, n2 = lat.basis_vectors
    out = set()
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            m = Pt(x, y)
            if (n1.x * x + n1.y * y) % r == 0 and (n2.x * x + n2.y * y) % r == 0:
                out.add(m)
    return out


def random_laurent(rng: random.Random, k: int, k_prime: int,
                   odd_only: bool = False) -> LaurentPoly:
    """Random coefficients, standard complex normal, with a tight window.
    ``odd_only`` keeps just odd exponents (k even is then impossible for a
    tight window), which makes critical values come in opposite pairs."""
    size = k + k_prime + 1

    def coeff():
        return complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))

    while True:
        coeffs = [coeff() for _ in range(size)]
        if odd_only:
            assert k % 2 == (0 if k == 0 else 1) and k_prime % 2 == 1
            coeffs = [c if (i - k) % 2 == 1 else 0j for i, c in enumerate(coeffs)]
        if abs(coeffs[-1]) < 0.1 or (k >= 1 and abs(coeffs[0]) < 0.1):
            continue
        return LaurentPoly(k=k, k_prime=k_prime, coeffs=tuple(coeffs))


def kite_shapes(max_height: int, min_k: int = 0):
    """All (k, k') with k' >= max(k, 1) and k + k' <= max_height."""
    for k in range(min_k, max_height // 2 + 1):
        for kp in range(max(k, 1), max_height - k + 1):
            yield k, kp
