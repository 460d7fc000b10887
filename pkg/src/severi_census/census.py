"""Component censuses.

Enumerates the sublattices of Z^2 compatible with a polygon boundary,
filters them by interior-point count, and produces the multiplicity-weighted
counts that bound the number of irreducible components of the corresponding
Severi variety from below.  Kites (the narrow polygons of lattice.KiteSpec)
additionally carry a signature invariant kappa, whose admissible values give
the kite count; genus one has an independent closed form in terms of the
divisor-count function.

All arithmetic is exact.  Census entries are sorted canonically so JSON
output is byte-stable across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import GenusOutOfRange
from .lattice import (
    KiteSpec,
    LatticePolygon,
    Pt,
    Sublattice,
    ZZ2,
    boundary_sublattice,
    delta_m,
    hnf_sublattice,
    lattice_points,
)


def divisors(n: int) -> list[int]:
    """Positive divisors of n > 0, ascending."""
    if n <= 0:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_count(n: int) -> int:
    """sigma(n): the number of positive divisors."""
    return len(divisors(n))


def severi_dimension(poly: LatticePolygon, g: int) -> int:
    """Dimension of every component at genus g: |boundary points| + g - 1."""
    return len(lattice_points(poly, "boundary")) + g - 1


# ---------------------------------------------------------------------------
# census containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusEntry:
    lattice: Sublattice
    index_r: int
    delta_m: int
    multiplicity: int
    kappas: tuple[int, ...] = ()

    def __post_init__(self):
        assert self.index_r == self.lattice.index
        assert self.delta_m >= 0, "entries with negative deficiency are excluded"
        assert self.multiplicity >= 1

    def to_json_dict(self) -> dict:
        return {
            "basis": self.lattice.to_json(),
            "index": self.index_r,
            "delta_M": self.delta_m,
            "kappas": list(self.kappas),
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class Census:
    polygon: LatticePolygon
    genus: int
    entries: tuple[CensusEntry, ...]
    total: int
    note: Optional[str] = None

    def to_json_dict(self) -> dict:
        d = {
            "polygon": self.polygon.to_json_dict(),
            "genus": self.genus,
            "entries": [e.to_json_dict() for e in self.entries],
            "total": self.total,
        }
        if self.note is not None:
            d["note"] = self.note
        return d


_GENUS0_NOTE = "genus-zero loci are irreducible for every polarized toric surface"


def _genus0_census(poly: LatticePolygon) -> Census:
    # An explicit "irreducible, count 1" report rather than an error.
    return Census(polygon=poly, genus=0, entries=(), total=1, note=_GENUS0_NOTE)


def _sorted_entries(entries) -> tuple[CensusEntry, ...]:
    return tuple(sorted(entries, key=lambda e: (e.index_r, e.lattice)))


# ---------------------------------------------------------------------------
# sublattice enumeration
# ---------------------------------------------------------------------------

def intermediate_lattices(poly: LatticePolygon) -> list[Sublattice]:
    """All sublattices M with L_b <= M <= Z^2, where L_b is generated by the
    boundary lattice points.

    These are exactly the sublattices whose restriction to the boundary
    agrees with Z^2: boundary points lie in M by construction, and M <= Z^2
    gives the converse.  The finite quotient Z^2 / L_b is enumerated by brute
    force over its elements (it is cyclic here, since L_b contains a
    primitive edge vector, but the pair fallback keeps this correct for any
    quotient) and each subgroup is lifted back to a lattice.
    """
    lb = boundary_sublattice(poly)
    if lb.is_full:
        return [ZZ2]

    d1, c, d2 = lb.d1, lb.c, lb.d2

    def reduce(p: Pt) -> Pt:
        x = p.x % d1
        k = (p.x - x) // d1
        return Pt(x, (p.y - k * c) % d2)

    elements = [Pt(i, j) for i in range(d1) for j in range(d2)]

    def closure(gens) -> frozenset:
        seen = {Pt(0, 0)}
        queue = [Pt(0, 0)]
        while queue:
            a = queue.pop()
            for g in gens:
                b = reduce(a + g)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(seen)

    # First invariant factor of L_b; 1 means the quotient is cyclic and
    # single generators reach every subgroup.
    cyclic = math.gcd(math.gcd(d1, c), d2) == 1
    subgroups = {closure([g]) for g in elements}
    if not cyclic:
        subgroups.update(closure([g, h]) for g in elements for h in elements)

    seen_lattices = set()
    for sub in subgroups:
        lat = hnf_sublattice(list(lb.basis_vectors) + list(sub))
        seen_lattices.add(lat)
    return sorted(seen_lattices, key=lambda l: (l.index, l))


def general_lower_bound(poly: LatticePolygon, g: int) -> Census:
    """Census of boundary-compatible sublattices with at least g interior
    points; the total is the component lower bound for genus g >= 1."""
    if g == 0:
        return _genus0_census(poly)
    n_interior = len(lattice_points(poly, "interior"))
    if not 1 <= g <= n_interior:
        raise GenusOutOfRange(f"need 1 <= g <= {n_interior}, got {g}")
    entries = []
    for lat in intermediate_lattices(poly):
        dm = delta_m(poly, lat, g)
        if dm >= 0:
            entries.append(CensusEntry(lattice=lat, index_r=lat.index, delta_m=dm, multiplicity=1))
    entries = _sorted_entries(entries)
    return Census(polygon=poly, genus=g, entries=entries, total=len(entries))


# ---------------------------------------------------------------------------
# kites
# ---------------------------------------------------------------------------

def kite_sublattices(spec: KiteSpec) -> list[tuple[int, Sublattice]]:
    """The boundary-compatible sublattices of a kite, one per positive common
    divisor r of k + k' and 2k: the lattice spanned by (1, k) and (0, r).

    Each of them contains (0, 2k) and all four kite vertices.  The result
    agrees with intermediate_lattices(spec.polygon) as a set.
    """
    d = math.gcd(spec.height, 2 * spec.k)
    out = []
    for r in divisors(d):
        out.append((r, hnf_sublattice([Pt(1, spec.k), Pt(0, r)])))
    return out


def kite_delta(spec: KiteSpec, r: int, g: int) -> int:
    """Deficiency of the index-r kite sublattice: (k + k')/r - 1 - g."""
    assert spec.height % r == 0
    return spec.height // r - 1 - g


def admissible_pairs(spec: KiteSpec, g: int) -> list[tuple[int, int]]:
    """All (r, kappa) pairs admissible for the kite at genus g.

    Even index contributes the single signature g + 1.  Odd index contributes
    every kappa with 0 <= kappa <= min(delta, g) and kappa = delta (mod 2),
    where delta is the deficiency of the index-r sublattice.
    """
    if not 0 <= g <= spec.interior_point_count:
        raise GenusOutOfRange(f"need 0 <= g <= {spec.interior_point_count}, got {g}")
    pairs = []
    for r, _lat in kite_sublattices(spec):
        dm = kite_delta(spec, r, g)
        if dm < 0:
            continue
        if r % 2 == 0:
            pairs.append((r, g + 1))
        else:
            hi = min(dm, g)
            pairs.extend((r, kappa) for kappa in range(dm % 2, hi + 1, 2))
    return pairs


def kite_count(spec: KiteSpec, g: int) -> Census:
    """Multiplicity-weighted census for a kite at genus g >= 1.

    Odd-index entries are counted once per admissible kappa, even-index
    entries once.  The total dominates general_lower_bound on the same kite.
    """
    if g == 0:
        return _genus0_census(spec.polygon)
    if not 1 <= g <= spec.interior_point_count:
        raise GenusOutOfRange(f"need 1 <= g <= {spec.interior_point_count}, got {g}")
    by_r = {}
    for r, kappa in admissible_pairs(spec, g):
        by_r.setdefault(r, []).append(kappa)
    entries = []
    for r, lat in kite_sublattices(spec):
        if r not in by_r:
            continue
        kappas = tuple(sorted(by_r[r]))
        if r % 2 == 0:
            # Even index forces kappa = g + 1, which must respect the
            # signature bound relative to the full lattice.
            assert kappas == (g + 1,)
            assert kite_delta(spec, 1, g) >= g + 1, "signature bound violated"
            mult = 1
        else:
            mult = len(kappas)
        entries.append(
            CensusEntry(
                lattice=lat,
                index_r=r,
                delta_m=kite_delta(spec, r, g),
                multiplicity=mult,
                kappas=kappas,
            )
        )
    entries = _sorted_entries(entries)
    return Census(
        polygon=spec.polygon,
        genus=g,
        entries=entries,
        total=sum(e.multiplicity for e in entries),
    )


def genus1_closed_form(spec: KiteSpec) -> int:
    """Genus-one count in closed form: sigma(d) with d = gcd(k + k', 2k),
    minus one when k = 0 or k = k' (the divisor r = k + k' drops out)."""
    d = math.gcd(spec.height, 2 * spec.k)
    sigma = divisor_count(d)
    if spec.k == 0 or spec.k == spec.k_prime:
        return sigma - 1
    return sigma
