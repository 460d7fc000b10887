"""Dual tropical curves: trivalence, balancing, and the quarter-turn duality
between slope and vertex lattices."""

from pathlib import Path

from severi_census import (
    curve_lattices,
    dual_tropical_curve,
    kite,
    kite_triangulation,
    rotate_dual,
)
from severi_census.render import triangulation_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

tri = kite_triangulation(kite(1, 3), g=1, r=1, kappa=0)
curve = dual_tropical_curve(tri)

print("dual curve of the kite(1,3) axis triangulation:")
print("  vertices:", [(str(x), str(y)) for x, y in curve.positions])
print("  edges   :", [(e.tail, e.head, tuple(e.slope), e.weight) for e in curve.edges])
print("  legs    :", [(l.vertex, tuple(l.slope), l.weight) for l in curve.legs])
print("  genus   :", curve.genus)
print("  trivalent:", curve.is_trivalent(), " balanced:", curve.is_balanced())

n_gamma, m_gamma = curve_lattices(curve, tri)
print("  slope lattice ", n_gamma.basis, " vertex lattice ", m_gamma.basis)
assert rotate_dual(n_gamma) == m_gamma

path = OUT / "kite13_dual.svg"
path.write_text(triangulation_svg(tri, curve))
print("wrote", path)

# a higher-genus example on a proper sublattice
tri5 = kite_triangulation(kite(3, 9), g=2, r=3, kappa=1)
curve5 = dual_tropical_curve(tri5)
_, m5 = curve_lattices(curve5, tri5)
print("\nkite(3,9), (r,kappa)=(3,1):  genus", curve5.genus,
      " vertex lattice rows", m5.basis)
(OUT / "kite39_dual.svg").write_text(triangulation_svg(tri5, curve5))
