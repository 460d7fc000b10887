"""Convex lattice triangulations with exact lifting certificates.

Builds the axis triangulation for an admissible pair on a kite, an
incremental triangulation on a proper sublattice, checks the non-regular
pinwheel, and renders an SVG.
"""

from pathlib import Path

from severi_census import (
    Pt,
    Triangulation,
    ZZ2,
    admissible_pairs,
    incremental_triangulation,
    is_regular,
    kite,
    kite_sublattices,
    kite_triangulation,
    normalize_polygon,
)
from severi_census.render import triangulation_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# --- axis construction -------------------------------------------------------

spec = kite(2, 6)
g = 3
print(f"kite(2,6) at genus {g}: admissible pairs {admissible_pairs(spec, g)}")

tri = kite_triangulation(spec, g, r=1, kappa=2)
tri.validate()
print("axis triangulation, interior vertices:",
      [tuple(tri.vertices[i]) for i in tri.interior_indices])
print("lifting heights:", dict(zip(map(tuple, tri.vertices), tri.heights)))
assert is_regular(tri) == tri.heights  # the attached certificate is the witness

path = OUT / "kite26_axis.svg"
path.write_text(triangulation_svg(tri))
print("wrote", path)

# --- incremental construction on a proper sublattice --------------------------

lat = dict(kite_sublattices(spec))[2]
inc = incremental_triangulation(spec.polygon, lat, 2)
inc.validate()
print("\nincremental on the index-2 sublattice:",
      [tuple(inc.vertices[i]) for i in inc.interior_indices])
(OUT / "kite26_index2.svg").write_text(triangulation_svg(inc))

# --- a triangulation with no convex lift ---------------------------------------

outer = [Pt(0, 0), Pt(4, 0), Pt(0, 4)]
inner = [Pt(1, 1), Pt(2, 1), Pt(1, 2)]
A, B, C, a, b, c = range(6)
pinwheel = Triangulation(
    polygon=normalize_polygon([(0, 0), (4, 0), (0, 4)]),
    lattice=ZZ2,
    vertices=tuple(outer + inner),
    triangles=tuple(sorted(tuple(sorted(t)) for t in [
        (A, B, b), (A, b, a), (B, C, c), (B, c, b), (C, A, a), (C, a, c), (a, b, c)])),
)
print("\npinwheel admits a convex lift:", is_regular(pinwheel) is not None)
