"""severi_census: lower bounds on the number of irreducible components of
Severi varieties on toric surfaces.

The exact side (lattice polygons, sublattice censuses, convex triangulations
and their dual tropical curves) uses arbitrary-precision integers and
rationals throughout; the numeric side (critical data, node partitions and
signatures, passports, amoeba sampling) works under explicit residual
tolerances.  All public objects are immutable and all operations are pure
functions.
"""

from .census import (
    Census,
    CensusEntry,
    admissible_pairs,
    divisor_count,
    divisors,
    general_lower_bound,
    genus1_closed_form,
    intermediate_lattices,
    kite_count,
    kite_delta,
    kite_sublattices,
    severi_dimension,
)
from .curves import (
    CriticalDatum,
    LaurentPoly,
    NodalData,
    Passport,
    Tolerances,
    affine_transform,
    amoeba_sample,
    chebyshev,
    critical_data,
    expected_passport,
    laurent_from_json,
    nodal_partition,
    passport,
    poly_roots,
)
from .lattice import (
    KiteSpec,
    LatticePolygon,
    Pt,
    Sublattice,
    ZZ2,
    boundary_sublattice,
    delta_m,
    hnf_sublattice,
    kite,
    lattice_length,
    lattice_points,
    normalize_polygon,
    polygon_from_json,
    primitive,
    rotate_dual,
)
from .triangulate import (
    Triangulation,
    find_lifting,
    incremental_triangulation,
    is_regular,
    kite_triangulation,
    lifting_certifies,
    triangulation_from_json,
)
from .tropical import (
    DualEdge,
    DualLeg,
    TropicalCurve,
    curve_lattices,
    dual_tropical_curve,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
