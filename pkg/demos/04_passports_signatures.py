"""Node partitions, signatures, and ramification passports of the Laurent
polynomials defining kite curves a/z + p(w) + b*z."""

import random

from severi_census import (
    LaurentPoly,
    chebyshev,
    critical_data,
    expected_passport,
    kite,
    nodal_partition,
    passport,
)

# --- the cubic with balanced nodes -------------------------------------------

cubic = LaurentPoly(0, 3, (0, -3, 0, 1))  # w^3 - 3w
print("p = w^3 - 3w")
for d in critical_data(cubic):
    print(f"  critical point {d.point:+.3f}, value {d.value:+.3f}")

for a, b in [(1, 1), (4, 4)]:
    nd = nodal_partition(cubic, a, b)
    print(f"  a=b={a}: partition ({nd.delta1},{nd.delta2}), "
          f"signature {nd.kappa}, genus {nd.genus}")

print("  passport:", passport(cubic).partitions)
print("  forced by (1,1):", expected_passport(1, 1, kite(0, 3)).partitions)

# --- Chebyshev polynomials balance their nodes --------------------------------

print("\nChebyshev family, a = b = 1/2 (targets are the critical values +-1):")
for n in (3, 5, 7, 9):
    nd = nodal_partition(chebyshev(n), 0.5, 0.5)
    print(f"  T_{n}: partition ({nd.delta1},{nd.delta2}), signature {nd.kappa}")

# --- a random curve with a forced passport -------------------------------------

rng = random.Random(5)
p = LaurentPoly(0, 5, tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) if i % 2 else 0j
                            for i in range(6)))
values = [d.value for d in critical_data(p)]
v = values[0]
a = 1.3 + 0.2j
b = v * v / (4 * a)  # put +-v on the two node targets
nd = nodal_partition(p, a, b)
print(f"\nodd quintic: partition ({nd.delta1},{nd.delta2}), genus {nd.genus}")
print("  passport        ", passport(p).partitions)
print("  expected shape  ", expected_passport(nd.delta1, nd.delta2, kite(0, 5)).partitions)
assert passport(p) == expected_passport(nd.delta1, nd.delta2, kite(0, 5))
