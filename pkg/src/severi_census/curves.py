"""Numeric layer: Laurent polynomials supported on an exponent window
[-k, k'], their critical data, node partitions and signatures of the curves
a/z + p(w) + b*z, ramification passports, Chebyshev families, and amoeba
sampling.

Roots come from companion-matrix eigenvalues with Newton polishing; all
guarantees are residual contracts, never method promises.  Multiple roots
are recovered by certified clustering: clusters are accepted only when the
derivative values at the polished center are consistent with the claimed
multiplicity, and are split back otherwise.  Tolerances are explicit and
overridable; every function is deterministic given its tolerances.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    AmbiguousMatch,
    DegenerateNode,
    InvalidPartition,
    NonConvergence,
    ToleranceConflict,
    ZeroPolynomial,
)
from .lattice import KiteSpec

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances (all relative; see individual contracts)."""

    res: float = 1e-10      # residual bound for accepted roots
    cluster: float = 1e-7   # radius for identifying repeated roots
    val: float = 1e-8       # radius for matching/clustering critical values

    def scaled_val(self, magnitude: float) -> float:
        return self.val * max(1.0, magnitude)


DEFAULT_TOL = Tolerances()


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial with exponent window [-k, k'], coefficients
    ascending from exponent -k.  The window is tight: both end coefficients
    must be nonzero.  The degree as a branched cover of the sphere is k+k'.
    """

    k: int
    k_prime: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if self.k < 0 or self.k_prime < 1:
            raise ValueError("need k >= 0 and k' >= 1")
        if len(self.coeffs) != self.k + self.k_prime + 1:
            raise ValueError("coefficient count must equal k + k' + 1")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if self.coeffs[-1] == 0:
            raise ValueError("top coefficient must be nonzero (tight window)")
        if self.k >= 1 and self.coeffs[0] == 0:
            # For k = 0 the bottom of the window is exponent 0 and a zero
            # constant term is fine (a root at the origin, not a pole).
            raise ValueError("bottom coefficient must be nonzero (tight window)")

    @property
    def degree(self) -> int:
        return self.k + self.k_prime

    @property
    def coeff_scale(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def numerator(self) -> list[complex]:
        """Coefficients of w^k * p(w), ascending."""
        return list(self.coeffs)

    def derivative_numerator(self) -> list[complex]:
        """Ascending coefficients of the numerator of p'.

        For k >= 1 this is w^(k+1) * p'(w) (degree k+k', nonzero at both
        ends, so p' never vanishes at w = 0); for k = 0 it is p' itself.
        """
        if self.k == 0:
            return [i * c for i, c in enumerate(self.coeffs)][1:]
        return [(i - self.k) * c for i, c in enumerate(self.coeffs)]

    def __call__(self, w: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc / w ** self.k if self.k else acc

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "k_prime": self.k_prime,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }


def laurent_from_json(d: dict) -> LaurentPoly:
    coeffs = [complex(re, im) for re, im in d["coeffs"]]
    return LaurentPoly(k=d["k"], k_prime=d["k_prime"], coeffs=tuple(coeffs))


def affine_transform(p: LaurentPoly, alpha: complex, beta: complex) -> LaurentPoly:
    """alpha * p + beta on the same exponent window (alpha != 0).

    Passports are invariant under this map: critical points are unchanged
    and critical values move by the same affine map.
    """
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    coeffs = [alpha * c for c in p.coeffs]
    coeffs[p.k] += beta
    return LaurentPoly(k=p.k, k_prime=p.k_prime, coeffs=tuple(coeffs))


def chebyshev(n: int) -> LaurentPoly:
    """Chebyshev polynomial T_n as a window-[0, n] Laurent polynomial,
    via T_{m+1} = 2 w T_m - T_{m-1}.  For n >= 2 the finite critical values
    are exactly +-1."""
    if n < 1:
        raise ValueError("n must be positive")
    prev, cur = [1], [0, 1]
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return LaurentPoly(k=0, k_prime=n, coeffs=tuple(complex(c) for c in cur))


# ---------------------------------------------------------------------------
# root finding with certified multiplicities
# ---------------------------------------------------------------------------

def _eval_poly(asc: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(asc):
        acc = acc * z + c
    return acc


def _derive(asc: Sequence[complex]) -> list[complex]:
    return [i * c for i, c in enumerate(asc)][1:]


def _newton_polish(asc, dasc, z: complex, steps: int = 3) -> complex:
    for _ in range(steps):
        dv = _eval_poly(dasc, z)
        if dv == 0:
            break
        z = z - _eval_poly(asc, z) / dv
    return z


def _cluster_indices(points: list[complex], radius: float) -> list[list[int]]:
    """Single-linkage clusters; the link radius scales with magnitude."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            sep = abs(points[i] - points[j])
            if sep <= radius * max(1.0, abs(points[i]), abs(points[j])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _certify_multiplicity(derivs, center: complex, m: int, n: int) -> Optional[complex]:
    """Polish ``center`` as an m-fold root and accept it when the first m
    derivative magnitudes there are consistent with multiplicity m.

    ``derivs[j]`` holds ascending coefficients of the j-th derivative.  The
    thresholds decay geometrically with m - j; a cluster of genuinely simple
    roots fails the low-order tests and is split back by the caller.
    """
    if m == 1:
        return center
    center = _newton_polish(derivs[m - 1], derivs[m], center, steps=6)
    cert = 1e8 * _EPS
    for j in range(m):
        scale_j = max(1.0, max(abs(c) for c in derivs[j]))
        bound = scale_j * max(1.0, abs(center)) ** (n - j) * cert ** ((m - j) / (m + 1))
        if abs(_eval_poly(derivs[j], center)) > bound:
            return None
    return center


def poly_roots(coeffs: Sequence[complex], tol: Tolerances = DEFAULT_TOL
               ) -> list[tuple[complex, int]]:
    """All roots with multiplicities, ascending coefficients on input.

    Multiplicities always sum to the degree.  Every returned root satisfies
    |p(root)| <= tol.res * max|coeffs| * max(1, |root|)^deg, else
    NonConvergence is raised.  Multiplicity is assigned by clustering within
    tol.cluster, widened adaptively (and re-verified through derivative
    magnitudes) so that machine-precision perturbations of repeated roots
    collapse back to one root.
    """
    asc = [complex(c) for c in coeffs]
    if not asc or all(c == 0 for c in asc):
        raise ZeroPolynomial("all coefficients vanish")
    while asc and asc[-1] == 0:
        asc.pop()
    n = len(asc) - 1
    if n == 0:
        return []
    scale = max(abs(c) for c in asc)

    try:
        eig = np.roots(np.array(asc[::-1], dtype=complex))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - numpy rarely fails
        raise NonConvergence(str(exc)) from exc

    derivs = [asc]
    for _ in range(n):
        derivs.append(_derive(derivs[-1]))
    roots = [_newton_polish(asc, derivs[1], complex(z)) for z in eig]

    # Initial link radius anticipates the eps^(1/m) spread of an m-fold root.
    radius0 = max(tol.cluster, (1e4 * (n + 1) * _EPS) ** (1.0 / n))

    def resolve(indices: list[int], radius: float) -> list[tuple[complex, int]]:
        pts = [roots[i] for i in indices]
        if len(indices) == 1:
            return [(pts[0], 1)]
        center = sum(pts) / len(pts)
        certified = _certify_multiplicity(derivs, center, len(pts), n)
        if certified is not None:
            return [(certified, len(pts))]
        if radius <= tol.cluster:
            # within the configured clustering radius: treated as one root
            return [(center, len(pts))]
        sub = _cluster_indices(pts, radius / 4)
        if len(sub) == 1:
            return resolve(indices, radius / 4)
        out = []
        for grp in sub:
            out.extend(resolve([indices[i] for i in grp], radius / 4))
        return out

    found: list[tuple[complex, int]] = []
    for grp in _cluster_indices(roots, radius0):
        found.extend(resolve(grp, radius0))
    found.sort(key=lambda rm: (rm[0].real, rm[0].imag))

    assert sum(m for _, m in found) == n
    for z, _m in found:
        if abs(_eval_poly(asc, z)) > tol.res * scale * max(1.0, abs(z)) ** n:
            raise NonConvergence(f"residual contract failed at root {z}")
    return found


# ---------------------------------------------------------------------------
# critical data
# ---------------------------------------------------------------------------

class CriticalDatum(NamedTuple):
    point: complex        # critical point in C^*
    multiplicity: int     # as a root of p'; local covering degree is +1
    value: complex        # critical value p(point)


def _critical_points(p: LaurentPoly, tol: Tolerances, include_zero: bool
                     ) -> list[tuple[complex, int]]:
    asc = p.derivative_numerator()
    zero_mult = 0
    while asc and asc[0] == 0:
        asc.pop(0)
        zero_mult += 1
    if not asc or len(asc) == 1:
        roots = []
    else:
        roots = poly_roots(asc, tol)
    out = []
    if include_zero and zero_mult:
        out.append((0j, zero_mult))
    cutoff = tol.cluster
    for z, m in roots:
        if abs(z) <= cutoff:
            # numerically at the puncture w = 0; fold into the zero root
            if include_zero:
                out.append((0j, m))
            continue
        out.append((z, m))
    return out


def critical_data(p: LaurentPoly, tol: Tolerances = DEFAULT_TOL) -> list[CriticalDatum]:
    """Critical points of p in C^* with multiplicities and values.

    w = 0 is always excluded: for k >= 1 its value is the pole over
    infinity (and the cleared-denominator derivative provably never
    vanishes there); for k = 0 a critical point at the origin sits on the
    toric boundary, outside the open torus where nodes live.  Total
    multiplicity over C^* is k+k' for k >= 1 and k'-1 minus the origin
    multiplicity for k = 0.
    """
    pts = _critical_points(p, tol, include_zero=False)
    data = [CriticalDatum(z, m, p(z)) for z, m in pts]
    data.sort(key=lambda d: (d.point.real, d.point.imag))
    return data


# ---------------------------------------------------------------------------
# node partitions and signatures
# ---------------------------------------------------------------------------

class NodalData(NamedTuple):
    delta1: int      # larger block of nodes
    delta2: int      # smaller block
    kappa: int       # signature delta1 - delta2
    genus: int       # k + k' - 1 - (delta1 + delta2)

    @property
    def delta(self) -> int:
        return self.delta1 + self.delta2


def nodal_partition(p: LaurentPoly, a: complex, b: complex,
                    tol: Tolerances = DEFAULT_TOL) -> NodalData:
    """Node partition of the curve a/z + p(w) + b*z.

    Nodes have z^2 = a/b and split into two blocks by the sign of z; the
    block of a node at (z, w) is determined by which of the two values
    +-2*sqrt(a*b) the critical value p(w) matches.  Matched critical points
    must be simple (DegenerateNode otherwise); a value within tolerance of
    both targets raises AmbiguousMatch.
    """
    a, b = complex(a), complex(b)
    if a == 0 or b == 0:
        raise ValueError("need a, b nonzero")
    target = 2 * cmath.sqrt(a * b)
    tau = tol.scaled_val(abs(target))
    if abs(2 * target) <= tau:
        raise AmbiguousMatch("the two target values coincide (a*b ~ 0)")

    # For k = 0 a critical point at the origin lies over a finite value and
    # contributes a node like any other; only k >= 1 puts w = 0 over the pole.
    blocks = [0, 0]
    for point, mult in _critical_points(p, tol, include_zero=(p.k == 0)):
        value = p(point)
        near_plus = abs(value - target) <= tau
        near_minus = abs(value + target) <= tau
        if near_plus and near_minus:
            raise AmbiguousMatch(f"critical value {value} matches both targets")
        if near_plus or near_minus:
            if mult != 1:
                raise DegenerateNode(
                    f"critical point {point} of multiplicity {mult} "
                    "sits at a matched value")
            blocks[0 if near_plus else 1] += 1

    d1, d2 = max(blocks), min(blocks)
    data = NodalData(delta1=d1, delta2=d2, kappa=d1 - d2, genus=p.degree - 1 - (d1 + d2))
    _check_signature_bounds(data, p.degree)
    return data


def _check_signature_bounds(nd: NodalData, degree: int) -> None:
    delta, g = nd.delta, nd.genus
    half = (delta + g + 1) // 2  # == floor(degree / 2)
    assert nd.delta1 <= half and nd.delta2 <= half, "block exceeds half the degree"
    assert (nd.kappa - delta) % 2 == 0
    assert 0 <= nd.kappa <= min(delta, 2 * half - delta)


# ---------------------------------------------------------------------------
# passports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Passport:
    """Multiset of ramification partitions over the finite critical values.

    Each partition lists the fiber multiplicities (summing to the covering
    degree).  Partitions with no repeated point ("all ones") belong to
    regular values and are omitted.
    """

    degree: int
    partitions: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        assert all(sum(part) == self.degree for part in self.partitions)
        object.__setattr__(
            self, "partitions",
            tuple(sorted((tuple(sorted(p, reverse=True)) for p in self.partitions),
                         reverse=True)),
        )

    @property
    def ramification(self) -> int:
        return sum(self.degree - len(part) for part in self.partitions)

    def to_json_dict(self) -> dict:
        return {"degree": self.degree, "partitions": [list(p) for p in self.partitions]}


def _value_clusters(values: list[complex], radius: float) -> list[list[int]]:
    return sorted(_cluster_indices(values, radius),
                  key=lambda grp: (values[grp[0]].real, values[grp[0]].imag))


def passport(p: LaurentPoly, tol: Tolerances = DEFAULT_TOL) -> Passport:
    """Passport of p: one partition per cluster of finite critical values.

    Critical values are clustered within tol.val (scaled by their
    magnitude); the clustering must agree with the one at 10x the tolerance,
    else ToleranceConflict is raised rather than silently resolved.  For
    k = 0 a critical point at w = 0 is a legitimate finite-fiber point and
    is included.  The total ramification over finite values always equals
    k+k' for k >= 1 and k+k'-1 for k = 0.
    """
    crit = _critical_points(p, tol, include_zero=(p.k == 0))
    d = p.degree
    if not crit:
        return Passport(degree=d, partitions=())

    # the link radius is magnitude-relative inside the clusterer
    values = [p(z) for z, _ in crit]
    fine = _value_clusters(values, tol.val)
    coarse = _value_clusters(values, 10 * tol.val)
    if sorted(map(sorted, fine)) != sorted(map(sorted, coarse)):
        raise ToleranceConflict("critical-value clusters change between tol and 10*tol")

    partitions = []
    for grp in fine:
        parts = sorted((crit[i][1] + 1 for i in grp), reverse=True)
        fill = d - sum(parts)
        if fill < 0:
            raise ToleranceConflict("merged fiber exceeds the covering degree")
        partitions.append(tuple(parts + [1] * fill))

    result = Passport(degree=d, partitions=tuple(partitions))
    expected_ram = d if p.k >= 1 else d - 1
    assert result.ramification == expected_ram, "ramification bookkeeping failed"
    return result


def expected_passport(delta1: int, delta2: int, spec: KiteSpec) -> Passport:
    """Passport forced by a node partition (delta1, delta2) on the kite:
    one partition with delta1 doubled points, one with delta2, and simple
    doubled points at every remaining finite critical value.

    The number of remaining values is fixed by ramification bookkeeping:
    total ramification k+k' (k >= 1) or k+k'-1 (k = 0), minus delta1+delta2.
    """
    d = spec.height
    delta = delta1 + delta2
    if delta1 < 0 or delta2 < 0 or delta > d - 1:
        raise InvalidPartition(f"need delta1 + delta2 <= {d - 1}")
    if max(delta1, delta2) > d // 2:
        raise InvalidPartition(f"a block may hold at most {d // 2} nodes")
    n_extra = (d if spec.k >= 1 else d - 1) - delta
    partitions = []
    for block in (delta1, delta2):
        if block > 0:
            partitions.append(tuple([2] * block + [1] * (d - 2 * block)))
    partitions.extend(tuple([2] + [1] * (d - 2)) for _ in range(n_extra))
    return Passport(degree=d, partitions=tuple(partitions))


# ---------------------------------------------------------------------------
# amoeba sampling
# ---------------------------------------------------------------------------

def amoeba_sample(p: LaurentPoly, a: complex, b: complex, n_samples: int,
                  log_radius: tuple[float, float] = (-2.0, 2.0),
                  tol: Tolerances = DEFAULT_TOL) -> list[tuple[float, float]]:
    """Sample the amoeba (log|z|, log|w|) of the curve a/z + p(w) + b*z.

    w runs over a deterministic log-radial grid of n_samples points with
    log|w| in ``log_radius``; for each w the quadratic b z^2 + p(w) z + a
    is solved and every root passing the residual contract contributes one
    point.  Empty output is legitimate.
    """
    if n_samples <= 0:
        return []
    a, b = complex(a), complex(b)
    lo, hi = log_radius
    n_r = max(1, math.isqrt(n_samples))
    n_t = -(-n_samples // n_r)  # ceil

    out = []
    count = 0
    for i in range(n_r):
        rho = lo + (hi - lo) * i / (n_r - 1) if n_r > 1 else (lo + hi) / 2
        for j in range(n_t):
            if count >= n_samples:
                break
            count += 1
            w = cmath.rect(math.exp(rho), 2 * math.pi * j / n_t)
            pw = p(w)
            for z in _quadratic_roots(b, pw, a):
                if z == 0:
                    continue
                terms = (a / z, pw, b * z)
                residual = abs(sum(terms))
                if residual <= tol.res * max(1.0, *(abs(t) for t in terms)):
                    out.append((math.log(abs(z)), math.log(abs(w))))
    return out


def _quadratic_roots(c2: complex, c1: complex, c0: complex) -> tuple[complex, ...]:
    if c2 == 0:
        return (-c0 / c1,) if c1 != 0 else ()
    disc = cmath.sqrt(c1 * c1 - 4 * c2 * c0)
    q = -(c1 + disc) / 2 if abs(c1 + disc) >= abs(c1 - disc) else -(c1 - disc) / 2
    if q == 0:
        z = cmath.sqrt(-c0 / c2)
        return (z, -z)
    return (q / c2, c0 / q)
