"""Complex polynomial arithmetic and multiplicity-aware root finding.

Polynomials are dense tuples of complex coefficients, lowest power first.
Root finding runs a simultaneous Ehrlich-Aberth iteration and then groups
the computed roots by single-linkage clustering, so a multiple root comes
back as one (root, multiplicity) pair instead of a scatter of simple roots.
Every candidate grouping is certified by expanding the factors and comparing
coefficients against the input; the coarsest grouping that certifies wins.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

DEFAULT_CLUSTER_TOL = 1e-6
COEFF_REL_TOL = 1e-8
COEFF_ABS_TOL = 1e-10

_MERGE_CAP = 1e-2  # coarsest cluster cut ever attempted
_MAX_SWEEPS = 500
_EPS = sys.float_info.epsilon


class NonConvergence(Exception):
    """Raised when no certified factorization of the input can be produced."""


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial over complex doubles; ``coeffs[k]`` multiplies x^k.

    Trailing zero coefficients are stripped exactly (no epsilon), so the zero
    polynomial is the empty tuple and ``degree`` equals ``len(coeffs) - 1``
    for everything else.
    """

    coeffs: tuple[complex, ...] = ()

    def __post_init__(self) -> None:
        cs = tuple(complex(c) for c in self.coeffs)
        if any(not cmath.isfinite(c) for c in cs):
            raise ValueError("polynomial coefficients must be finite")
        n = len(cs)
        while n and cs[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", cs[:n])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lowest_power(self) -> int | None:
        """Index of the first nonzero coefficient, None for the zero polynomial."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(tuple(out))

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if self.is_zero or other.is_zero:
            return Poly()
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    def scale(self, s: complex) -> Poly:
        return Poly(tuple(c * s for c in self.coeffs))

    def derivative(self) -> Poly:
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def monomial(power: int, coeff: complex = 1.0) -> Poly:
    """coeff * x**power"""
    if power < 0:
        raise ValueError("power must be nonnegative")
    return Poly((0j,) * power + (complex(coeff),))


@dataclass(frozen=True)
class Factorization:
    """Roots with multiplicities plus a leading scale factor.

    ``expand()`` rebuilds ``leading * prod (x - root)**mult``.  Pairs are kept
    sorted by (re, im) and roots must be pairwise distinct.
    """

    pairs: tuple[tuple[complex, int], ...]
    leading: complex = 1.0 + 0j

    def __post_init__(self) -> None:
        pairs = tuple((complex(r), int(m)) for r, m in self.pairs)
        for r, m in pairs:
            if not cmath.isfinite(r):
                raise ValueError("roots must be finite")
            if m < 1:
                raise ValueError("multiplicities must be >= 1")
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                if pairs[i][0] == pairs[j][0]:
                    raise ValueError("roots must be pairwise distinct")
        lead = complex(self.leading)
        if lead == 0 or not cmath.isfinite(lead):
            raise ValueError("leading coefficient must be finite and nonzero")
        ordered = tuple(sorted(pairs, key=lambda rm: (rm[0].real, rm[0].imag)))
        object.__setattr__(self, "pairs", ordered)
        object.__setattr__(self, "leading", lead)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.pairs)

    def expand(self) -> Poly:
        acc = Poly((self.leading,))
        for r, m in self.pairs:
            lin = Poly((-r, 1.0))
            for _ in range(m):
                acc = acc * lin
        return acc

    @classmethod
    def from_pairs(cls, pairs, leading: complex = 1.0,
                   min_separation: float = DEFAULT_CLUSTER_TOL) -> Factorization:
        """Build a user-supplied factorization, rejecting near-coincident roots."""
        fact = cls(tuple(pairs), leading)
        rs = [r for r, _ in fact.pairs]
        for i in range(len(rs)):
            for j in range(i + 1, len(rs)):
                if abs(rs[i] - rs[j]) <= min_separation:
                    raise ValueError(
                        "roots closer than the clustering tolerance must be merged")
        return fact


def coefficients_match(p: Poly, q: Poly, rel: float = COEFF_REL_TOL,
                       abs_floor: float = COEFF_ABS_TOL) -> bool:
    """Per-coefficient comparison; the absolute floor is scaled by max |coeff|."""
    a, b = p.coeffs, q.coeffs
    floor = abs_floor * (1.0 + max(p.max_abs(), q.max_abs()))
    for k in range(max(len(a), len(b))):
        x = a[k] if k < len(a) else 0j
        y = b[k] if k < len(b) else 0j
        if abs(x - y) > rel * max(abs(x), abs(y)) + floor:
            return False
    return True


def _horner(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _horner_with_bound(coeffs, z: complex) -> tuple[complex, float]:
    # Evaluation plus a running bound on its own rounding error.
    acc = coeffs[-1]
    bound = abs(acc)
    az = abs(z)
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
        bound = bound * az + abs(acc)
    return acc, bound * _EPS


def _aberth(monic: tuple[complex, ...]) -> list[complex]:
    n = len(monic) - 1
    if n == 1:
        return [-monic[0]]
    radius = 1.0 + max(abs(c) for c in monic[:-1])
    zs = []
    for k in range(n):
        # Deliberately asymmetric start: staggered radii, offset angles.
        angle = 2.0 * math.pi * k / n + 0.4
        r = radius * (0.55 + 0.45 * (k + 1.0) / n)
        zs.append(r * complex(math.cos(angle), math.sin(angle)))
    deriv = tuple(k * c for k, c in enumerate(monic))[1:]
    stalled = 0
    for _ in range(_MAX_SWEEPS):
        max_step = 0.0
        all_on_root = True
        for i in range(n):
            p, bound = _horner_with_bound(monic, zs[i])
            if abs(p) <= 4.0 * bound:
                continue
            all_on_root = False
            dp = _horner(deriv, zs[i])
            if dp == 0:
                zs[i] += (1e-6 + 1e-6j) * (1.0 + abs(zs[i]))
                max_step = math.inf
                continue
            w = p / dp
            s = 0j
            for j in range(n):
                if j == i:
                    continue
                d = zs[i] - zs[j]
                if d == 0:
                    d = complex(1e-12 * (1.0 + abs(zs[i])), 0.0)
                s += 1.0 / d
            denom = 1.0 - w * s
            step = w if denom == 0 else w / denom
            zs[i] -= step
            rel_step = abs(step) / (1.0 + abs(zs[i]))
            if rel_step > max_step:
                max_step = rel_step
        if all_on_root:
            return zs
        if max_step <= 8.0 * _EPS:
            stalled += 1
            if stalled >= 3:
                return zs  # rounding floor reached; certification decides
        else:
            stalled = 0
    raise NonConvergence(
        f"root iteration missed its residual target within {_MAX_SWEEPS} sweeps")


def _single_linkage(points: list[complex], tol: float) -> list[list[complex]]:
    parent = list(range(len(points)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if abs(points[i] - points[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[complex]] = {}
    for i, p in enumerate(points):
        groups.setdefault(find(i), []).append(p)
    return list(groups.values())


def _refined(monic: tuple[complex, ...], centroid: complex, mult: int,
             cut: float) -> complex:
    # A cluster of size m sits on a simple, well-conditioned root of the
    # (m-1)-th derivative, which Newton recovers at full precision even when
    # the roots of the polynomial itself are smeared by rounding.
    q = monic
    for _ in range(mult - 1):
        q = tuple(k * c for k, c in enumerate(q))[1:]
    dq = tuple(k * c for k, c in enumerate(q))[1:]
    z = centroid
    for _ in range(24):
        denom = _horner(dq, z)
        if denom == 0:
            break
        step = _horner(q, z) / denom
        z -= step
        if abs(step) <= 4.0 * _EPS * (1.0 + abs(z)):
            break
    if abs(z - centroid) > 10.0 * cut + 1e-12:
        return centroid  # refinement wandered off; keep the plain centroid
    return z


def _symmetrized(pairs: list[tuple[complex, int]],
                 cut: float) -> list[tuple[complex, int]]:
    # Only called for real-coefficient input, whose true root set is closed
    # under conjugation: snap rounding dust off the axes, then replace each
    # near-conjugate pair by an exact one.
    snapped = []
    for z, m in pairs:
        re, im = z.real, z.imag
        s = 1.0 + abs(z)
        if abs(im) <= 1e-10 * s:
            im = 0.0
        if abs(re) <= 1e-10 * s:
            re = 0.0
        snapped.append((complex(re, im), m))
    out: list[tuple[complex, int]] = []
    used = [False] * len(snapped)
    for i, (z, m) in enumerate(snapped):
        if used[i]:
            continue
        used[i] = True
        if z.imag == 0.0:
            out.append((z, m))
            continue
        best, best_d = None, math.inf
        for j in range(i + 1, len(snapped)):
            if used[j] or snapped[j][1] != m:
                continue
            d = abs(snapped[j][0].conjugate() - z)
            if d < best_d:
                best, best_d = j, d
        if best is not None and best_d <= max(cut, 1e-9) * (1.0 + abs(z)):
            used[best] = True
            w = 0.5 * (z + snapped[best][0].conjugate())
            out.append((w, m))
            out.append((w.conjugate(), m))
        else:
            out.append((z, m))
    return out


def find_roots(p: Poly, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Factorization:
    """Factor ``p`` into (root, multiplicity) pairs with a certified expansion.

    Roots of the monic normalization are found by Ehrlich-Aberth sweeps and
    grouped by single-linkage clustering.  Cuts are tried from coarse to fine,
    starting from ``cluster_tol`` escalated by powers of ten (capped at 1e-2),
    and the first grouping whose re-expanded product matches the input within
    the certification tolerance wins.  Trying coarse cuts first makes the
    multiplicity assignment a checked decision rather than a guess: a cluster
    of simple roots smeared around a multiple root by rounding (radius grows
    like eps**(1/m)) gets merged, while genuinely distinct roots survive
    because merging them breaks the reconstruction.

    Raises NonConvergence when the iteration stalls short of its residual
    target or no grouping certifies.
    """
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    if cluster_tol < 0:
        raise ValueError("cluster_tol must be nonnegative")
    lead = p.coeffs[-1]
    monic = tuple(c / lead for c in p.coeffs)
    roots = _aberth(monic)
    real_input = all(c.imag == 0.0 for c in p.coeffs)

    cuts = [cluster_tol]
    t = cluster_tol if cluster_tol > 0 else 1e-12
    while len(cuts) < 5:
        t *= 10.0
        if t > max(cluster_tol, _MERGE_CAP):
            break
        cuts.append(t)

    for cut in reversed(cuts):
        clusters = _single_linkage(roots, cut)
        pairs = []
        for group in clusters:
            centroid = sum(group) / len(group)
            pairs.append((_refined(monic, centroid, len(group), cut), len(group)))
        candidates = [pairs]
        if real_input:
            candidates.insert(0, _symmetrized(pairs, cut))
        for cand in candidates:
            try:
                fact = Factorization(tuple(cand), lead)
            except ValueError:
                continue
            if coefficients_match(fact.expand(), p):
                return fact
    raise NonConvergence("no root clustering reproduces the input coefficients")
