"""Constant-coefficient linear differential operators.

A LinOp is the monic operator y -> y^(n) + p1*y^(n-1) + ... + pn*y; its
characteristic polynomial is r^n + p1*r^(n-1) + ... + pn.  A FactoredOp
is the same operator written as a product of first-order factors
(d/dx - r)^m, one group per distinct root.  The two representations are
interchangeable through the characteristic polynomial, and the factor
groups commute, which the solver leans on.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .cpoly import DEFAULT_CLUSTER_TOL, Factorization, Poly, find_roots
from .exppoly import EXP_MERGE_TOL, ExpPoly, coeff_distance


@dataclass(frozen=True)
class LinOp:
    """Coefficients p1..pn of the monic operator, highest derivative first."""

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        cs = tuple(complex(c) for c in self.coeffs)
        if not cs:
            raise ValueError("operator order must be >= 1")
        if any(not cmath.isfinite(c) for c in cs):
            raise ValueError("operator coefficients must be finite")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def char_poly(self) -> Poly:
        return Poly(tuple(reversed(self.coeffs)) + (1.0 + 0j,))

    @classmethod
    def from_char_poly(cls, p: Poly) -> LinOp:
        if p.degree < 1:
            raise ValueError("characteristic polynomial must have degree >= 1")
        lead = p.coeffs[-1]
        normalized = tuple(c / lead for c in p.coeffs[:-1])
        return cls(tuple(reversed(normalized)))

    def apply(self, y: ExpPoly) -> ExpPoly:
        derivs = [y]
        for _ in range(self.order):
            derivs.append(derivs[-1].derivative())
        out = derivs[self.order]
        for k, c in enumerate(self.coeffs, start=1):
            out = out + derivs[self.order - k].scale(c)
        return out


@dataclass(frozen=True)
class FactoredOp:
    """Product of (d/dx - root)^mult groups, applied left to right.

    Unlike Factorization, the given factor order is preserved: the result of
    applying the operator does not depend on it, but tests exercise exactly
    that, so the order must survive construction.
    """

    factors: tuple[tuple[complex, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple((complex(r), int(m)) for r, m in self.factors)
        if not pairs:
            raise ValueError("operator order must be >= 1")
        for r, m in pairs:
            if not cmath.isfinite(r):
                raise ValueError("roots must be finite")
            if m < 1:
                raise ValueError("multiplicities must be >= 1")
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                if abs(pairs[i][0] - pairs[j][0]) <= EXP_MERGE_TOL:
                    raise ValueError(
                        "factor roots must be distinct beyond the merge tolerance")
        object.__setattr__(self, "factors", pairs)

    @property
    def order(self) -> int:
        return sum(m for _, m in self.factors)

    def char_poly(self) -> Poly:
        return Factorization(self.factors).expand()

    def to_linop(self) -> LinOp:
        return LinOp.from_char_poly(self.char_poly())

    def apply(self, y: ExpPoly) -> ExpPoly:
        for r, m in self.factors:
            for _ in range(m):
                y = y.derivative() - y.scale(r)
        return y


def factor_op(op: LinOp, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> FactoredOp:
    """Factor an operator through the roots of its characteristic polynomial."""
    fact = find_roots(op.char_poly(), cluster_tol)
    return FactoredOp(fact.pairs)


def apply_op(op: LinOp | FactoredOp, y: ExpPoly) -> ExpPoly:
    return op.apply(y)


def compose_check(first: FactoredOp, second: FactoredOp, y: ExpPoly,
                  tol: float = 1e-9) -> bool:
    """Do two orderings of the same factors act identically on y?

    Raises ValueError when the two operators are not permutations of the same
    factor multiset; otherwise compares the applications termwise.
    """
    key = lambda rm: (rm[0].real, rm[0].imag, rm[1])
    if sorted(first.factors, key=key) != sorted(second.factors, key=key):
        raise ValueError("operators must hold the same factors")
    a = first.apply(y)
    b = second.apply(y)
    bound = tol * (1.0 + max(a.max_coeff(), b.max_coeff()))
    return coeff_distance(a, b) <= bound
