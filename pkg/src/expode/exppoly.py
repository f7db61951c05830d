"""Exponential polynomials: finite sums of e^(lambda*x) * p(x).

This function class is closed under addition, multiplication,
differentiation and constant-free antidifferentiation, which is exactly what
the solver needs: forcing terms, homogeneous bases and particular solutions
all live here.  Terms are kept canonical (sorted by exponent, exponents
merged within EXP_MERGE_TOL, relatively tiny coefficients dropped), so
resonance detection reduces to an exponent landing on zero after a shift.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .cpoly import Poly

EXP_MERGE_TOL = 1e-9     # exponents closer than this are the same term
COEFF_CLEAN_REL = 1e-12  # coefficients tiny relative to their own term get dropped


class NotConjugateClosed(Exception):
    """The function has no real form: conjugate terms are missing or unequal."""


def _cleaned(p: Poly) -> Poly:
    top = p.max_abs()
    if top == 0.0:
        return Poly()
    floor = COEFF_CLEAN_REL * top
    return Poly(tuple(0j if abs(c) <= floor else c for c in p.coeffs))


def _canonical(raw) -> tuple[tuple[complex, Poly], ...]:
    entries = []
    for lam, p in raw:
        lam = complex(lam)
        if not cmath.isfinite(lam):
            raise ValueError("exponents must be finite")
        if not isinstance(p, Poly):
            p = Poly(tuple(p))
        if not p.is_zero:
            entries.append((lam, p))
    entries.sort(key=lambda t: (t[0].real, t[0].imag))
    merged: list[list] = []
    for lam, p in entries:
        slot = None
        best = math.inf
        for cand in merged:
            d = abs(cand[0] - lam)
            if d <= EXP_MERGE_TOL and d < best:
                slot, best = cand, d
        if slot is None:
            merged.append([lam, p])
        else:
            slot[1] = slot[1] + p
    final = []
    for lam, p in merged:
        p = _cleaned(p)
        if not p.is_zero:
            final.append((lam, p))
    final.sort(key=lambda t: (t[0].real, t[0].imag))
    return tuple(final)


@dataclass(frozen=True)
class ExpPoly:
    """Sum of e^(lambda*x) * p(x) terms in canonical form."""

    terms: tuple[tuple[complex, Poly], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _canonical(self.terms))

    @classmethod
    def zero(cls) -> ExpPoly:
        return cls(())

    @classmethod
    def constant(cls, c: complex) -> ExpPoly:
        return cls(((0j, Poly((complex(c),))),))

    @classmethod
    def term(cls, lam: complex, poly: Poly) -> ExpPoly:
        return cls(((complex(lam), poly),))

    @classmethod
    def from_poly(cls, poly: Poly) -> ExpPoly:
        return cls(((0j, poly),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def max_coeff(self) -> float:
        return max((p.max_abs() for _, p in self.terms), default=0.0)

    def term_at(self, lam: complex, tol: float = EXP_MERGE_TOL) -> Poly | None:
        """Polynomial part at (approximately) the given exponent, else None."""
        best, best_d = None, math.inf
        for mu, p in self.terms:
            d = abs(mu - complex(lam))
            if d <= tol and d < best_d:
                best, best_d = p, d
        return best

    def __add__(self, other: ExpPoly) -> ExpPoly:
        return ExpPoly(self.terms + other.terms)

    def __neg__(self) -> ExpPoly:
        return ExpPoly(tuple((lam, -p) for lam, p in self.terms))

    def __sub__(self, other: ExpPoly) -> ExpPoly:
        return self + (-other)

    def scale(self, c: complex) -> ExpPoly:
        c = complex(c)
        if c == 0:
            return ExpPoly.zero()
        return ExpPoly(tuple((lam, p.scale(c)) for lam, p in self.terms))

    def __mul__(self, other: ExpPoly) -> ExpPoly:
        out = []
        for la, pa in self.terms:
            for lb, pb in other.terms:
                out.append((la + lb, pa * pb))
        return ExpPoly(tuple(out))

    def shift_exponent(self, c: complex) -> ExpPoly:
        """Multiply by e^(c*x): every exponent moves by c."""
        c = complex(c)
        return ExpPoly(tuple((lam + c, p) for lam, p in self.terms))

    def derivative(self) -> ExpPoly:
        out = []
        for lam, p in self.terms:
            out.append((lam, p.scale(lam) + p.derivative()))
        return ExpPoly(tuple(out))

    def antiderivative(self) -> ExpPoly:
        """One antiderivative with every integration constant set to zero.

        For a term e^(c*x) q(x) with c away from zero, the polynomial part of
        the antiderivative solves c*t + t' = q; running the recurrence from
        the top coefficient down is the integration-by-parts ladder
        I[x^n e^(cx)] = x^n e^(cx)/c - (n/c) I[x^(n-1) e^(cx)] done all at
        once, and keeps the degree of q exactly.  Exponents within
        EXP_MERGE_TOL of zero integrate as plain polynomials instead, which
        raises the degree by one; that degree jump is precisely what
        resonance means downstream.
        """
        out = []
        for lam, p in self.terms:
            if abs(lam) <= EXP_MERGE_TOL:
                shifted = (0j,) + tuple(c / (k + 1) for k, c in enumerate(p.coeffs))
                out.append((lam, Poly(shifted)))
            else:
                q = [0j] * len(p.coeffs)
                q[-1] = p.coeffs[-1] / lam
                for k in range(len(p.coeffs) - 2, -1, -1):
                    q[k] = (p.coeffs[k] - (k + 1) * q[k + 1]) / lam
                out.append((lam, Poly(tuple(q))))
        return ExpPoly(tuple(out))

    def nth_antiderivative(self, m: int) -> ExpPoly:
        if m < 1:
            raise ValueError("m must be >= 1")
        f = self
        for _ in range(m):
            f = f.antiderivative()
        return f

    def __call__(self, x: complex) -> complex:
        return sum((cmath.exp(lam * x) * p(x) for lam, p in self.terms), 0j)


def coeff_distance(f: ExpPoly, g: ExpPoly) -> float:
    """Largest coefficient magnitude of f - g after canonical merging."""
    return (f - g).max_coeff()


def _conjugate_poly(p: Poly) -> Poly:
    return Poly(tuple(c.conjugate() for c in p.coeffs))


def _real_poly(p: Poly, take) -> Poly:
    return Poly(tuple(complex(take(c), 0.0) for c in p.coeffs))


@dataclass(frozen=True)
class TrigForm:
    """Real rendering of a conjugate-closed ExpPoly.

    Each entry is (alpha, beta, cos_part, sin_part) standing for
    e^(alpha*x) * (cos_part(x)*cos(beta*x) + sin_part(x)*sin(beta*x)),
    with beta >= 0 and real polynomial parts.  Purely real terms carry
    beta == 0 and an empty sin_part.
    """

    entries: tuple[tuple[float, float, Poly, Poly], ...] = ()

    def __call__(self, x: float) -> float:
        total = 0.0
        for alpha, beta, cp, sp in self.entries:
            total += math.exp(alpha * x) * (
                cp(x).real * math.cos(beta * x) + sp(x).real * math.sin(beta * x))
        return total


def realify(f: ExpPoly) -> TrigForm:
    """Rewrite a conjugate-closed ExpPoly over cos/sin.

    Pairs e^((a+ib)x) p(x) with e^((a-ib)x) conj(p)(x) and emits
    e^(ax) (2 Re p (x) cos(bx) - 2 Im p(x) sin(bx)).  This is a rendering
    transform only; the solver itself stays in the complex exponential basis.
    Raises NotConjugateClosed when a partner term is missing or does not
    match within tolerance.
    """
    tol = EXP_MERGE_TOL
    scale = 1.0 + f.max_coeff()
    real_terms: list[tuple[float, Poly]] = []
    upper: list[tuple[complex, Poly]] = []
    lower: list[tuple[complex, Poly]] = []
    for lam, p in f.terms:
        if abs(lam.imag) <= tol:
            bad = max((abs(c.imag) for c in p.coeffs), default=0.0)
            if bad > tol * scale:
                raise NotConjugateClosed(
                    "coefficients at a real exponent have imaginary parts")
            real_terms.append((lam.real, _real_poly(p, lambda c: c.real)))
        elif lam.imag > 0:
            upper.append((lam, p))
        else:
            lower.append((lam, p))

    entries: list[tuple[float, float, Poly, Poly]] = []
    used = [False] * len(lower)
    for lam, p in upper:
        match, match_d = None, math.inf
        for j, (mu, _) in enumerate(lower):
            if used[j]:
                continue
            d = abs(mu.conjugate() - lam)
            if d <= tol and d < match_d:
                match, match_d = j, d
        if match is None:
            raise NotConjugateClosed(
                f"no conjugate partner for exponent {lam!r}")
        used[match] = True
        mu, q = lower[match]
        mismatch = (p - _conjugate_poly(q)).max_abs()
        if mismatch > tol * scale:
            raise NotConjugateClosed(
                f"conjugate polynomial parts differ at exponent {lam!r}")
        alpha = 0.5 * (lam.real + mu.real)
        beta = 0.5 * (lam.imag - mu.imag)
        half = (p + _conjugate_poly(q)).scale(0.5)
        floor = COEFF_CLEAN_REL * max(1.0, half.max_abs())
        cos_part = Poly(tuple(
            complex(2.0 * c.real, 0.0) if abs(2.0 * c.real) > floor else 0j
            for c in half.coeffs))
        sin_part = Poly(tuple(
            complex(-2.0 * c.imag, 0.0) if abs(2.0 * c.imag) > floor else 0j
            for c in half.coeffs))
        if cos_part.is_zero and sin_part.is_zero:
            continue
        entries.append((alpha, beta, cos_part, sin_part))
    if not all(used):
        lam = lower[used.index(False)][0]
        raise NotConjugateClosed(f"no conjugate partner for exponent {lam!r}")

    for alpha, p in real_terms:
        entries.append((alpha, 0.0, p, Poly()))
    entries.sort(key=lambda e: (e[0], e[1]))
    return TrigForm(tuple(entries))
