"""Constructive solver for L[y] = f over exponential polynomials.

The homogeneous basis comes straight from the factored operator: each root r
of multiplicity m contributes x^l * e^(r*x) for l = 0..m-1.  A particular
solution is built by walking the factor groups and inverting each one with
repeated antidifferentiation,

    g  ->  e^(r*x) * I_m[ e^(-r*x) * g ],

with all integration constants dropped.  Components that already lie in the
homogeneous span are stripped afterwards, so the result is minimal and does
not depend on the factor order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exppoly import EXP_MERGE_TOL, ExpPoly, NotConjugateClosed
from .cpoly import Poly, monomial
from .operators import FactoredOp, LinOp, apply_op


class SingularSystem(Exception):
    """The initial-condition system has no reliable solution."""


@dataclass(frozen=True)
class HomogeneousSolution:
    """Basis of the kernel of L plus display labels for the free constants."""

    basis: tuple[ExpPoly, ...]
    constants: tuple[str, ...]


@dataclass(frozen=True)
class FullSolution:
    homogeneous: HomogeneousSolution
    particular: ExpPoly


@dataclass(frozen=True)
class AnsatzForm:
    """Predicted shape of the particular solution for f = e^(b*x) * x^j.

    resonance_order is the multiplicity of b as a root of the operator (zero
    when b is no root).  The polynomial part of the solution has degree
    j + resonance_order exactly, with all powers below resonance_order
    absent, so it reads e^(b*x) * x^resonance_order * S(x), deg S = j.
    """

    exponent: complex
    resonance_order: int
    degree: int


def _sorted_factors(factored: FactoredOp) -> list[tuple[complex, int]]:
    return sorted(factored.factors, key=lambda rm: (rm[0].real, rm[0].imag))


def homogeneous_solution(factored: FactoredOp) -> HomogeneousSolution:
    basis: list[ExpPoly] = []
    for r, m in _sorted_factors(factored):
        for power in range(m):
            basis.append(ExpPoly.term(r, monomial(power)))
    constants = tuple(f"C{k + 1}" for k in range(len(basis)))
    return HomogeneousSolution(tuple(basis), constants)


def real_homogeneous_solution(factored: FactoredOp) -> HomogeneousSolution:
    """Kernel basis with conjugate root pairs traded for cos/sin elements.

    Raises NotConjugateClosed when the root multiset is not closed under
    conjugation (the operator then has no real form).
    """
    ordered = _sorted_factors(factored)
    used = [False] * len(ordered)
    basis: list[ExpPoly] = []
    for i, (r, m) in enumerate(ordered):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) <= EXP_MERGE_TOL:
            for power in range(m):
                basis.append(ExpPoly.term(r, monomial(power)))
            continue
        partner = None
        for j in range(i + 1, len(ordered)):
            if used[j] or ordered[j][1] != m:
                continue
            if abs(ordered[j][0].conjugate() - r) <= EXP_MERGE_TOL:
                partner = j
                break
        if partner is None:
            raise NotConjugateClosed(
                f"root {r!r} has no conjugate partner of equal multiplicity")
        used[partner] = True
        top = r if r.imag > 0 else ordered[partner][0]
        bot = ordered[partner][0] if r.imag > 0 else r
        for power in range(m):
            plus = ExpPoly.term(top, monomial(power))
            minus = ExpPoly.term(bot, monomial(power))
            basis.append((plus + minus).scale(0.5))
            basis.append((plus - minus).scale(complex(0.0, -0.5)))
    constants = tuple(f"C{k + 1}" for k in range(len(basis)))
    return HomogeneousSolution(tuple(basis), constants)


def _without_homogeneous_part(y: ExpPoly, factored: FactoredOp) -> ExpPoly:
    out = []
    for lam, p in y.terms:
        mult = 0
        for r, m in factored.factors:
            if abs(lam - r) <= EXP_MERGE_TOL:
                mult = m
                break
        if mult:
            p = Poly(tuple(0j if k < mult else c for k, c in enumerate(p.coeffs)))
        if not p.is_zero:
            out.append((lam, p))
    return ExpPoly(tuple(out))


def particular_solution(factored: FactoredOp, rhs: ExpPoly) -> ExpPoly:
    """One concrete solution of L[y] = rhs, free of homogeneous admixtures.

    Each rhs term is pushed through the factor groups independently; a term
    keeps its exponent the whole way, so superposition is literal.  When the
    term's exponent hits a root (resonance), the shifted exponent cancels to
    zero and the plain polynomial integration raises the degree by that
    root's multiplicity.
    """
    total = ExpPoly.zero()
    for lam, p in rhs.terms:
        g = ExpPoly.term(lam, p)
        for r, m in factored.factors:
            g = g.shift_exponent(-r).nth_antiderivative(m).shift_exponent(r)
        total = total + g
    return _without_homogeneous_part(total, factored)


def ansatz_form(factored: FactoredOp, b: complex, j: int) -> AnsatzForm:
    if j < 0:
        raise ValueError("polynomial degree must be nonnegative")
    resonance = 0
    for r, m in factored.factors:
        if abs(complex(b) - r) <= EXP_MERGE_TOL:
            resonance = m
            break
    return AnsatzForm(complex(b), resonance, int(j) + resonance)


def fit_initial_conditions(solution: FullSolution,
                           conditions) -> ExpPoly:
    """Pin the free constants against values y^(d)(x0) = v.

    Needs exactly n conditions (n = basis size), all at one point, derivative
    orders 0..n-1 each appearing once.  Raises SingularSystem when the linear
    solve fails or leaves a residual above 1e-9.
    """
    basis = solution.homogeneous.basis
    n = len(basis)
    conds = [(int(d), complex(x0), complex(v)) for d, x0, v in conditions]
    if len(conds) != n:
        raise ValueError(f"need exactly {n} initial conditions, got {len(conds)}")
    x0 = conds[0][1]
    if any(c[1] != x0 for c in conds):
        raise ValueError("all initial conditions must share one point")
    if sorted(c[0] for c in conds) != list(range(n)):
        raise ValueError("derivative orders must be 0..n-1, each exactly once")

    derivs: list[list[ExpPoly]] = [list(basis)]
    part_derivs = [solution.particular]
    for _ in range(max((c[0] for c in conds), default=0)):
        derivs.append([f.derivative() for f in derivs[-1]])
        part_derivs.append(part_derivs[-1].derivative())

    rows = []
    vals = []
    for d, _, v in conds:
        rows.append([derivs[d][j](x0) for j in range(n)])
        vals.append(v - part_derivs[d](x0))
    matrix = np.array(rows, dtype=complex)
    target = np.array(vals, dtype=complex)
    try:
        coeff = np.linalg.solve(matrix, target)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    residual = float(np.max(np.abs(matrix @ coeff - target)))
    if residual > 1e-9 * (1.0 + float(np.max(np.abs(target)))):
        raise SingularSystem(f"initial-condition solve left residual {residual:.3e}")

    fitted = solution.particular
    for j in range(n):
        fitted = fitted + basis[j].scale(complex(coeff[j]))
    return fitted


@dataclass(frozen=True)
class VerifyReport:
    """Back-substitution residuals, both normalized against the forcing term."""

    symbolic: float
    pointwise: float

    def within(self, tol: float = 1e-8) -> bool:
        return self.symbolic <= tol and self.pointwise <= tol


def verify_solution(op: LinOp | FactoredOp, f: ExpPoly, y: ExpPoly,
                    points: int = 50, span: tuple[float, float] = (-1.0, 1.0)
                    ) -> VerifyReport:
    """Apply the operator to y and compare against f, twice.

    The symbolic residual is the largest coefficient of L[y] - f; the
    pointwise residual samples the same difference on a uniform grid.  Both
    are scaled by the size of f, so 'verified' means small relative error.
    """
    if points < 2:
        raise ValueError("need at least 2 sample points")
    residual = apply_op(op, y) - f
    symbolic = residual.max_coeff() / (1.0 + f.max_coeff())
    a, b = span
    worst = 0.0
    for k in range(points):
        x = a + (b - a) * k / (points - 1)
        err = abs(residual(x)) / (1.0 + abs(f(x)))
        if err > worst:
            worst = err
    return VerifyReport(symbolic, worst)


def wronskian_determinant(basis, x0: float = 0.0) -> float:
    """|det| of the derivative matrix of the basis at x0, rows normalized.

    A numerically nonzero value certifies linear independence of the basis.
    """
    n = len(basis)
    if n == 0:
        raise ValueError("basis must be nonempty")
    rows = []
    current = list(basis)
    for _ in range(n):
        row = [f(x0) for f in current]
        top = max(abs(v) for v in row)
        if top == 0.0:
            return 0.0
        rows.append([v / top for v in row])
        current = [f.derivative() for f in current]
    return float(abs(np.linalg.det(np.array(rows, dtype=complex))))
