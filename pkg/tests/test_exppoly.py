"""Exponential-polynomial algebra, calculus, and realification."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expode import (
    EXP_MERGE_TOL,
    ExpPoly,
    NotConjugateClosed,
    Poly,
    coeff_distance,
    realify,
)
from strategies import GRID, complex_coeffs, ep_close, exppolys, nonzero_polys


# ------------------------------------------------------- representation

def test_canonical_merges_nearby_exponents():
    f = ExpPoly(((0j, Poly([1])), (1e-12 + 0j, Poly([1]))))
    assert len(f.terms) == 1
    assert f.terms[0][1].coeffs == (2 + 0j,)


def test_canonical_drops_zero_polys():
    f = ExpPoly(((1 + 0j, Poly([0])), (0j, Poly([3]))))
    assert len(f.terms) == 1
    assert f.terms[0][0] == 0j


def test_terms_sorted_by_exponent():
    f = ExpPoly(((2 + 0j, Poly([1])), (-1 + 0j, Poly([1])), (1j, Poly([1]))))
    assert [lam for lam, _ in f.terms] == [-1 + 0j, 1j, 2 + 0j]


def test_relative_coefficient_cleanup():
    # dust far below the term's own scale disappears
    f = ExpPoly.term(1 + 0j, Poly([1e-15, 1.0]))
    assert f.terms[0][1].coeffs == (0j, 1 + 0j)


def test_constructors():
    assert ExpPoly.zero().is_zero
    assert ExpPoly.constant(0).is_zero
    assert ExpPoly.constant(2 + 1j).terms == ((0j, Poly([2 + 1j])),)
    assert ExpPoly.from_poly(Poly([0, 1])).terms == ((0j, Poly([0, 1])),)


def test_term_at():
    f = ExpPoly.term(1 + 0j, Poly([2])) + ExpPoly.constant(5)
    assert f.term_at(1 + 0j) == Poly([2])
    assert f.term_at(1 + 1e-12) == Poly([2])
    assert f.term_at(3 + 0j) is None


def test_equality_is_canonical():
    a = ExpPoly.term(1 + 0j, Poly([1])) + ExpPoly.term(2 + 0j, Poly([1]))
    b = ExpPoly.term(2 + 0j, Poly([1])) + ExpPoly.term(1 + 0j, Poly([1]))
    assert a == b


# ------------------------------------------------------------- algebra

def test_product_expands_exponents():
    # (exp(x) + x) * exp(-x) = 1 + x*exp(-x)
    f = ExpPoly.term(1 + 0j, Poly([1])) + ExpPoly.from_poly(Poly([0, 1]))
    g = ExpPoly.term(-1 + 0j, Poly([1]))
    prod = f * g
    assert prod.term_at(0j) == Poly([1])
    assert prod.term_at(-1 + 0j) == Poly([0, 1])


def test_scale_by_zero():
    assert ExpPoly.constant(3).scale(0).is_zero


def test_shift_exponent():
    f = ExpPoly.term(1 + 0j, Poly([0, 1]))
    g = f.shift_exponent(-1 - 1j)
    assert g.terms[0][0] == -1j
    assert g.terms[0][1] == Poly([0, 1])


@given(f=exppolys, g=exppolys, x=st.floats(-1, 1))
def test_eval_respects_ring_ops(f, g, x):
    scale = 1 + abs(f(x)) + abs(g(x))
    assert abs((f + g)(x) - (f(x) + g(x))) <= 1e-9 * scale
    assert abs((f * g)(x) - f(x) * g(x)) <= 1e-7 * (1 + abs(f(x)) * abs(g(x)))


def test_eval_against_cmath():
    # f = (2+i) x^2 e^{(1+i)x} at x = 0.7
    f = ExpPoly.term(1 + 1j, Poly([0, 0, 2 + 1j]))
    x = 0.7
    want = (2 + 1j) * x * x * cmath.exp((1 + 1j) * x)
    assert abs(f(x) - want) <= 1e-12 * abs(want)


# ------------------------------------------------------------ calculus

def test_derivative_of_monomial_times_exp():
    # d/dx [x e^x] = (1+x) e^x
    f = ExpPoly.term(1 + 0j, Poly([0, 1]))
    assert f.derivative() == ExpPoly.term(1 + 0j, Poly([1, 1]))


def test_antiderivative_resonant_example():
    # integral of x e^x is (x-1) e^x, constant dropped
    f = ExpPoly.term(1 + 0j, Poly([0, 1]))
    g = f.antiderivative()
    assert ep_close(g, ExpPoly.term(1 + 0j, Poly([-1, 1])), 1e-12)
    assert ep_close(g.derivative(), f, 1e-12)


def test_antiderivative_zero_exponent():
    # integral of x^2 is x^3/3
    f = ExpPoly.from_poly(Poly([0, 0, 1]))
    g = f.antiderivative()
    assert g == ExpPoly.from_poly(Poly([0, 0, 0, 1 / 3]))


def test_nth_antiderivative():
    f = ExpPoly.term(1 + 0j, Poly([1]))
    assert ep_close(f.nth_antiderivative(3), f, 1e-12)
    g = ExpPoly.constant(2)
    assert g.nth_antiderivative(2) == ExpPoly.from_poly(Poly([0, 0, 1]))


def test_antiderivative_of_zero():
    assert ExpPoly.zero().antiderivative().is_zero


@given(f=exppolys)
def test_derivative_then_antiderivative_is_identity(f):
    assert ep_close(f.antiderivative().derivative(), f, 1e-10)


@given(lam=st.sampled_from(GRID), j=st.integers(0, 4),
       c=complex_coeffs.filter(lambda z: abs(z) > 1e-3))
def test_antiderivative_degree_law(lam, j, c):
    # single monomial term c x^j e^{lam x}
    f = ExpPoly.term(lam, Poly((0j,) * j + (c,)))
    g = f.antiderivative()
    assert len(g.terms) == 1
    glam, gp = g.terms[0]
    assert abs(glam - lam) <= EXP_MERGE_TOL
    if abs(lam) <= EXP_MERGE_TOL:
        assert gp.degree == j + 1
    else:
        assert gp.degree == j


@given(f=exppolys, g=exppolys, a=complex_coeffs, b=complex_coeffs)
def test_antiderivative_linearity(f, g, a, b):
    lhs = (f.scale(a) + g.scale(b)).antiderivative()
    rhs = f.antiderivative().scale(a) + g.antiderivative().scale(b)
    assert ep_close(lhs, rhs, 1e-10)


@settings(max_examples=40)
@given(f=exppolys, x=st.floats(-1, 1))
def test_derivative_matches_central_difference(f, x):
    h = 1e-5
    numeric = (f(x + h) - f(x - h)) / (2 * h)
    exact = f.derivative()(x)
    assert abs(exact - numeric) <= 1e-4 * (1 + abs(exact))


# ---------------------------------------------------------- realification

def test_realify_sin_pair():
    # (e^{(1+2i)x} - e^{(1-2i)x}) / 2i = e^x sin(2x)
    f = (ExpPoly.term(1 + 2j, Poly([1])) -
         ExpPoly.term(1 - 2j, Poly([1]))).scale(1 / 2j)
    t = realify(f)
    assert len(t.entries) == 1
    alpha, beta, cos_part, sin_part = t.entries[0]
    assert alpha == 1.0 and beta == 2.0
    assert cos_part.is_zero
    assert sin_part == Poly([1])
    for x in (0.1, 0.7, 1.3):
        assert abs(t(x) - math.exp(x) * math.sin(2 * x)) < 1e-12


def test_realify_cos_pair():
    f = (ExpPoly.term(1j, Poly([1])) + ExpPoly.term(-1j, Poly([1]))).scale(0.5)
    t = realify(f)
    assert len(t.entries) == 1
    alpha, beta, cos_part, sin_part = t.entries[0]
    assert alpha == 0.0 and beta == 1.0
    assert cos_part == Poly([1])
    assert sin_part.is_zero


def test_realify_passes_real_terms_through():
    f = ExpPoly.from_poly(Poly([0, 0, 1])) + ExpPoly.term(1 + 0j, Poly([2]))
    t = realify(f)
    assert [(e[0], e[1]) for e in t.entries] == [(0.0, 0.0), (1.0, 0.0)]
    assert t.entries[0][2] == Poly([0, 0, 1])
    assert t.entries[1][2] == Poly([2])


def test_realify_rejects_lone_complex_exponent():
    with pytest.raises(NotConjugateClosed):
        realify(ExpPoly.term(1j, Poly([1])))


def test_realify_rejects_imaginary_coefficient_at_real_exponent():
    with pytest.raises(NotConjugateClosed):
        realify(ExpPoly.term(1 + 0j, Poly([1j])))


def test_realify_rejects_mismatched_pair():
    f = ExpPoly.term(1j, Poly([1])) + ExpPoly.term(-1j, Poly([0, 1]))
    with pytest.raises(NotConjugateClosed):
        realify(f)


def test_realify_zero():
    assert realify(ExpPoly.zero()).entries == ()


@given(f=exppolys, x=st.floats(-1, 1))
def test_realified_sum_with_conjugate_evaluates_real(f, x):
    conj_terms = tuple((lam.conjugate(),
                        Poly(tuple(c.conjugate() for c in p.coeffs)))
                       for lam, p in f.terms)
    closed = f + ExpPoly(conj_terms)
    t = realify(closed)
    want = closed(x)
    assert abs(want.imag) <= 1e-9 * (1 + abs(want))
    assert abs(t(x) - want.real) <= 1e-9 * (1 + abs(want))


def test_coeff_distance():
    f = ExpPoly.constant(1)
    g = ExpPoly.constant(1 + 1e-12)
    assert coeff_distance(f, g) <= 1e-11
    assert coeff_distance(f, ExpPoly.constant(2)) == pytest.approx(1.0)
