"""Equation parsing, lowering, and rendering."""

import cmath

import pytest
from hypothesis import given, settings

from expode import (
    EquationError,
    ExpPoly,
    LinOp,
    NonlinearTerm,
    ParseError,
    Poly,
    UnknownOnRhs,
    UnsupportedForm,
    build_operator,
    compile_equation,
    format_constant,
    lower_rhs,
    parse_constant,
    parse_equation,
    parse_expression,
    parse_exppoly,
    parse_initial_conditions,
    render,
    render_poly,
)
from expode.parsing import Bin, Call, Neg, Num, VarX, YTerm
from strategies import ep_close, exppolys


def eval_ast(node, x):
    """Plain numeric evaluation of the raw tree, independent of ExpPoly."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, VarX):
        return complex(x)
    if isinstance(node, Neg):
        return -eval_ast(node.operand, x)
    if isinstance(node, Call):
        fn = {"exp": cmath.exp, "sin": cmath.sin, "cos": cmath.cos}[node.fn]
        return fn(eval_ast(node.arg, x))
    a = eval_ast(node.left, x)
    b = eval_ast(node.right, x)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return a / b
    return a ** b


# ------------------------------------------------------------- equations

def test_parse_standard_equation():
    ast = parse_equation("y'' + 2y' + y = x*exp(-x)")
    assert ast.lhs == ((2, 1 + 0j), (1, 2 + 0j), (0, 1 + 0j))


def test_parse_trivial_rhs():
    ast = parse_equation("y' = 0")
    assert ast.lhs == ((1, 1 + 0j),)
    assert lower_rhs(ast.rhs).is_zero


def test_caret_syntax_equals_primes():
    a = parse_equation("y^(3) - y = 0")
    b = parse_equation("y''' - y = 0")
    assert a.lhs == b.lhs == ((3, 1 + 0j), (0, -1 + 0j))


def test_power_of_y_is_nonlinear():
    with pytest.raises(NonlinearTerm):
        parse_equation("y^2 = 0")


def test_product_of_y_terms_is_nonlinear():
    with pytest.raises(NonlinearTerm):
        parse_equation("y*y' = 1")


def test_y_inside_function_is_nonlinear():
    with pytest.raises(NonlinearTerm):
        parse_equation("sin(y) = 0")


def test_division_by_y_is_nonlinear():
    with pytest.raises(NonlinearTerm):
        parse_equation("y/y = 1")


def test_y_on_rhs_moves_left():
    ast = parse_equation("y' = y")
    assert ast.lhs == ((1, 1 + 0j), (0, -1 + 0j))
    assert lower_rhs(ast.rhs).is_zero


def test_y_on_rhs_keeps_forcing():
    ast = parse_equation("y' = y + x")
    assert ast.lhs == ((1, 1 + 0j), (0, -1 + 0j))
    assert lower_rhs(ast.rhs) == ExpPoly.from_poly(Poly((0j, 1 + 0j)))


def test_y_on_rhs_distributed_constant():
    # the y part of 2*(y+1) moves left, the constant part stays as forcing
    ast = parse_equation("y' = 2*(y + 1)")
    assert ast.lhs == ((1, 1 + 0j), (0, -2 + 0j))
    assert lower_rhs(ast.rhs) == ExpPoly.constant(2 + 0j)


def test_y_terms_may_cancel_to_nothing():
    with pytest.raises(UnsupportedForm):
        parse_equation("y = y")


def test_y_on_rhs_with_x_coefficient_rejected():
    with pytest.raises(UnsupportedForm):
        parse_equation("y' = x*y")


def test_y_in_candidate_expression_rejected():
    with pytest.raises(UnknownOnRhs):
        parse_exppoly("y + 1")


def test_variable_coefficient_rejected():
    with pytest.raises(UnsupportedForm):
        parse_equation("x*y = 1")


def test_constant_residue_rejected():
    with pytest.raises(UnsupportedForm):
        parse_equation("y + 1 = 0")


def test_lhs_without_y_rejected():
    with pytest.raises(UnsupportedForm):
        parse_equation("1 = 0")


def test_coefficients_fold_constants():
    ast = parse_equation("(1+2)*y'' - exp(0)*y = 0")
    assert ast.lhs == ((2, 3 + 0j), (0, -1 + 0j))


def test_imaginary_coefficient():
    ast = parse_equation("2i*y' = 0")
    assert ast.lhs == ((1, 2j),)


def test_coefficient_division():
    ast = parse_equation("y''/2 = 0")
    assert ast.lhs == ((2, 0.5 + 0j),)


def test_build_operator_normalizes_leading():
    op, rhs = build_operator(parse_equation("2y'' + 4y = 2x"))
    assert op == LinOp((0j, 2 + 0j))
    assert rhs == ExpPoly.from_poly(Poly([0, 1]))


def test_build_operator_rejects_order_zero():
    with pytest.raises(UnsupportedForm):
        compile_equation("y = x")


def test_zero_coefficient_terms_drop_out():
    ast = parse_equation("y'' + 0*y' + y = 0")
    assert ast.lhs == ((2, 1 + 0j), (0, 1 + 0j))


# --------------------------------------------------------- juxtaposition

def test_numeric_coefficient_juxtaposition():
    assert parse_equation("2y' = 0").lhs == ((1, 2 + 0j),)
    f = parse_exppoly("exp(2x)")
    assert f == ExpPoly.term(2 + 0j, Poly([1]))


def test_juxtaposed_power_binds_like_multiplication():
    assert parse_exppoly("2x^2") == ExpPoly.from_poly(Poly([0, 0, 2]))
    assert parse_exppoly("2^2x") == ExpPoly.from_poly(Poly([0, 4]))


def test_name_juxtaposition_rejected():
    with pytest.raises(ParseError):
        parse_equation("x y = 0")
    with pytest.raises(ParseError):
        parse_exppoly("2(x+1)")
    with pytest.raises(ParseError):
        parse_equation("xy' = 0")


# -------------------------------------------------------------- lowering

def test_lower_cosine():
    f = parse_exppoly("cos(x)")
    assert f.term_at(1j) == Poly([0.5])
    assert f.term_at(-1j) == Poly([0.5])


def test_lower_monomial():
    f = parse_exppoly("x^2")
    assert f == ExpPoly.from_poly(Poly([0, 0, 1]))


def test_lower_mixed_product():
    # x e^{2x} sin(x) has exponents 2 +/- i with polynomial parts -/+ x/2i
    f = parse_exppoly("x*exp(2x)*sin(x)")
    assert len(f.terms) == 2
    assert f.term_at(2 + 1j) == Poly([0, -0.5j])
    assert f.term_at(2 - 1j) == Poly([0, 0.5j])


def test_lower_affine_arguments():
    f = parse_exppoly("exp(2x + 1)")
    assert len(f.terms) == 1
    lam, p = f.terms[0]
    assert lam == 2 + 0j
    assert abs(p.coeffs[0] - cmath.exp(1)) < 1e-15
    g = parse_exppoly("sin(2x - 1)")
    for x in (0.0, 0.3, 1.1):
        assert abs(g(x) - cmath.sin(2 * x - 1)) < 1e-12


def test_lower_constant_powers():
    assert parse_constant("2^3") == 8
    assert parse_constant("2^(-1)") == 0.5
    assert parse_constant("(1+i)^2") == 2j
    assert parse_exppoly("x^0") == ExpPoly.constant(1)


def test_lower_binomial_power():
    f = parse_exppoly("(1+x)^3")
    assert f == ExpPoly.from_poly(Poly([1, 3, 3, 1]))


def test_lower_division_by_constant():
    f = parse_exppoly("exp(x)/2")
    assert f == ExpPoly.term(1 + 0j, Poly([0.5]))


def test_lower_rejects_outside_class():
    with pytest.raises(UnsupportedForm):
        parse_exppoly("exp(x^2)")
    with pytest.raises(UnsupportedForm):
        parse_exppoly("1/x")
    with pytest.raises(UnsupportedForm):
        parse_exppoly("2^x")
    with pytest.raises(UnsupportedForm):
        parse_exppoly("x^1.5")
    with pytest.raises(UnsupportedForm):
        parse_exppoly("x^200")
    with pytest.raises(UnsupportedForm):
        parse_exppoly("1/0")
    with pytest.raises(UnknownOnRhs):
        parse_exppoly("y + 1")


@settings(max_examples=60)
@given(f=exppolys)
def test_lowering_matches_numeric_evaluation(f):
    ast = parse_expression(render(f))
    lowered = lower_rhs(ast)
    for k in range(20):
        x = -1.0 + k / 9.5
        direct = eval_ast(ast, x)
        assert abs(lowered(x) - direct) <= 1e-9 * (1 + abs(direct))


# ------------------------------------------------------------ diagnostics

def test_parse_error_position_and_expectations():
    with pytest.raises(ParseError) as exc:
        parse_equation("y'' + = 0")
    assert exc.value.pos == 6
    assert exc.value.expected
    assert exc.value.source == "y'' + = 0"


def test_unexpected_character_position():
    with pytest.raises(ParseError) as exc:
        parse_expression("x + $")
    assert exc.value.pos == 4


def test_trailing_input_rejected():
    with pytest.raises(ParseError):
        parse_expression("x + 1)")
    with pytest.raises(ParseError):
        parse_equation("y' = 0 = 0")


def test_unknown_name_rejected():
    with pytest.raises(ParseError) as exc:
        parse_expression("tan(x)")
    assert "tan" in str(exc.value)


def test_missing_equals_sign():
    with pytest.raises(ParseError):
        parse_equation("y'' + y")


def test_malformed_inputs_raise_structured_errors():
    bad = ["", "(", ")", "y''", "= 1", "y' == 0", "exp()", "exp(x",
           "y+'", "1..2", "y^() = 0", "--", "^2", "y'' ++= 0", "'"]
    for text in bad:
        with pytest.raises(EquationError) as exc:
            parse_equation(text)
        if isinstance(exc.value, ParseError):
            assert isinstance(exc.value.pos, int)


# ---------------------------------------------------- initial conditions

def test_parse_conditions_at_origin():
    conds = parse_initial_conditions("y(0)=1, y'(0)=0")
    assert conds == ((0, 0.0, 1 + 0j), (1, 0.0, 0j))


def test_parse_conditions_caret_and_values():
    conds = parse_initial_conditions("y^(2)(1)=-2, y(1)=1+2i")
    assert conds == ((2, 1.0, -2 + 0j), (0, 1.0, 1 + 2j))


def test_parse_conditions_errors():
    with pytest.raises(ParseError):
        parse_initial_conditions("z(0)=1")
    with pytest.raises(UnsupportedForm):
        parse_initial_conditions("y(i)=0")
    with pytest.raises(ParseError):
        parse_initial_conditions("y(0)=1,")
    with pytest.raises(UnsupportedForm):
        parse_initial_conditions("y(0)=x")


# ------------------------------------------------------------- rendering

def test_render_examples():
    assert render(ExpPoly.term(1 + 0j, Poly([0, 1]))) == "x*exp(x)"
    assert render(ExpPoly.zero()) == "0"
    assert render(ExpPoly.constant(1)) == "1"
    assert render(ExpPoly.term(-1 + 0j, Poly([2]))) == "2*exp(-x)"
    assert render(ExpPoly.term(1j, Poly([1]))) == "exp(i*x)"
    assert render(ExpPoly.term(1 + 1j, Poly([0, 0, -1]))) == "-x^2*exp((1+i)*x)"
    assert render(ExpPoly.from_poly(Poly([1, 0, 3]))) == "1 + 3*x^2"
    assert render(ExpPoly.from_poly(Poly([-1, -1]))) == "-1 - x"
    mixed = ExpPoly.term(2 + 0j, Poly([1, 1])) + ExpPoly.constant(4)
    assert render(mixed) == "4 + (1 + x)*exp(2*x)"


def test_render_realified():
    f = parse_exppoly("cos(x)")
    assert render(f, realify=True) == "cos(x)"
    g = parse_exppoly("exp(x)*sin(2x)") + parse_exppoly("x^2")
    assert render(g, realify=True) == "x^2 + sin(2*x)*exp(x)"


def test_render_poly():
    assert render_poly(Poly([1, 0, 1]), "r") == "1 + r^2"
    assert render_poly(Poly([0]), "r") == "0"
    assert render_poly(Poly([2j, -1]), "r") == "2i - r"


def test_format_constant():
    assert format_constant(2 + 0j) == "2"
    assert format_constant(-0.5 + 0j) == "-0.5"
    assert format_constant(1j) == "i"
    assert format_constant(-2j) == "-2i"
    assert format_constant(1 + 1j) == "(1+i)"
    assert format_constant(-1.5 - 2j) == "(-1.5-2i)"


@given(f=exppolys)
def test_render_parse_round_trip(f):
    assert ep_close(parse_exppoly(render(f)), f, 1e-10)
