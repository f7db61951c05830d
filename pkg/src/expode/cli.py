"""Command line interface.

Two subcommands:

    expode solve "y'' - 2*y' + y = 0" [--real] [--ivp "y(0)=1, y'(0)=0"]
                                      [--roots "1:2"] [--json]
                                      [--verify-points N]
    expode verify "y' - y = exp(x)" "x*exp(x)" [--json] [--verify-points N]

Exit codes: 0 solved/verified, 1 verification failed, 2 bad input or usage,
3 numerical failure (root finding did not converge, singular fit).
"""

from __future__ import annotations

import argparse
import json
import sys

from .cpoly import NonConvergence, coefficients_match
from .exppoly import ExpPoly, NotConjugateClosed
from .operators import FactoredOp, LinOp, factor_op
from .parsing import (
    EquationError,
    ParseError,
    compile_equation,
    format_constant,
    parse_constant,
    parse_exppoly,
    parse_initial_conditions,
    render,
    render_poly,
)
from .solve import (
    FullSolution,
    SingularSystem,
    fit_initial_conditions,
    homogeneous_solution,
    particular_solution,
    real_homogeneous_solution,
    verify_solution,
)

RESIDUAL_TOL = 1e-8


def _fnum(v: float) -> str:
    v = float(v)
    if v == 0.0:
        v = 0.0  # drop the sign of negative zero
    return format(v, ".15g")


def _fcomplex(z: complex) -> list[str]:
    return [_fnum(z.real), _fnum(z.imag)]


def _needs_parens(text: str) -> bool:
    return " + " in text or " - " in text or text.startswith("-")


def _c_times(name: str, body: str) -> str:
    if body == "1":
        return name
    if _needs_parens(body):
        return f"{name}*({body})"
    return f"{name}*{body}"


def _factored_from_user(op: LinOp, text: str) -> FactoredOp:
    """Validate user-supplied 'root:mult, ...' against the operator."""
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        root_text, sep, mult_text = chunk.rpartition(":")
        if not sep or not root_text.strip():
            raise ValueError(
                f"--roots entries look like 'root:multiplicity', got {chunk!r}")
        root = parse_constant(root_text.strip())
        try:
            mult = int(mult_text.strip())
        except ValueError:
            raise ValueError(f"bad multiplicity in {chunk!r}") from None
        pairs.append((root, mult))
    factored = FactoredOp(tuple(pairs))
    if factored.order != op.order:
        raise ValueError("--roots multiplicities must sum to the operator order")
    if not coefficients_match(factored.char_poly(), op.char_poly()):
        raise ValueError(
            "--roots does not reproduce the characteristic polynomial")
    return factored


def cmd_solve(args: argparse.Namespace) -> int:
    op, rhs = compile_equation(args.equation)
    if args.roots is not None:
        factored = _factored_from_user(op, args.roots)
    else:
        factored = factor_op(op)
    pairs = sorted(factored.factors, key=lambda rm: (rm[0].real, rm[0].imag))

    hom = homogeneous_solution(factored)
    display_basis = (real_homogeneous_solution(factored).basis
                     if args.real else hom.basis)
    part = particular_solution(factored, rhs)

    reports = [verify_solution(op, ExpPoly.zero(), b, points=args.verify_points)
               for b in display_basis]
    reports.append(verify_solution(op, rhs, part, points=args.verify_points))

    fitted = None
    if args.ivp is not None:
        conditions = parse_initial_conditions(args.ivp)
        fitted = fit_initial_conditions(FullSolution(hom, part), conditions)
        reports.append(verify_solution(op, rhs, fitted,
                                       points=args.verify_points))

    sym = max(r.symbolic for r in reports)
    pw = max(r.pointwise for r in reports)
    ok = sym <= RESIDUAL_TOL and pw <= RESIDUAL_TOL
    status = "verified" if ok else "unverified"

    basis_text = [render(b, realify=args.real) for b in display_basis]
    part_text = render(part, realify=args.real)
    fitted_text = None if fitted is None else render(fitted, realify=args.real)

    if args.json:
        doc = {
            "equation": args.equation,
            "char_poly": [_fcomplex(c) for c in op.char_poly().coeffs],
            "roots": [_fcomplex(r) for r, _ in pairs],
            "multiplicities": [m for _, m in pairs],
            "homogeneous_basis": basis_text,
            "particular": part_text,
            "fitted": fitted_text,
            "residual_symbolic": _fnum(sym),
            "residual_pointwise": _fnum(pw),
            "status": status,
        }
        print(json.dumps(doc, indent=2))
        return 0 if ok else 1

    combo = " + ".join(_c_times(name, text)
                       for name, text in zip(hom.constants, basis_text))
    if not part.is_zero:
        combo += " + " + (f"({part_text})" if _needs_parens(part_text)
                          else part_text)
    print(f"equation: {args.equation}")
    print(f"characteristic polynomial: {render_poly(op.char_poly(), 'r')}")
    print("roots:")
    for r, m in pairs:
        print(f"  {format_constant(r)}  (multiplicity {m})")
    print("homogeneous basis:")
    for text in basis_text:
        print(f"  {text}")
    print(f"particular solution: {part_text}")
    print(f"general solution: {combo}")
    if fitted_text is not None:
        print(f"fitted solution: {fitted_text}")
    print(f"residual (symbolic): {sym:.3e}")
    print(f"residual (pointwise): {pw:.3e}")
    print(f"status: {status}")
    return 0 if ok else 1


def cmd_verify(args: argparse.Namespace) -> int:
    op, rhs = compile_equation(args.equation)
    candidate = parse_exppoly(args.candidate)
    report = verify_solution(op, rhs, candidate, points=args.verify_points)
    ok = report.within(RESIDUAL_TOL)
    status = "verified" if ok else "unverified"
    if args.json:
        doc = {
            "equation": args.equation,
            "candidate": args.candidate,
            "residual_symbolic": _fnum(report.symbolic),
            "residual_pointwise": _fnum(report.pointwise),
            "status": status,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"equation: {args.equation}")
        print(f"candidate: {render(candidate)}")
        print(f"residual (symbolic): {report.symbolic:.3e}")
        print(f"residual (pointwise): {report.pointwise:.3e}")
        print(f"status: {status}")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expode",
        description="Solve linear constant-coefficient ODEs in closed form.")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve an equation")
    ps.add_argument("equation", help="equation text, e.g. \"y'' + y = exp(x)\"")
    ps.add_argument("--real", action="store_true",
                    help="present the solution over cos/sin instead of "
                         "complex exponentials")
    ps.add_argument("--ivp", metavar="CONDS",
                    help="initial conditions, e.g. \"y(0)=1, y'(0)=0\"")
    ps.add_argument("--roots", metavar="ROOTS",
                    help="skip root finding; comma-separated root:multiplicity "
                         "pairs, e.g. \"1:2, -1:1\"")
    ps.add_argument("--json", action="store_true", help="machine-readable output")
    ps.add_argument("--verify-points", type=int, default=50, metavar="N",
                    help="grid size for the pointwise residual check")
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("verify", help="check a candidate solution")
    pv.add_argument("equation")
    pv.add_argument("candidate", help="expression to test, e.g. \"x*exp(x)\"")
    pv.add_argument("--json", action="store_true", help="machine-readable output")
    pv.add_argument("--verify-points", type=int, default=50, metavar="N")
    pv.set_defaults(func=cmd_verify)
    return parser


def _print_parse_error(exc: ParseError) -> None:
    print(f"error: {exc}", file=sys.stderr)
    if exc.source is not None and exc.pos is not None:
        print(f"  {exc.source}", file=sys.stderr)
        print("  " + " " * exc.pos + "^", file=sys.stderr)
    if exc.expected:
        print("  expected: " + ", ".join(exc.expected), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _print_parse_error(exc)
        return 2
    except (EquationError, NotConjugateClosed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergence, SingularSystem) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
