"""Command-line interface.

Exit codes: 0 on success, 1 on verification failure (including ``equal``
reporting inequality), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .diagrams import ChordDiagram, DiagramError, DiagramSum
from .exprlang import (ExprError, evaluate_expression, fd_of_expression,
                       format_fraction, format_partition,
                       format_partition_vector, format_polynomial, format_sum,
                       parse_expr, parse_partition, partition_vector_to_json,
                       polynomial_to_json, sum_to_json)
from .feynman import FeynmanError, resolve_sum, stu_resolve, sym, tau
from .immanent import (alpha, alpha_weight_system, det_weight,
                       det_weight_system, immanent, intersection_matrix,
                       k_coefficients, perm_weight, perm_weight_system)
from .operators import (PolynomialityError, cable, cabling_polynomial, d_op,
                        deframe, s_op, theta_op)
from .quotient import (QuotientError, build_basis, dual_weights, reduce)
from .suites import SUITES, quotient_suite, run_suite, selftest


class UsageError(Exception):
    pass


def _sum_arg(text: str) -> DiagramSum:
    value = evaluate_expression(text)
    if isinstance(value, Fraction):
        raise UsageError("expression evaluates to a scalar, need a diagram sum")
    return value


def _weight(spec: str, degree: int):
    if spec == "det":
        return det_weight_system(degree)
    if spec == "perm":
        return perm_weight_system(degree)
    if spec.startswith("alpha:"):
        p = parse_partition(spec[len("alpha:"):])
        if sum(p) != degree:
            raise UsageError("alpha partition weight %d != degree %d"
                             % (sum(p), degree))
        return alpha_weight_system(p)
    if spec.startswith("dual:"):
        basis = build_basis(degree, cache_dir=_CACHE_DIR)
        k = int(spec[len("dual:"):])
        ws = dual_weights(basis)
        if not 0 <= k < len(ws):
            raise UsageError("dual index %d out of range 0..%d"
                             % (k, len(ws) - 1))
        return ws[k]
    raise UsageError("unknown weight spec %r "
                     "(use dual:<i>, det, perm or alpha:[p1,...])" % spec)


_CACHE_DIR = ".4tcache"


def _print_sum(v: DiagramSum, as_json: bool) -> None:
    print(sum_to_json(v) if as_json else format_sum(v))


def _print_checks(checks) -> int:
    failed = 0
    for c in checks:
        print("%s %s" % ("PASS" if c.passed else "FAIL", c.name))
        if not c.passed:
            failed += 1
    print("%d checks, %d failed" % (len(checks), failed))
    return 1 if failed else 0


def _run(args) -> int:
    global _CACHE_DIR
    _CACHE_DIR = args.cache_dir
    cmd = args.command

    if cmd == "dim":
        basis = build_basis(args.degree, cache_dir=_CACHE_DIR)
        print(json.dumps({"dim": basis.dim}) if args.json else basis.dim)
        return 0

    if cmd == "reduce":
        v = _sum_arg(args.expr)
        basis = build_basis(v.degree, cache_dir=_CACHE_DIR)
        coords = reduce(v, basis)
        if args.json:
            print(json.dumps({"coords": [format_fraction(c) for c in coords]}))
        else:
            print(" ".join(format_fraction(c) for c in coords))
        return 0

    if cmd == "equal":
        a = _sum_arg(args.left)
        b = _sum_arg(args.right)
        degree = a.degree if not a.is_zero() else b.degree
        if not a.is_zero() and not b.is_zero() and a.degree != b.degree:
            raise UsageError("degree mismatch: %d vs %d" % (a.degree, b.degree))
        basis = build_basis(degree, cache_dir=_CACHE_DIR)
        coords = reduce(a - b, basis)
        eq = all(c == 0 for c in coords)
        print(json.dumps({"equal": eq}) if args.json else str(eq).lower())
        return 0 if eq else 1

    if cmd == "cable":
        _print_sum(cable(_sum_arg(args.expr), args.n), args.json)
        return 0

    if cmd in ("deframe", "s", "theta", "d"):
        op = {"deframe": deframe, "s": s_op, "theta": theta_op, "d": d_op}[cmd]
        _print_sum(op(_sum_arg(args.expr)), args.json)
        return 0

    if cmd == "resolve":
        _print_sum(_sum_arg(args.expr), args.json)
        return 0

    if cmd == "sym":
        f = fd_of_expression(args.expr)
        _print_sum(resolve_sum(sym(f)), args.json)
        return 0

    if cmd == "tau":
        parts = parse_partition(args.partition)
        _print_sum(resolve_sum(tau(parts)), args.json)
        return 0

    if cmd == "im":
        node = parse_expr(args.diagram)
        if node[0] != "cd":
            raise UsageError("im needs a single cd literal")
        # the literal is used as written: the matrix depends on the break point
        pairs = node[1]
        M = intersection_matrix(list(pairs) if pairs else ChordDiagram(()))
        if args.json:
            print(json.dumps({"matrix": [list(r) for r in M]}))
        else:
            for row in M:
                print(" ".join("%2d" % x for x in row))
        return 0

    if cmd == "immanent":
        pv = immanent(_sum_arg(args.expr))
        print(partition_vector_to_json(pv) if args.json
              else format_partition_vector(pv))
        return 0

    if cmd in ("alexander", "permanent"):
        fn = det_weight if cmd == "alexander" else perm_weight
        v = _sum_arg(args.expr)
        val = sum((c * fn(d) for d, c in v.items()), Fraction(0))
        print(json.dumps({"value": format_fraction(val)}) if args.json
              else format_fraction(val))
        return 0

    if cmd == "alpha":
        parts = parse_partition(args.partition)
        v = _sum_arg(args.expr)
        val = alpha(parts, v)
        print(json.dumps({"value": format_fraction(val)}) if args.json
              else format_fraction(val))
        return 0

    if cmd == "kcoeffs":
        W = _weight(args.weight, args.degree)
        ks = k_coefficients(W)
        if args.json:
            print(json.dumps({format_partition(p): format_fraction(c)
                              for p, c in sorted(ks.items(), reverse=True)}))
        else:
            for p, c in sorted(ks.items(), reverse=True):
                print("%s %s" % (format_partition(p), format_fraction(c)))
        return 0

    if cmd == "cablepoly":
        W = _weight(args.weight, args.degree)
        v = _sum_arg(args.expr)
        if v.degree != args.degree and not v.is_zero():
            raise UsageError("expression degree %d != --degree %d"
                             % (v.degree, args.degree))
        poly = cabling_polynomial(W, v)
        print(polynomial_to_json(poly) if args.json
              else format_polynomial(poly))
        return 0

    if cmd == "verify":
        return _print_checks(run_suite(args.suite))

    if cmd == "selftest":
        return _print_checks(selftest())

    if cmd == "cache":
        if args.cache_command == "build":
            basis = build_basis(args.degree, cache_dir=_CACHE_DIR)
            print("degree %d: %d diagrams, dim %d"
                  % (args.degree, len(basis.diagrams), basis.dim))
            return 0
        raise UsageError("unknown cache command")

    raise UsageError("unknown command %r" % cmd)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chordalg",
        description="Exact workbench for chord diagram algebras, cabling "
                    "operators and immanent weight systems.")
    ap.add_argument("--cache-dir", default=".4tcache",
                    help="directory for 4T basis cache files")
    ap.add_argument("--json", action="store_true",
                    help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="dimension of the degree-m 4T quotient")
    p.add_argument("degree", type=int)

    p = sub.add_parser("reduce", help="coordinates of a sum in the quotient")
    p.add_argument("expr")

    p = sub.add_parser("equal", help="compare two sums modulo 4T")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("cable", help="n-th cabling of a sum")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("expr")

    for name, h in (("deframe", "apply the deframing projector"),
                    ("s", "sum over single chord deletions"),
                    ("theta", "connect-sum with a single chord"),
                    ("d", "double each chord: parallel minus crossed")):
        p = sub.add_parser(name, help=h)
        p.add_argument("expr")

    p = sub.add_parser("resolve", help="evaluate an expression "
                                       "(fd literals resolve by STU)")
    p.add_argument("expr")

    p = sub.add_parser("sym", help="resolved sum over all leg orderings "
                                   "of an fd literal")
    p.add_argument("expr")

    p = sub.add_parser("tau", help="resolved symmetrised loop union "
                                   "for a partition (parts >= 2)")
    p.add_argument("partition")

    p = sub.add_parser("im", help="intersection matrix of a cd literal, "
                                  "labelled as written")
    p.add_argument("diagram")

    p = sub.add_parser("immanent", help="universal immanent of a sum")
    p.add_argument("expr")

    p = sub.add_parser("alexander", help="determinant weight of a sum")
    p.add_argument("expr")

    p = sub.add_parser("permanent", help="permanent weight of a sum")
    p.add_argument("expr")

    p = sub.add_parser("alpha", help="immanent class functional")
    p.add_argument("partition")
    p.add_argument("expr")

    p = sub.add_parser("kcoeffs", help="loop-eigenvector pairing constants "
                                       "of a weight system")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--weight", required=True)

    p = sub.add_parser("cablepoly", help="deframed cabling polynomial")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("expr")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))

    sub.add_parser("selftest", help="run every verification suite")

    p = sub.add_parser("cache", help="basis cache management")
    casub = p.add_subparsers(dest="cache_command", required=True)
    pb = casub.add_parser("build", help="build and store the degree-m basis")
    pb.add_argument("degree", type=int)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _run(args)
    except (ExprError, DiagramError, FeynmanError, QuotientError, UsageError,
            ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except PolynomialityError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
