"""Command-line front end: catalog listing, verification drivers,
expression expansion, series computation, and exact evaluation.

Exit codes: 0 all pass, 1 at least one verification failure, 2 usage or
syntax error, 3 evaluation error (pole, constraint, exhaustion).
Machine-readable records normalize the millis field to 0 so runs with
equal seeds are byte-identical; failing '.printed' rows of documented
erratum candidates do not fail the run.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import rational
from .errors import (ConstraintViolation, DivisionByZero, Exhausted,
                     IdenticallyZeroDenominator, NegativeQDegree,
                     NonInvertibleAtQZero, ParseError, PoleError)
from .parser import eval_expr, eval_expr_series, latex_expr, parse
from .registry import catalog, catalog_by_id, run_passed, verify_entry
from .series import limit_ids, limit_title, verify_limit

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

_EVAL_ERRORS = (PoleError, DivisionByZero, IdenticallyZeroDenominator,
                NonInvertibleAtQZero, NegativeQDegree, Exhausted,
                ConstraintViolation, ZeroDivisionError)


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qfine",
        description="Exact verification harness for finite Fine-function identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print catalog ids, titles, and source anchors")

    pv = sub.add_parser("verify", help="verify catalog identities")
    group = pv.add_mutually_exclusive_group(required=True)
    group.add_argument("--id", help="single catalog id")
    group.add_argument("--all", action="store_true", help="whole catalog")
    pv.add_argument("--n-max", type=int, default=4, help="largest N in the grid")
    pv.add_argument("--mode", choices=("symbolic", "sampled"), default="symbolic")
    pv.add_argument("--seed", type=int, default=1, help="sampling seed")
    pv.add_argument("--format", choices=("text", "records"), default="text")
    pv.add_argument("--threads", type=int, default=1,
                    help="accepted for compatibility; execution is serial")

    pe = sub.add_parser("expand", help="expand an expression to canonical form")
    pe.add_argument("--expr", required=True)
    pe.add_argument("--format", choices=("text", "latex"), default="text")

    ps = sub.add_parser("series", help="q-series expansion / limit verification")
    group = ps.add_mutually_exclusive_group(required=True)
    group.add_argument("--limit-id", help="one of: " + ", ".join(limit_ids()))
    group.add_argument("--expr")
    ps.add_argument("--order", type=int, default=8, help="truncation order D")

    pev = sub.add_parser("eval", help="evaluate an expression (optionally at a point)")
    pev.add_argument("--expr", required=True)
    pev.add_argument("--at", help="point, e.g. q=1/2,a=1/3,b=1/5,t=1/7")
    return ap


def _parse_point(text: str) -> dict:
    point = {}
    for item in text.split(","):
        if "=" not in item:
            raise ValueError(f"bad assignment {item!r}")
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in ("q", "a", "b", "t"):
            raise ValueError(f"unknown variable {name!r}")
        value = value.strip()
        if "/" in value:
            num, _, den = value.partition("/")
            point[name] = rational(int(num), int(den))
        else:
            point[name] = rational(int(value))
    missing = [n for n in ("q", "a", "b", "t") if n not in point]
    if missing:
        raise ValueError(f"point must assign all four variables; missing {missing}")
    return point


def _cmd_list() -> int:
    for entry in catalog():
        flag = "  [erratum-candidate]" if entry.erratum_candidate else ""
        print(f"{entry.id:9s} {entry.title} -- {entry.source}{flag}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.id:
        entries = catalog_by_id()
        if args.id not in entries:
            print(f"unknown identity id {args.id!r}", file=sys.stderr)
            return EXIT_USAGE
        chosen = [entries[args.id]]
    else:
        chosen = catalog()
    reports = []
    for entry in chosen:
        reports.extend(verify_entry(entry, args.n_max, args.mode, args.seed,
                                    threads=args.threads))
    for r in reports:
        print(r.record_line() if args.format == "records" else r.text_line())
    if args.format == "text":
        counts = {}
        for r in reports:
            counts[r.outcome] = counts.get(r.outcome, 0) + 1
        summary = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
        print(f"-- {len(reports)} checks ({summary})", file=sys.stderr)
    return EXIT_OK if run_passed(reports) else EXIT_FAIL


def _cmd_expand(args) -> int:
    ast = parse(args.expr)
    if args.format == "latex":
        print(latex_expr(ast))
        return EXIT_OK
    print(eval_expr(ast))
    return EXIT_OK


def _cmd_series(args) -> int:
    if args.limit_id:
        if args.limit_id not in limit_ids():
            print(f"unknown limit id {args.limit_id!r}; known: {', '.join(limit_ids())}",
                  file=sys.stderr)
            return EXIT_USAGE
        report = verify_limit(args.limit_id, args.order)
        print(report.text_line())
        print(f"-- {limit_title(args.limit_id)}", file=sys.stderr)
        return EXIT_OK if report.outcome == "pass" else EXIT_FAIL
    ast = parse(args.expr)
    print(eval_expr_series(ast, args.order))
    return EXIT_OK


def _cmd_eval(args) -> int:
    ast = parse(args.expr)
    value = eval_expr(ast)
    if args.at is None:
        print(value)
        return EXIT_OK
    try:
        point = _parse_point(args.at)
    except ValueError as exc:
        print(f"bad --at argument: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(value.eval(point))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        if args.command == "list":
            return _cmd_list()
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "expand":
            return _cmd_expand(args)
        if args.command == "series":
            return _cmd_series(args)
        if args.command == "eval":
            return _cmd_eval(args)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _EVAL_ERRORS as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
