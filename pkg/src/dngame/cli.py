"""Command-line entry point.

Exit codes: 0 success, 1 reference-check failure, 2 parse error,
3 domain error, 4 incomplete case coverage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dnumbers as dn
from . import formats, render
from .errors import DNGameError, IncompleteCoverageError, ParseError
from .game import from_document as game_from_document
from .pipeline import analyze_game, evaluate_case, run_scenario
from .reproduce import GROUPS, run_checks

EXIT_OK, EXIT_CHECKS, EXIT_PARSE, EXIT_DOMAIN, EXIT_COVERAGE = 0, 1, 2, 3, 4


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, IncompleteCoverageError):
        return EXIT_COVERAGE
    return EXIT_DOMAIN


def _error_line(exc: Exception, code: int, fmt: str) -> str:
    rec = {
        "error": type(exc).__name__,
        "exit": code,
        "path": getattr(exc, "path", ""),
        "message": str(exc),
    }
    if isinstance(exc, IncompleteCoverageError):
        rec["missing"] = [f"{p}|{o}" for p, o in exc.missing]
    if fmt == "json":
        return json.dumps(rec)
    fields = " ".join(f"{k}={json.dumps(v)}" for k, v in rec.items() if k != "message")
    return f"error: {fields} message={json.dumps(str(exc))}"


def cmd_nonexcl(args) -> int:
    scale = formats.load_scale(args.scale)
    M = scale.nonexclusivity()
    print(render.matrix_json(M) if args.format == "json" else render.matrix_table(M))
    return EXIT_OK


def cmd_combine(args) -> int:
    frame, ds = formats.load_dnumbers(args.dnumbers)
    if len(ds) < 2:
        raise ParseError("need at least two D numbers to combine", f"{args.dnumbers}.dnumbers")
    M = formats.load_matrix(args.matrix, frame)
    steps = []
    acc = ds[0]
    for i, D in enumerate(ds[1:], start=1):
        try:
            acc, k = dn.ecr_combine_with_conflict(acc, D, M)
        except DNGameError as exc:
            raise type(exc)(f"step {i}: {exc}") from exc
        steps.append((k, acc))
    out = render.combine_json(frame, steps) if args.format == "json" else render.combine_table(frame, steps)
    print(out)
    return EXIT_OK


def cmd_run(args) -> int:
    doc = formats.read_json(args.scenario)
    if isinstance(doc, dict) and "payoffs" in doc:
        if args.column:
            raise ParseError("--column needs a scenario document, not a game", args.scenario)
        report = analyze_game(game_from_document(doc, args.scenario))
    else:
        spec = formats.parse_scenario(doc, args.scenario)
        if args.column:
            case = spec.find_case(args.column, args.player)
            res = evaluate_case(case, spec)
            print(render.case_json(res) if args.format == "json" else render.case_table(res))
            return EXIT_OK
        report = run_scenario(spec, workers=args.workers)
    print(render.report_json(report) if args.format == "json" else render.report_table(report))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    checks = run_checks(only=args.only, tolerance=args.tolerance)
    print(render.checks_json(checks) if args.format == "json" else render.checks_table(checks))
    return EXIT_OK if all(ch.passed for ch in checks) else EXIT_CHECKS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS,
                        help="override every numeric check tolerance")

    p = argparse.ArgumentParser(prog="dngame", parents=[common],
                                description="D-number fusion and bimatrix equilibria for linguistic evaluations")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nonexcl", parents=[common], help="non-exclusivity matrix of a linguistic scale")
    s.add_argument("scale", help="JSON scale document {label: [a1, a2, a3]}")
    s.set_defaults(func=cmd_nonexcl)

    s = sub.add_parser("combine", parents=[common], help="left-fold ECR combination of D numbers")
    s.add_argument("dnumbers", help="JSON {theta, dnumbers}")
    s.add_argument("matrix", help="JSON {labels, matrix} non-exclusivity matrix")
    s.set_defaults(func=cmd_combine)

    s = sub.add_parser("run", parents=[common], help="evaluate a scenario or analyse a ready-made game")
    s.add_argument("scenario", help="scenario or game JSON document")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--column", metavar="CASE", help="one payoff column, named by the opponent strategy")
    mode.add_argument("--full", action="store_true", help="whole game (default)")
    s.add_argument("--player", help="evaluated player when --column is ambiguous")
    s.add_argument("--workers", type=int, default=None, help="threads for per-case evaluation")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("reproduce-paper", parents=[common], help="check bundled reference values")
    s.add_argument("--only", choices=GROUPS, help="run a single check group")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # shared option actions must keep SUPPRESS defaults, so fill them in here
    args.format = getattr(args, "format", "table")
    args.tolerance = getattr(args, "tolerance", None)
    try:
        return args.func(args)
    except DNGameError as exc:
        code = _exit_code(exc)
        print(_error_line(exc, code, args.format), file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
