"""Command-line driver.

Subcommands: `run <file>` executes a session and prints the report,
`check <file> --statement <id>` prints one checklist verdict, `selftest`
runs the bundled corpus against its frozen values.

Exit codes: 0 success, 2 computation or input error, 3 corpus mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys

from .corpus import CORPUS, check_example
from .depth import STATEMENT_IDS
from .groebner import DegreeCapExceeded
from .ideals import CACHE_DIR_ENV, ContextMismatch, NotLocallyFinite
from .invariants import (InternalConsistencyError, NotAReductionWithinCap,
                         WindowTooSmall)
from .poly import PolyParseError
from .session import (SessionConfig, SessionSyntaxError, emit_report,
                      parse_session, report_tree, run_session)

JOBS_ENV = "FIBERCONE_JOBS"

_COMPUTATION_ERRORS = (
    SessionSyntaxError, PolyParseError, DegreeCapExceeded, NotLocallyFinite,
    ContextMismatch, NotAReductionWithinCap, InternalConsistencyError,
    WindowTooSmall, ValueError, OSError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibercone",
        description="Blowup-algebra invariants of m-primary ideals: "
                    "reduction numbers, length sums, Hilbert series of the "
                    "associated graded ring and the fiber cone, and depth "
                    "certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "structured"),
                       default="text", help="report output format")
        p.add_argument("--cap", type=int, default=None,
                       help="reduction-number search cap")
        p.add_argument("--nmax", type=int, default=None,
                       help="regularity-check window (default r + d + 2)")
        p.add_argument("--cache-dir", default=None,
                       help=f"Groebner cache directory "
                            f"(or ${CACHE_DIR_ENV})")
        p.add_argument("--jobs", type=int, default=None,
                       help=f"parallel checklist evaluation (or ${JOBS_ENV})")

    p_run = sub.add_parser("run", help="execute a session file")
    p_run.add_argument("file")
    common(p_run)

    p_check = sub.add_parser("check", help="evaluate one statement")
    p_check.add_argument("file")
    p_check.add_argument("--statement", required=True, choices=STATEMENT_IDS)
    common(p_check)

    p_self = sub.add_parser("selftest", help="run the bundled corpus")
    common(p_self)
    return parser


def _config(args) -> SessionConfig:
    cfg = SessionConfig()
    if args.cap is not None:
        cfg.reduction_cap = args.cap
    if args.nmax is not None:
        cfg.nmax = args.nmax
    cfg.cache_dir = args.cache_dir  # RingContext falls back to the env var
    jobs = args.jobs
    if jobs is None and os.environ.get(JOBS_ENV):
        jobs = int(os.environ[JOBS_ENV])
    if jobs is not None:
        if jobs < 1:
            raise ValueError("--jobs must be at least 1")
        cfg.jobs = jobs
    return cfg


def _run(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    report = run_session(parse_session(text), _config(args))
    sys.stdout.write(emit_report(report, args.format))
    return 0


def _check(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    ast = parse_session(text)
    if not any(d.kind in ("report", "check")
               or (d.kind == "compute" and d.argument == "checklist")
               for d in ast.directives):
        from .session import Directive
        ast = type(ast)(ast.ring, ast.ideals,
                        ast.directives + (Directive("check", args.statement, ()),))
    report = run_session(ast, _config(args))
    verdict = next(v for v in report.checklist
                   if v.statement_id == args.statement)
    if args.format == "structured":
        import json
        sys.stdout.write(json.dumps(
            {"id": verdict.statement_id,
             "hypothesis": verdict.hypothesis_holds,
             "verdict": verdict.conclusion,
             "detail": verdict.detail}, indent=2) + "\n")
    else:
        hyp = "holds" if verdict.hypothesis_holds else "does not hold"
        sys.stdout.write(f"{verdict.statement_id}: hypothesis {hyp}; "
                         f"{verdict.conclusion}\n  {verdict.detail}\n")
    return 0


def _selftest(args) -> int:
    cfg = _config(args)
    failed = False
    for name in sorted(CORPUS):
        report = run_session(parse_session(CORPUS[name]["session"]), cfg)
        problems = check_example(name, report_tree(report))
        if problems:
            failed = True
            print(f"{name}: FAIL")
            for p in problems:
                print(f"  {p}")
        else:
            print(f"{name}: ok ({report.timing_seconds:.1f}s)")
    return 3 if failed else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run(args)
        if args.command == "check":
            return _check(args)
        return _selftest(args)
    except _COMPUTATION_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
