"""Command line front end.

    pathcheck check --model model.json [--suites a1,a2,kan]
                    [--max-box-dim 3] [--max-objects 8]
                    [--max-morphisms 64] [--max-results 500000]
                    [--report out.json] [--markdown out.md]

Exit status: 0 when every selected suite passes or is skipped, 1 when
any suite fails, 2 for configuration problems (unreadable or invalid
model, unknown suite, bad bound).

The guard bounds can also be set through the environment as
PATHCHECK_MAX_BOX_DIM, PATHCHECK_MAX_OBJECTS, PATHCHECK_MAX_MORPHISMS
and PATHCHECK_MAX_RESULTS; explicit flags win over the environment.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .modelspec import SUITE_ORDER, ModelSpecError, load_model
from .suites import run_suites

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_GUARD_FLAGS = (
    ("max_box_dim", "PATHCHECK_MAX_BOX_DIM"),
    ("max_objects", "PATHCHECK_MAX_OBJECTS"),
    ("max_morphisms", "PATHCHECK_MAX_MORPHISMS"),
    ("max_results", "PATHCHECK_MAX_RESULTS"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathcheck",
        description="Exact checks of path, transport and box filling "
                    "laws over finite groupoid models.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser(
        "check", help="load a model file and run the selected suites")
    check.add_argument("--model", required=True,
                       help="path to a JSON model file")
    check.add_argument("--suites",
                       help="comma separated subset of: "
                            + ", ".join(SUITE_ORDER))
    check.add_argument("--max-box-dim", type=int, default=None,
                       help="largest box dimension the kan suite fills")
    check.add_argument("--max-objects", type=int, default=None,
                       help="object bound for enumeration domains")
    check.add_argument("--max-morphisms", type=int, default=None,
                       help="morphism bound for enumeration domains")
    check.add_argument("--max-results", type=int, default=None,
                       help="cap on the size of any single enumeration")
    check.add_argument("--report", default=None,
                       help="write the JSON report to this file")
    check.add_argument("--markdown", default=None,
                       help="write the markdown report to this file")
    return parser


def _guard_overrides(args):
    """Flag values, falling back to the environment; None entries are
    left at the model's own bounds."""
    overrides = {}
    for field, env in _GUARD_FLAGS:
        value = getattr(args, field)
        if value is None and env in os.environ:
            raw = os.environ[env]
            try:
                value = int(raw)
            except ValueError:
                raise ModelSpecError(
                    f"{env} must be an integer, got {raw!r}")
        if value is not None:
            if value <= 0:
                raise ModelSpecError(
                    f"--{field.replace('_', '-')} must be positive, "
                    f"got {value}")
            overrides[field] = value
    return overrides


def _parse_suites(text):
    names = [s.strip().replace("-", "_").lower()
             for s in text.split(",") if s.strip()]
    for s in names:
        if s not in SUITE_ORDER:
            raise ModelSpecError(
                f"unknown suite {s!r}; choose from "
                f"{', '.join(SUITE_ORDER)}")
    if not names:
        raise ModelSpecError("--suites selected nothing")
    return tuple(s for s in SUITE_ORDER if s in set(names))


def _cmd_check(args) -> int:
    try:
        spec = load_model(args.model)
        if args.suites:
            spec.suites = _parse_suites(args.suites)
        overrides = _guard_overrides(args)
        if overrides:
            spec.guard = replace(spec.guard, **overrides)
    except ModelSpecError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG

    report = run_suites(spec)
    for r in report.results:
        print(f"{r.suite:<16} {r.status:<5} {r.detail}")
    print(f"overall: {'pass' if report.ok() else 'fail'}")

    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if args.markdown:
        with open(args.markdown, "w", encoding="utf-8") as fh:
            fh.write(report.to_markdown())
    return EXIT_PASS if report.ok() else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return _cmd_check(args)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
