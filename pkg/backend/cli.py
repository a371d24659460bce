#!/usr/bin/env python3
"""
Command-line calculator for coincidence invariants of maps over S^1.

Maps are written `DOMAIN CODOMAIN q r` with DOMAIN, CODOMAIN in {T, K}, for
example `K K 4 1`, or as JSON objects {"domain": "K", "codomain": "K", "q": 4,
"r": 1}. Specs come from the command line, from --file, or from standard input
(one per line, or a single JSON array). Blank lines and `#` comments are
skipped.

Exit codes: 0 computed and consistent, 1 input error, 2 oracle disagreement.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from config import settings
from core.errors import FibredError, OracleDisagreementError
from core.nielsen import nielsen_number
from services.report import (
    Report,
    build_report,
    pair_from_specs,
    render_diagram,
    render_report,
    require_agreement,
    summarize_diagram,
)
from services.specs import MapSpec, parse_spec_arguments, parse_specs
from services.tables import build_table, render_table
from services.verification import faulty_nielsen_number, run_verification

logger = logging.getLogger("fibred.cli")

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_ORACLE_DISAGREEMENT = 2

TABLE_DEFAULT_BOUND = 10


def _read_specs(args: argparse.Namespace) -> List[MapSpec]:
    if args.specs:
        return parse_spec_arguments(args.specs)
    if args.file:
        return parse_specs(Path(args.file).read_text(encoding="utf-8"))
    return parse_specs(sys.stdin.read())


def _group_specs(specs: List[MapSpec], root: bool) -> List[Tuple[MapSpec, Optional[MapSpec]]]:
    if not specs:
        raise ValueError("No map specs given")
    if root:
        return [(spec, None) for spec in specs]
    if len(specs) % 2:
        raise ValueError(f"Pairs need an even number of maps, got {len(specs)}; use --root for single maps")
    return [(specs[i], specs[i + 1]) for i in range(0, len(specs), 2)]


def _reports(args: argparse.Namespace) -> List[Report]:
    groups = _group_specs(_read_specs(args), args.root)
    return [build_report(f1, f2, root=args.root, window=args.window) for f1, f2 in groups]


def cmd_invariants(args: argparse.Namespace) -> int:
    reports = _reports(args)
    for report in reports:
        print(report.model_dump_json() if args.json else render_report(report))
    for report in reports:
        require_agreement(report)
    return EXIT_OK


def cmd_diagram(args: argparse.Namespace) -> int:
    for f1, f2 in _group_specs(_read_specs(args), args.root):
        pair = pair_from_specs(f1, f2, args.root)
        summary = summarize_diagram(pair, raw=args.raw)
        if args.json:
            print(summary.model_dump_json())
        else:
            kind = "standard form" if args.raw else "minimal representative"
            print(f"{pair} ({kind})")
            print("\n".join(render_diagram(summary)))
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    frame = build_table(
        args.combo,
        (args.qmin, args.qmax),
        (args.rmin, args.rmax),
    )
    print(render_table(frame, as_json=args.json))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    nielsen = faulty_nielsen_number if args.inject_fault else nielsen_number
    summary = run_verification(
        qmax=args.qmax,
        rmax=args.rmax,
        window=args.window,
        workers=args.workers,
        nielsen=nielsen,
    )
    frame = pd.DataFrame(
        [
            {
                "check": tally.name,
                "passed": tally.passed,
                "failed": tally.failed,
                "skipped": tally.skipped,
                "first failures": "; ".join(tally.failures),
            }
            for tally in summary.tallies.values()
        ]
    )
    if args.json:
        print(frame.to_json(orient="records"))
    else:
        print(f"Verified {summary.pairs} pairs with |q| <= {args.qmax}, |r| <= {args.rmax}")
        print(frame.to_string(index=False))
        print("all checks passed" if summary.ok else f"{summary.failed} check failures")
    return EXIT_OK if summary.ok else EXIT_ORACLE_DISAGREEMENT


def _add_spec_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("specs", nargs="*", help="Map specs such as 'K K 4 1' (quote each one)")
    parser.add_argument("--file", help="Read specs from a file instead of the command line")
    parser.add_argument(
        "--root",
        action="store_true",
        help="Pair each map with the section s_{+1} o p (root invariant)",
    )
    parser.add_argument("--window", type=int, default=settings.DEFAULT_WINDOW)
    parser.add_argument("--json", action="store_true", help="Machine-readable output")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Coincidence invariants of fibre-preserving maps between T and K over S^1",
        epilog="Specs: 'DOMAIN CODOMAIN q r' per line, or JSON objects/arrays with those fields.",
    )
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level for diagnostics")
    subparsers = parser.add_subparsers(dest="command")

    invariants_parser = subparsers.add_parser(
        "invariants",
        help="Report #R, N, N#, MCC, looseness, omega and the coincidence diagram of pairs",
    )
    _add_spec_input(invariants_parser)

    diagram_parser = subparsers.add_parser("diagram", help="Print the coincidence circles of pairs")
    _add_spec_input(diagram_parser)
    diagram_parser.add_argument(
        "--raw",
        action="store_true",
        help="Show the standard-form diagram instead of a minimal representative",
    )

    table_parser = subparsers.add_parser("table", help="Tabulate the invariants over a (q, r) grid")
    table_parser.add_argument("--combo", default="TT", help="TT, KK, KT or TK")
    table_parser.add_argument("--qmin", type=int, default=-TABLE_DEFAULT_BOUND)
    table_parser.add_argument("--qmax", type=int, default=TABLE_DEFAULT_BOUND)
    table_parser.add_argument("--rmin", type=int, default=-TABLE_DEFAULT_BOUND)
    table_parser.add_argument("--rmax", type=int, default=TABLE_DEFAULT_BOUND)
    table_parser.add_argument("--json", action="store_true")

    verify_parser = subparsers.add_parser("verify", help="Cross-validate every formula over a grid")
    verify_parser.add_argument("--qmax", type=int, default=settings.DEFAULT_QMAX)
    verify_parser.add_argument("--rmax", type=int, default=settings.DEFAULT_RMAX)
    verify_parser.add_argument("--window", type=int, default=settings.DEFAULT_WINDOW)
    verify_parser.add_argument("--workers", type=int, default=settings.VERIFY_WORKERS)
    verify_parser.add_argument("--json", action="store_true")
    verify_parser.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    return parser


COMMANDS = {
    "invariants": cmd_invariants,
    "diagram": cmd_diagram,
    "table": cmd_table,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    try:
        return COMMANDS[args.command](args)
    except (OracleDisagreementError, AssertionError) as exc:
        logger.error("Oracle disagreement: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_DISAGREEMENT
    except (FibredError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
