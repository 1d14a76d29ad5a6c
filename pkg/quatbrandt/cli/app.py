from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from quatbrandt.errors import ClassEnumerationError, InvalidInputError, QuatBrandtError
from quatbrandt.logging import get_logger

logger = get_logger("quatbrandt.cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_ENUMERATION = 3
EXIT_INTERNAL = 4


def _prime(value: str) -> int:
    from sympy import isprime

    try:
        n = int(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer") from exc
    if not isprime(n):
        raise argparse.ArgumentTypeError(f"{n} is not prime")
    return n


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer") from exc
    if n < 1:
        raise argparse.ArgumentTypeError(f"{n} must be >= 1")
    return n


def _dimension(value: str) -> int:
    n = _positive(value)
    if n not in (1, 2, 3):
        raise argparse.ArgumentTypeError(f"g must be 1, 2 or 3, got {n}")
    return n


def _emit(text: str, out: str | None, stdout: TextIO) -> None:
    if out is None or out == "-":
        stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _cmd_classset(args: argparse.Namespace, stdout: TextIO) -> int:
    from quatbrandt.classes.classset import format_fraction
    from quatbrandt.runtime.workbench import get_workbench

    classes = get_workbench(args.g, args.p).class_set
    stdout.write(f"g={classes.g} p={classes.p} h={classes.h} mass={format_fraction(classes.mass_target)}\n")
    stdout.write("aut_counts=" + ",".join(str(e) for e in classes.aut_counts) + "\n")
    if args.json:
        _emit(classes.to_record().model_dump_json(indent=2), args.json, stdout)
    return EXIT_OK


def _cmd_brandt(args: argparse.Namespace, stdout: TextIO) -> int:
    from quatbrandt.runtime.workbench import get_workbench

    wb = get_workbench(args.g, args.p)
    B = wb.brandt(args.n)
    if args.json:
        stdout.write(B.to_record(wb.class_set.fingerprint).model_dump_json(indent=2) + "\n")
    elif args.csv:
        stdout.write(B.to_csv())
    else:
        width = max(len(str(v)) for row in B.entries for v in row)
        for row in B.entries:
            stdout.write(" ".join(str(v).rjust(width) for v in row) + "\n")
    return EXIT_OK


def _cmd_graph(args: argparse.Namespace, stdout: TextIO) -> int:
    from quatbrandt.graphs.weighted import is_bipartite, is_connected
    from quatbrandt.runtime.workbench import get_workbench

    if args.l == args.p:
        raise InvalidInputError(f"l must differ from p (both {args.p})")
    G = get_workbench(args.g, args.p).graph(args.kind, args.l)
    if args.json:
        stdout.write(G.to_json() + "\n")
    else:
        stdout.write(G.to_dot())
    logger.info("%s: connected=%s bipartite=%s", G.name, is_connected(G), is_bipartite(G))
    return EXIT_OK


def _cmd_ramanujan(args: argparse.Namespace, stdout: TextIO) -> int:
    from quatbrandt.runtime.workbench import get_workbench

    if args.l == args.p:
        raise InvalidInputError(f"l must differ from p (both {args.p})")
    report = get_workbench(args.g, args.p).spectral(args.l)
    stdout.write(report.verdict + "\n")
    stdout.write(f"k={report.degree} h={report.h} charpoly={report.charpoly_expr()}\n")
    if report.second_largest_abs is not None:
        lo, hi = report.second_largest_abs
        stdout.write(f"second_largest_abs in [{float(lo):.12f}, {float(hi):.12f}]\n")
    return EXIT_OK


def _cmd_survey(args: argparse.Namespace, stdout: TextIO) -> int:
    from quatbrandt.spectral.ramanujan import ramanujan_survey, survey_to_csv

    rows = ramanujan_survey(args.g, args.l, range(2, args.pmax + 1), workers=args.workers)
    _emit(survey_to_csv(rows), args.csv, stdout)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, stdout: TextIO) -> int:
    from quatbrandt.brandt.identities import verify_identities

    report = verify_identities(args.g, args.p, args.nmax)
    if args.json:
        stdout.write(report.model_dump_json(indent=2) + "\n")
    else:
        for c in report.checks:
            n = ",".join(str(v) for v in c.n)
            stdout.write(f"{'PASS' if c.ok else 'FAIL'} {c.name}({n}) {c.detail}".rstrip() + "\n")
        stdout.write(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} identities hold\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quatbrandt", description="Quaternion Brandt matrices and isogeny graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classset", help="enumerate the class set for (g, p)")
    p.add_argument("--g", type=_dimension, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--json", metavar="OUT", help="write the class set record (use - for stdout)")
    p.set_defaults(handler=_cmd_classset)

    p = sub.add_parser("brandt", help="print the Brandt matrix B_g(n)")
    p.add_argument("--g", type=_dimension, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--n", type=_positive, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_brandt)

    p = sub.add_parser("graph", help="emit a big, little or enhanced isogeny graph")
    p.add_argument("--kind", choices=["big", "little", "enhanced"], required=True)
    p.add_argument("--g", type=_dimension, required=True)
    p.add_argument("--l", type=_prime, required=True)
    p.add_argument("--p", type=_prime, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="Graphviz DOT (default)")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_graph)

    p = sub.add_parser("ramanujan", help="exact Ramanujan verdict for Gr_g(l, p)")
    p.add_argument("--g", type=_dimension, required=True)
    p.add_argument("--l", type=_prime, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.set_defaults(handler=_cmd_ramanujan)

    p = sub.add_parser("survey", help="Ramanujan verdicts for every prime p <= pmax")
    p.add_argument("--g", type=_dimension, required=True)
    p.add_argument("--l", type=_prime, required=True)
    p.add_argument("--pmax", type=_positive, required=True)
    p.add_argument("--csv", metavar="OUT", help="CSV destination (stdout by default)")
    p.add_argument("--workers", type=_positive, default=None)
    p.set_defaults(handler=_cmd_survey)

    p = sub.add_parser("verify", help="check the Brandt-matrix identities up to nmax")
    p.add_argument("--g", type=_dimension, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, *, stdout: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INVALID
    out = stdout if stdout is not None else sys.stdout
    handler: Callable[[argparse.Namespace, TextIO], int] = args.handler
    try:
        return handler(args, out)
    except InvalidInputError as exc:
        sys.stderr.write(f"quatbrandt {args.command}: error: {exc}\n")
        return EXIT_INVALID
    except ClassEnumerationError as exc:
        logger.error("%s", exc)
        return EXIT_ENUMERATION
    except QuatBrandtError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INTERNAL
