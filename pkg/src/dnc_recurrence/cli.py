"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .catalog import REGISTRY, catalog_eval, get_entry
from .exact import format_rational, parse_rational
from .oracle import MemoTable
from .solver import Recurrence, TollPolynomial, solve

__all__ = ["main", "run", "build_parser", "DEFAULT_A_GRID", "DEFAULT_X1_GRID"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_A_GRID = tuple(
    parse_rational(s) for s in ("1", "-1", "1/2", "-1/2", "2", "4", "3", "2/3", "-2")
)
DEFAULT_X1_GRID = (Fraction(0), Fraction(1), Fraction(-3, 2))
DEFAULT_MAX_DEGREE = 4

_NAT_RE = re.compile(r"[0-9]+")


class UsageError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}") from None


def _poly_arg(text: str) -> TollPolynomial:
    try:
        return TollPolynomial.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int_arg(text: str) -> int:
    if not _NAT_RE.fullmatch(text) or int(text) < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(text)


def _natural_arg(text: str) -> int:
    if not _NAT_RE.fullmatch(text):
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return int(text)


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-3/2" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-[0-9]+(/[0-9]+)?$")

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dnc-recurrence",
        description="Exact closed-form solutions of x_n = a x_ceil(n/2) + a x_floor(n/2) + P(ceil(n/2), floor(n/2)).",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rec_args(p, required=True):
        p.add_argument("--a", type=_rational_arg, required=required, help="coefficient a, e.g. 1/2")
        p.add_argument("--poly", type=_poly_arg, required=required, help='toll polynomial, e.g. "1,0:1;0,1:1"')
        p.add_argument("--x1", type=_rational_arg, default=Fraction(0), help="initial value x_1 (default 0)")

    def fmt_arg(p):
        p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")

    p = sub.add_parser("solve", help="evaluate x_n")
    rec_args(p)
    p.add_argument("--n", type=_positive_int_arg, required=True)
    fmt_arg(p)

    p = sub.add_parser("sequence", help="print x_1 .. x_N")
    rec_args(p)
    p.add_argument("--to", type=_positive_int_arg, required=True)
    fmt_arg(p)

    p = sub.add_parser("verify", help="closed form vs direct recursion for n <= N")
    rec_args(p, required=False)
    p.add_argument("--to", type=_positive_int_arg, default=512)

    p = sub.add_parser("catalog", help="evaluate a named sequence")
    p.add_argument("--name", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    # non-negative so that OEIS offset-0 indices are accepted; checked in _cmd_catalog
    group.add_argument("--n", type=_natural_arg)
    group.add_argument("--to", type=_natural_arg)
    p.add_argument(
        "--oeis-index",
        action="store_true",
        help="interpret and print indices in the sequence's OEIS numbering",
    )
    fmt_arg(p)

    sub.add_parser("list", help="list catalog entries")

    p = sub.add_parser("recurrence-check", help="check the recurrence at random large n")
    rec_args(p)
    p.add_argument("--bits", type=_positive_int_arg, default=128)
    p.add_argument("--count", type=_positive_int_arg, default=100)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(rows: Iterable[tuple[int, Fraction]], fmt: str) -> str:
    rows = list(rows)
    if fmt == "json":
        return json.dumps([{"n": str(n), "value": format_rational(v)} for n, v in rows])
    if fmt == "csv":
        return "\n".join(["n,value"] + [f"{n},{format_rational(v)}" for n, v in rows])
    return "\n".join(format_rational(v) for _, v in rows)


def _recurrence(args) -> Recurrence:
    try:
        return Recurrence(args.a, args.poly, args.x1)
    except ValueError as exc:
        raise UsageError(f"--a {format_rational(args.a)}: {exc}") from None


def _verify_one(rec: Recurrence, to: int) -> Optional[str]:
    table = MemoTable(rec)
    for n in range(1, to + 1):
        closed, direct = solve(rec, n), table.get(n)
        if closed != direct:
            return (
                f"a={format_rational(rec.a)} poly={rec.poly.format()} x1={format_rational(rec.x1)} "
                f"n={n}: closed form {format_rational(closed)} != recursion {format_rational(direct)}"
            )
    return None


def _default_grid() -> Iterable[Recurrence]:
    for a in DEFAULT_A_GRID:
        for x1 in DEFAULT_X1_GRID:
            for deg in range(DEFAULT_MAX_DEGREE + 1):
                for r in range(deg + 1):
                    yield Recurrence(a, TollPolynomial({(r, deg - r): 1}), x1)


def _cmd_verify(args) -> tuple[int, str]:
    if (args.a is None) != (args.poly is None):
        raise UsageError("verify needs both --a and --poly, or neither for the default grid")
    recs = [_recurrence(args)] if args.a is not None else list(_default_grid())
    for rec in recs:
        failure = _verify_one(rec, args.to)
        if failure:
            return EXIT_FAIL, f"FAIL: {failure}"
    return EXIT_OK, f"PASS: {len(recs)} recurrence(s), n = 1..{args.to}"


def _cmd_catalog(args) -> tuple[int, str]:
    try:
        entry = get_entry(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    shift = entry.oeis_shift if args.oeis_index else 0
    # OEIS index m is x_{m + shift}
    first = 1 - shift
    bad = args.n if args.n is not None else args.to
    if bad < first:
        raise UsageError(f"index {bad} is below the first term (index {first})")
    if args.n is not None:
        indices = [args.n + shift]
    else:
        indices = range(1, args.to + shift + 1)
    rows = [(n - shift, catalog_eval(entry.name, n)) for n in indices]
    return EXIT_OK, _emit(rows, args.format)


def _cmd_list(args) -> tuple[int, str]:
    lines = ["name\toeis\ta\tpoly\tx1"]
    for e in REGISTRY.values():
        rec = e.recurrence
        oeis = e.oeis_id or "-"
        if e.oeis_id and e.oeis_shift:
            oeis += f" (x_n = a_{{n-{e.oeis_shift}}})"
        lines.append(
            f"{e.name}\t{oeis}\t{format_rational(rec.a)}\t{rec.poly.format()}\t{format_rational(rec.x1)}"
        )
    return EXIT_OK, "\n".join(lines)


def _cmd_recurrence_check(args) -> tuple[int, str]:
    rec = _recurrence(args)
    rng = random.Random(args.seed)
    a = rec.a
    for _ in range(args.count):
        n = rng.getrandbits(args.bits) | (1 << (args.bits - 1))
        if n < 2:
            n = 2
        hi, lo = (n + 1) // 2, n // 2
        lhs = solve(rec, n)
        rhs = a * solve(rec, hi) + a * solve(rec, lo) + rec.toll(n)
        if lhs != rhs:
            return EXIT_FAIL, f"FAIL: n={n}"
    return EXIT_OK, f"PASS: {args.count} samples of {args.bits} bits (seed {args.seed})"


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Parse and execute one command; returns (exit status, text for stdout)."""
    args = build_parser().parse_args(list(argv))
    cmd = args.command
    if cmd == "solve":
        rec = _recurrence(args)
        value = solve(rec, args.n)
        if args.format == "plain":
            return EXIT_OK, format_rational(value)
        return EXIT_OK, _emit([(args.n, value)], args.format)
    if cmd == "sequence":
        rec = _recurrence(args)
        return EXIT_OK, _emit(((n, solve(rec, n)) for n in range(1, args.to + 1)), args.format)
    if cmd == "verify":
        return _cmd_verify(args)
    if cmd == "catalog":
        return _cmd_catalog(args)
    if cmd == "list":
        return _cmd_list(args)
    return _cmd_recurrence_check(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        status, text = run(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    if text:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
