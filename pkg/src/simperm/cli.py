"""Command-line interface: ``simperm {check,count,series,decompose,verify}``.

Exit status: 0 on success, 1 when a verification check fails, 2 for usage,
input or resource errors.  ``SIMPERM_ORDER`` and ``SIMPERM_BUDGET`` override
the default truncation order and enumeration budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import verify as verification
from .classes import DEFAULT_BUDGET, BudgetExceeded, ClassId, count_table
from .decompose import DecompositionError, ascii_plot, spiral_cells, staircase
from .permcore import (
    Permutation,
    is_simple,
    is_skew_decomposable,
    is_sum_decomposable,
    simple_quotient,
)
from .classes import is_member
from .systems import SERIES_NAMES, named_series

USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _parse_perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as e:
        raise UsageError(f"cannot parse permutation: {e}") from None


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_n, hi_n = int(lo), int(hi)
        else:
            lo_n = hi_n = int(text)
    except ValueError:
        raise UsageError(f"bad length range {text!r}; use N or A..B") from None
    if lo_n < 0 or hi_n < lo_n:
        raise UsageError(f"bad length range {text!r}")
    return lo_n, hi_n


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# -- commands -----------------------------------------------------------------

def cmd_check(args) -> int:
    p = _parse_perm(args.perm)
    q = simple_quotient(p)
    info = {
        "permutation": str(p),
        "length": len(p),
        "av321": is_member(p, ClassId.AV321),
        "skew_merged": is_member(p, ClassId.SKEW_MERGED),
        "simple": is_simple(p),
        "sum_decomposable": is_sum_decomposable(p),
        "skew_decomposable": is_skew_decomposable(p),
        "quotient": str(q.quotient),
        "parts": [str(a) for a in q.parts],
    }
    if args.format == "json":
        info["length"] = str(info["length"])
        print(json.dumps(info, indent=2))
    else:
        print(f"permutation: {p}")
        print(f"simple: {_yes(info['simple'])}")
        print(f"skew-merged: {_yes(info['skew_merged'])}")
        print(f"321-avoiding: {_yes(info['av321'])}")
        print(f"sum decomposable: {_yes(info['sum_decomposable'])}")
        print(f"skew decomposable: {_yes(info['skew_decomposable'])}")
        print(f"simple quotient: {q.quotient}[{','.join(info['parts'])}]")
    return 0


def cmd_count(args) -> int:
    c = ClassId.parse(args.cls)
    lo, hi = _parse_range(args.range)
    rows = []
    if hi >= 1:
        table = count_table(c, hi, args.budget)
        rows = [r for r in table.rows if r.n >= lo]
    include_empty = lo == 0
    if args.table:
        columns = ("n", "total", "simple", "sum_dec", "skew_dec")
    elif args.simple:
        columns = ("n", "simple")
    else:
        columns = ("n", "total")
    records = []
    if include_empty:
        empty = {"n": 0, "total": 1, "simple": 0, "sum_dec": 0, "skew_dec": 0}
        records.append(({k: empty[k] for k in columns}, "empty permutation; excluded from counts by convention"))
    for r in rows:
        records.append(({k: getattr(r, k) for k in columns}, None))
    if args.format == "json":
        out = []
        for rec, note in records:
            d = {k: str(v) for k, v in rec.items()}
            if note:
                d["note"] = note
            out.append(d)
        print(json.dumps({"class": c.value, "rows": out}, indent=2))
    else:
        widths = {k: max(len(k), *(len(str(rec[k])) for rec, _ in records)) for k in columns}
        print("  ".join(k.rjust(widths[k]) for k in columns))
        for rec, note in records:
            line = "  ".join(str(rec[k]).rjust(widths[k]) for k in columns)
            print(line + (f"  ({note})" if note else ""))
    return 0


def cmd_series(args) -> int:
    name = args.name_opt or args.name
    if name is None:
        raise UsageError(f"series name required; valid names: {', '.join(SERIES_NAMES)}")
    order = args.order_pos if args.order_pos is not None else args.order
    if name not in SERIES_NAMES:
        raise UsageError(f"unknown series {name!r}; valid names: {', '.join(SERIES_NAMES)}")
    if order < 1:
        raise UsageError("order must be at least 1")
    ns = named_series(name, order)
    if args.format == "json":
        print(json.dumps(ns.to_dict(), indent=2))
    else:
        print(f"{ns.name} ({ns.provenance}), order {ns.series.order}")
        print(ns.series)
        print("coefficients n=1..{}: {}".format(
            ns.series.order, ", ".join(str(c) for c in ns.series.coeffs[1:])))
    return 0


def cmd_decompose(args) -> int:
    p = _parse_perm(args.perm)
    d = staircase(p) if args.kind == "staircase" else spiral_cells(p)
    plot = ascii_plot(d)
    if args.format == "json":
        print(json.dumps({**d.to_dict(), "plot": plot.split("\n")}, indent=2))
    else:
        print(d.to_json())
        print(plot)
    return 0


def cmd_verify(args) -> int:
    report = verification.run(args.suite, args.max_n, args.order, args.budget)
    if args.format == "json":
        print(report.to_json(args.timing))
    else:
        print(report.to_text(args.timing))
    return 0 if report.ok else 1


# -- parser -------------------------------------------------------------------

def _common(defaults: bool) -> argparse.ArgumentParser:
    # shared flags work before or after the subcommand
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=d("text"))
    common.add_argument("--order", type=int, default=d(None), help="truncation order (default 24)")
    common.add_argument("--max-n", type=int, default=d(10), help="largest length to enumerate")
    common.add_argument("--budget", type=int, default=d(None), help="max generated permutations")
    common.add_argument("--timing", action="store_true", default=d(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simperm",
        description="Simple permutations in the 321-avoiding and skew-merged classes.",
        parents=[_common(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    shared = _common(False)

    p = sub.add_parser("check", parents=[shared], help="analyse one permutation")
    p.add_argument("perm")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", parents=[shared], help="brute-force class counts")
    p.add_argument("cls", metavar="class", help="av321 or skew-merged")
    p.add_argument("range", help="length N or range A..B")
    p.add_argument("--simple", action="store_true", help="count simple members")
    p.add_argument("--table", action="store_true", help="all columns")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", parents=[shared], help="expand a named generating function")
    p.add_argument("name", nargs="?", help=", ".join(SERIES_NAMES))
    p.add_argument("order_pos", nargs="?", type=int, metavar="order")
    p.add_argument("--name", dest="name_opt")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("decompose", parents=[shared], help="staircase or spiral cells")
    p.add_argument("perm")
    p.add_argument("--kind", choices=("staircase", "spiral"), default="staircase")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[shared], help="run the cross-verification suite")
    p.add_argument("--suite", choices=verification.SUITES, default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.order is None:
            args.order = _env_int("SIMPERM_ORDER", 24)
        if args.budget is None:
            args.budget = _env_int("SIMPERM_BUDGET", DEFAULT_BUDGET)
        start = time.perf_counter()
        status = args.func(args)
        if args.timing and args.command != "verify":
            print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
        return status
    except BudgetExceeded as e:
        print(f"simperm: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (UsageError, DecompositionError, ValueError) as e:
        print(f"simperm: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
