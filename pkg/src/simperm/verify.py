"""Cross-checks between brute-force enumeration and the series systems."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterator

from . import systems as sy
from .classes import (
    DEFAULT_BUDGET,
    ClassId,
    count_table,
    enumerate_class,
    is_member,
    is_skew_merged_direct,
)
from .decompose import areas, central_element, inner_elements, spiral_cells, staircase
from .permcore import Permutation, is_simple, simple_quotient
from .series import TruncatedSeries

__all__ = ["Check", "VerificationReport", "SUITES", "run"]

SUITES = ("all", "identities", "oracle", "predicates", "decompositions")

# expansions printed alongside the closed forms, indexed from x^1
PRINTED = {
    "catalan_c": [1, 2, 5, 14, 42, 132, 429, 1430],
    "motzkin_naive": [1, 1, 2, 4, 9, 21, 51, 127],
    "s321": [0, 0, 0, 2, 2, 7, 14, 37],
    "s321_raw": [0, 1, 0, 2, 2, 7, 14, 37],
    "s_skew_merged": [0, 0, 0, 2, 2, 8, 16, 44],
    "f_skew_merged": [1, 2, 6, 22, 86, 340, 1340, 5254],
}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(not c.passed for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_text(self, timing: bool = False) -> str:
        lines = []
        for c in self.checks:
            line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
            if c.detail:
                line += f"  [{c.detail}]"
            if timing:
                line += f"  ({c.seconds:.3f}s)"
            lines.append(line)
        lines.append(f"{len(self.checks) - self.failures} passed, {self.failures} failed")
        return "\n".join(lines)

    def to_json(self, timing: bool = False) -> str:
        def row(c: Check) -> dict:
            d = {"name": c.name, "status": "pass" if c.passed else "fail", "detail": c.detail}
            if timing:
                d["seconds"] = f"{c.seconds:.3f}"
            return d

        return json.dumps(
            {
                "checks": [row(c) for c in self.checks],
                "summary": {"passed": str(len(self.checks) - self.failures),
                            "failed": str(self.failures)},
            },
            indent=2,
        )


def _cmp(expected, actual) -> tuple[bool, str]:
    ok = list(expected) == list(actual)
    return ok, "" if ok else f"expected {list(expected)}, got {list(actual)}"


def _zero(s: TruncatedSeries) -> tuple[bool, str]:
    ok = not any(s.coeffs)
    return ok, "" if ok else f"nonzero residual {s}"


def _same(a: TruncatedSeries, b: TruncatedSeries) -> tuple[bool, str]:
    ok = a == b
    return ok, "" if ok else f"{a} != {b}"


# -- suites -------------------------------------------------------------------

def _identity_checks(order: int) -> Iterator[tuple[str, Callable[[], tuple[bool, str]]]]:
    n = order
    k = min(8, n)

    def printed(name: str, series: Callable[[int], TruncatedSeries]):
        return lambda: _cmp(PRINTED[name][:k], series(n).coeffs[1:k + 1])

    yield "printed expansion: catalan_c", printed("catalan_c", sy.catalan_c)
    yield "printed expansion: motzkin_naive", printed("motzkin_naive", sy.s321_naive)
    yield "printed expansion: s321", printed("s321", sy.s321_implicit)
    yield "printed expansion: s321 before removing 21", printed("s321_raw", sy.s321_corrected_raw)
    yield "printed expansion: s_skew_merged", printed("s_skew_merged", sy.skew_merged_simples_gf)
    yield "printed expansion: f_skew_merged", printed("f_skew_merged", sy.skew_merged_class_gf)
    yield "sum decomposables: f+ = (c - f+) c", lambda: _same(
        sy.sum_dec_gf(n), (sy.catalan_c(n) - sy.sum_dec_gf(n)) * sy.catalan_c(n))
    yield "master identity for 321-avoiders", lambda: _zero(sy.master_identity_residual(n))
    yield "s321 implicit = closed form", lambda: _same(sy.s321_implicit(n), sy.s321_closed_form(n))
    yield "fixed point residual", lambda: _zero(sy.fixed_point_residual(sy.fixed_point_y0(n)))
    yield "fixed point: quadratic formula = Newton", lambda: _same(
        sy.fixed_point_y0(n), sy.fixed_point_y0_newton(n))
    yield "naive development = fixed point", lambda: _same(sy.s321_naive(n), sy.fixed_point_y0(n))
    yield "corrected development = implicit s321", lambda: _same(
        sy.s321_corrected(n), sy.s321_implicit(n))
    yield "iterated u = closed form u", lambda: _same(
        sy.skew_merged_u(n), sy.skew_merged_u_closed_form(n))
    yield "f recursion residual", lambda: _zero(
        sy.skew_merged_f_residual(sy.skew_merged_class_gf(n), sy.skew_merged_u(n)))
    yield "1 + f = (1-3x)/((1-2x) sqrt(1-4x))", lambda: _same(
        1 + sy.skew_merged_class_gf(n), sy.skew_merged_class_closed_form(n))
    yield "radical substitution identity", lambda: _same(*sy.radical_substitution_identity(n))
    yield "integral coefficients", lambda: (
        all(sy.named_series(name, n).series.is_integral() for name in sy.SERIES_NAMES), "")


def _oracle_checks(max_n: int, order: int, budget: int):
    n = max(order, max_n)
    tables: dict[ClassId, object] = {}

    def table(c: ClassId):
        if c not in tables:
            tables[c] = count_table(c, max_n, budget)
        return tables[c]

    def av321():
        t = table(ClassId.AV321)
        ok = True
        details = []
        for name, col, series in (
            ("total", "total", sy.catalan_c(n)),
            ("simple(n>=4)", "simple", sy.s321_implicit(n)),
            ("sum_dec", "sum_dec", sy.sum_dec_gf(n)),
        ):
            got = t.column(col)
            want = list(series.coeffs[1:max_n + 1])
            if col == "simple":
                got, want = got[3:], want[3:]
            good, d = _cmp(want, got)
            ok &= good
            if d:
                details.append(f"{name}: {d}")
        good, d = _cmp([r.n - 1 for r in t.rows], t.column("skew_dec"))
        ok &= good
        if d:
            details.append(f"skew_dec: {d}")
        return ok, "; ".join(details)

    def skew_merged():
        t = table(ClassId.SKEW_MERGED)
        f = sy.skew_merged_class_gf(n)
        s = sy.skew_merged_simples_gf(n)
        x = TruncatedSeries.x(n)
        x2 = TruncatedSeries.monomial(2, n)
        decomposables = 4 * x * f - 2 * x2 * (f + 1)
        ok = True
        details = []
        for name, got, want in (
            ("total", t.column("total"), f.coeffs[1:max_n + 1]),
            ("simple(n>=4)", t.column("simple")[3:], s.coeffs[4:max_n + 1]),
            ("sum+skew", [r.sum_dec + r.skew_dec for r in t.rows], decomposables.coeffs[1:max_n + 1]),
        ):
            good, d = _cmp(want, got)
            ok &= good
            if d:
                details.append(f"{name}: {d}")
        return ok, "; ".join(details)

    cap = min(max_n, 9)

    def partition(c: ClassId):
        return lambda: _partition(table(c).rows[:cap], c, budget)

    yield f"av321 counts vs series, n<={max_n}", av321
    yield f"skew-merged counts vs series, n<={max_n}", skew_merged
    yield f"av321 four-way partition, n<={cap}", partition(ClassId.AV321)
    yield f"skew-merged four-way partition, n<={cap}", partition(ClassId.SKEW_MERGED)


def _partition(rows, c: ClassId, budget: int) -> tuple[bool, str]:
    # members with a simple quotient of length >= 4, counted independently
    for r in rows:
        inflated = sum(len(simple_quotient(p).quotient) >= 4 for p in enumerate_class(c, r.n, budget))
        if r.total != (r.n == 1) + r.sum_dec + r.skew_dec + inflated:
            return False, f"n={r.n}: {r.total} != {r.sum_dec}+{r.skew_dec}+{inflated}"
    return True, ""


def _predicate_checks(max_n: int):
    cap = min(max_n, 8)

    def run():
        for n in range(cap + 1):
            for p in permutations(range(1, n + 1)):
                if is_member(p, ClassId.SKEW_MERGED) != is_skew_merged_direct(p):
                    return False, f"predicates disagree on {Permutation(p)}"
        return True, ""

    yield f"skew-merged: pattern basis = increasing/decreasing split, n<={cap}", run


def _decomposition_checks(max_n: int, budget: int):
    cap = min(max_n, 9)

    def spiral():
        checked = 0
        for n in range(4, cap + 1):
            for p in enumerate_class(ClassId.SKEW_MERGED, n, budget):
                if not is_simple(p):
                    continue
                ar = areas(p)
                if not all(ar[k] for k in (1, 2, 3, 4)):
                    return False, f"{p}: empty area"
                c = central_element(p)
                q = p if c is None else p.delete(c[0] - 1)
                if not is_simple(q):
                    return False, f"{p}: removing the central entry breaks simplicity"
                if inner_elements(q).pattern not in ("3142", "2413"):
                    return False, f"{q}: inner pattern"
                d = spiral_cells(q)
                if d.reconstruct() != q:
                    return False, f"{q}: spiral cells do not partition"
                for k, cell in enumerate(d.cells):
                    vals = [v for _, v in cell]
                    increasing = k % 4 in (0, 2)
                    if vals != sorted(vals, reverse=not increasing):
                        return False, f"{q}: cell C{k + 1} not monotone"
                checked += 1
        return True, f"{checked} permutations"

    def stairs():
        checked = 0
        for n in range(1, max_n + 1):
            for p in enumerate_class(ClassId.AV321, n, budget):
                d = staircase(p)
                if d.reconstruct() != p:
                    return False, f"{p}: staircase does not reconstruct"
                for cell in d.cells:
                    vals = [v for _, v in cell]
                    if vals != sorted(vals):
                        return False, f"{p}: staircase cell not increasing"
                checked += 1
        return True, f"{checked} permutations"

    yield f"spiral decomposition of simple skew-merged, 4<=n<={cap}", spiral
    yield f"staircase decomposition of 321-avoiders, n<={max_n}", stairs


def run(suite: str = "all", max_n: int = 10, order: int = 24,
        budget: int = DEFAULT_BUDGET) -> VerificationReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    groups = []
    if suite in ("all", "identities"):
        groups.append(_identity_checks(order))
    if suite in ("all", "oracle"):
        groups.append(_oracle_checks(max_n, order, budget))
    if suite in ("all", "predicates"):
        groups.append(_predicate_checks(max_n))
    if suite in ("all", "decompositions"):
        groups.append(_decomposition_checks(max_n, budget))
    report = VerificationReport()
    for group in groups:
        for name, check in group:
            start = time.perf_counter()
            passed, detail = check()
            report.checks.append(Check(name, bool(passed), detail, time.perf_counter() - start))
    return report
