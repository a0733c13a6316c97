"""The 321-avoiding and skew-merged classes: membership, enumeration, counts.

Members of length ``n`` are grown from members of length ``n - 1`` by
inserting the new maximum.  Because both classes are downward closed, a slot
that is forbidden for a permutation stays forbidden for all of its children,
so each node of the generating tree only tests the slots its parent allowed.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .permcore import (
    Permutation,
    contains,
    first_skew_split,
    first_sum_split,
    is_simple_entries,
)

__all__ = [
    "ClassId",
    "BudgetExceeded",
    "CountRow",
    "ClassCountTable",
    "DEFAULT_BUDGET",
    "is_member",
    "is_skew_merged_direct",
    "allowed_slots",
    "enumerate_class",
    "count",
    "count_simple",
    "count_table",
]

DEFAULT_BUDGET = 10**7


class ClassId(enum.Enum):
    AV321 = "av321"
    SKEW_MERGED = "skew-merged"

    @property
    def basis(self) -> tuple[Permutation, ...]:
        return _BASES[self]

    @classmethod
    def parse(cls, text: str) -> "ClassId":
        key = text.strip().lower().replace("_", "-")
        aliases = {"av321": cls.AV321, "321": cls.AV321, "skew-merged": cls.SKEW_MERGED,
                   "skewmerged": cls.SKEW_MERGED, "sm": cls.SKEW_MERGED}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown class {text!r}; expected 'av321' or 'skew-merged'") from None


_BASES = {
    ClassId.AV321: (Permutation.parse("321"),),
    ClassId.SKEW_MERGED: (Permutation.parse("2143"), Permutation.parse("3412")),
}


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would generate more permutations than allowed."""

    def __init__(self, budget: int):
        super().__init__(f"enumeration budget of {budget} generated permutations exceeded (raise it with --budget)")
        self.budget = budget


def is_member(p: Sequence[int], c: ClassId) -> bool:
    return not any(contains(p, b) for b in c.basis)


def is_skew_merged_direct(p: Sequence[int]) -> bool:
    """True iff ``p`` splits into an increasing and a decreasing subsequence.

    Scans left to right keeping, for every possible last value of the
    increasing part, the set of possible last values of the decreasing part.
    This never looks at patterns, so it checks ``is_member`` independently.
    """
    n = len(p)
    # state: (last increasing value, last decreasing value); 0 / n+1 = unused
    states = {(0, n + 1)}
    for v in p:
        nxt = set()
        for inc, dec in states:
            if v > inc:
                nxt.add((v, dec))
            if v < dec:
                nxt.add((inc, v))
        if not nxt:
            return False
        states = nxt
    return True


# -- slot tests --------------------------------------------------------------
#
# A slot i (0..n) of p means inserting n+1 between p[i-1] and p[i].  Any new
# basis occurrence must use the new maximum as the basis pattern's maximum.

def _slots_av321(p: Sequence[int], candidates: Sequence[int]) -> list[int]:
    # 321 with the new max as '3' needs a descent to its right
    first_ok = len(p) - 1 if p else 0  # p[first_ok:] is increasing
    while first_ok > 0 and p[first_ok - 1] < p[first_ok]:
        first_ok -= 1
    return [i for i in candidates if i >= first_ok]


def _slots_skew_merged(p: Sequence[int], candidates: Sequence[int]) -> list[int]:
    n = len(p)
    big = n + 1
    # min_top[i]: least value of p[:i] with a smaller value after it in p[:i]
    min_top = [big] * (n + 1)
    cur = big
    for i in range(1, n):
        v = p[i]
        for j in range(i):
            w = p[j]
            if v < w < cur:
                cur = w
        min_top[i + 1] = cur
    # max_right[i] = max(p[i:]); max_left[i] = max(p[:i])
    max_right = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        max_right[i] = max(max_right[i + 1], p[i])
    max_left = [0] * (n + 1)
    for i in range(n):
        max_left[i + 1] = max(max_left[i], p[i])
    # min_asc_top[i]: least value of p[i:] with a smaller value before it in p[i:]
    min_asc_top = [big] * (n + 1)
    cur = big
    for i in range(n - 2, -1, -1):
        v = p[i]
        for j in range(i + 1, n):
            w = p[j]
            if v < w < cur:
                cur = w
        min_asc_top[i] = cur
    return [
        i for i in candidates
        # 2143: a descent left of the slot whose top is below something right of it
        if min_top[i] >= max_right[i]
        # 3412: an ascent right of the slot whose top is below something left of it
        and min_asc_top[i] >= max_left[i]
    ]


_SLOT_TESTS: dict[ClassId, Callable[[Sequence[int], Sequence[int]], list[int]]] = {
    ClassId.AV321: _slots_av321,
    ClassId.SKEW_MERGED: _slots_skew_merged,
}


def allowed_slots(p: Sequence[int], c: ClassId) -> list[int]:
    """Slots where inserting a new maximum keeps a member of ``c`` in ``c``."""
    return _SLOT_TESTS[c](p, range(len(p) + 1))


def _walk(c: ClassId, n_max: int, visit: Callable[[tuple], None], budget: int) -> None:
    """Depth-first traversal of the generating tree, calling ``visit`` on
    every member of length 1..n_max."""
    generated = 0
    test = _SLOT_TESTS[c]
    stack: list[tuple[tuple, list[int]]] = [((), [0])]
    while stack:
        p, slots = stack.pop()
        n = len(p) + 1
        top = n
        leaf = n == n_max
        generated += len(slots)
        if generated > budget:
            raise BudgetExceeded(budget)
        for i in slots:
            child = p[:i] + (top,) + p[i:]
            visit(child)
            if not leaf:
                inherited = [j if j <= i else j + 1 for j in slots]
                inherited.insert(inherited.index(i) + 1, i + 1)
                stack.append((child, test(child, inherited)))


def enumerate_class(c: ClassId, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[Permutation]:
    """Members of ``c`` of length ``n`` in lexicographic order."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n == 0:
        yield Permutation()
        return
    level: list[tuple] = []

    def visit(q: tuple) -> None:
        if len(q) == n:
            level.append(q)

    _walk(c, n, visit, budget)
    level.sort()
    for q in level:
        yield Permutation._trusted(q)


@dataclass(frozen=True)
class CountRow:
    n: int
    total: int
    simple: int
    sum_dec: int
    skew_dec: int

    @property
    def inflated_simple(self) -> int:
        """Members whose simple quotient has length at least 4."""
        return self.total - (self.n == 1) - self.sum_dec - self.skew_dec


@dataclass
class ClassCountTable:
    cls: ClassId
    rows: list[CountRow] = field(default_factory=list)

    def column(self, name: str) -> list[int]:
        return [getattr(r, name) for r in self.rows]

    def row(self, n: int) -> CountRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)

    def to_json(self) -> str:
        return json.dumps(
            [{k: str(getattr(r, k)) for k in ("n", "total", "simple", "sum_dec", "skew_dec")}
             for r in self.rows],
            indent=2,
        )

    def to_text(self) -> str:
        header = ("n", "total", "simple", "sum_dec", "skew_dec")
        body = [[str(getattr(r, k)) for k in header] for r in self.rows]
        widths = [max(len(h), *(len(line[i]) for line in body)) if body else len(h)
                  for i, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines += ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in body]
        return "\n".join(lines)


def count_table(c: ClassId, n_max: int, budget: int = DEFAULT_BUDGET) -> ClassCountTable:
    """Totals, simples and sum/skew decomposables for lengths ``1..n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    total = [0] * (n_max + 1)
    simple = [0] * (n_max + 1)
    sum_dec = [0] * (n_max + 1)
    skew_dec = [0] * (n_max + 1)

    def visit(q: tuple) -> None:
        n = len(q)
        total[n] += 1
        if first_sum_split(q):
            sum_dec[n] += 1
        elif first_skew_split(q):
            skew_dec[n] += 1
        elif is_simple_entries(q):
            simple[n] += 1

    _walk(c, n_max, visit, budget)
    # lengths 1 and 2 are simple but 12 / 21 are also sum / skew decomposable
    for n in (1, 2):
        if n <= n_max:
            simple[n] = total[n]
    rows = [CountRow(n, total[n], simple[n], sum_dec[n], skew_dec[n]) for n in range(1, n_max + 1)]
    return ClassCountTable(c, rows)


def count(c: ClassId, n: int, budget: int = DEFAULT_BUDGET) -> int:
    if n == 0:
        return 1
    return count_table(c, n, budget).row(n).total


def count_simple(c: ClassId, n: int, budget: int = DEFAULT_BUDGET) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return count_table(c, n, budget).row(n).simple
