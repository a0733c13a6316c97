"""Permutations in one-line notation: containment, intervals, simplicity and
the substitution decomposition.

Values and positions are 1-based, so ``Permutation.parse("2413")`` is the
sequence ``(2, 4, 1, 3)``.

>>> p = inflate(Permutation.parse("2413"), [Permutation.parse(s) for s in ("1", "132", "321", "12")])
>>> str(p)
'479832156'
>>> simple_quotient(p).quotient
Permutation('2413')
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "MAX_LENGTH",
    "Permutation",
    "Interval",
    "SimpleQuotient",
    "contains",
    "occurrence",
    "proper_intervals",
    "is_simple",
    "is_simple_entries",
    "inflate",
    "simple_quotient",
    "direct_sum",
    "skew_sum",
    "standardize",
    "first_sum_split",
    "first_skew_split",
    "is_sum_decomposable",
    "is_skew_decomposable",
]

MAX_LENGTH = 64


class Permutation(tuple):
    """An immutable permutation of ``1..n`` in one-line notation."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        self = super().__new__(cls, entries)
        n = len(self)
        if n > MAX_LENGTH:
            raise ValueError(f"permutation length {n} exceeds the cap of {MAX_LENGTH}")
        if sorted(self) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {tuple(self)!r}")
        return self

    @classmethod
    def _trusted(cls, entries: Iterable[int]) -> "Permutation":
        # skips validation; callers guarantee a rearrangement of 1..n
        return super().__new__(cls, entries)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"2413"`` (compact, n <= 9) or ``"10,2,4,..."``."""
        text = text.strip()
        if not text:
            raise ValueError("empty permutation literal")
        if "," in text:
            parts = [t.strip() for t in text.split(",")]
            if parts and parts[-1] == "":
                parts.pop()
            try:
                entries = [int(t) for t in parts]
            except ValueError:
                raise ValueError(f"bad permutation literal {text!r}") from None
        else:
            if not text.isdigit() or "0" in text:
                raise ValueError(f"bad permutation literal {text!r}")
            entries = [int(ch) for ch in text]
        return cls(entries)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(range(1, n + 1))

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Permutation._trusted(inv)

    def delete(self, index: int) -> "Permutation":
        """Remove the entry at 0-based ``index`` and standardize."""
        return standardize(self[:index] + self[index + 1:])

    def pattern_at(self, indices: Sequence[int]) -> "Permutation":
        """The pattern formed by the entries at the given 0-based indices."""
        return standardize([self[i] for i in indices])


def standardize(values: Sequence[int]) -> Permutation:
    """The permutation order isomorphic to a sequence of distinct integers."""
    ranks = {v: r for r, v in enumerate(sorted(values), 1)}
    return Permutation._trusted(ranks[v] for v in values)


class Interval(NamedTuple):
    """Positions ``start..end`` (1-based, inclusive) whose values are contiguous."""

    start: int
    end: int

    def __len__(self) -> int:  # type: ignore[override]
        return self.end - self.start + 1


@dataclass(frozen=True)
class SimpleQuotient:
    quotient: Permutation
    parts: tuple[Permutation, ...]

    def inflate(self) -> Permutation:
        return inflate(self.quotient, self.parts)


# -- containment ------------------------------------------------------------

def _pattern_bounds(pattern: Sequence[int]) -> list[tuple[int, int]]:
    # For pattern index k: indices j < k holding the nearest smaller and
    # nearest larger values among pattern[:k] (-1 when absent).
    bounds = []
    for k, v in enumerate(pattern):
        lo, hi = -1, -1
        for j in range(k):
            w = pattern[j]
            if w < v and (lo < 0 or w > pattern[lo]):
                lo = j
            elif w > v and (hi < 0 or w < pattern[hi]):
                hi = j
        bounds.append((lo, hi))
    return bounds


def occurrence(text: Sequence[int], pattern: Sequence[int]) -> tuple[int, ...] | None:
    """Leftmost-lexicographic 0-based indices of an occurrence of ``pattern``.

    Returns ``None`` when ``text`` avoids ``pattern``.
    """
    k = len(pattern)
    n = len(text)
    if k == 0:
        return ()
    if k > n:
        return None
    bounds = _pattern_bounds(pattern)
    chosen = [0] * k

    def search(depth: int, start: int) -> bool:
        lo, hi = bounds[depth]
        low = text[chosen[lo]] if lo >= 0 else 0
        high = text[chosen[hi]] if hi >= 0 else n + 1
        # leave room for the remaining pattern entries
        for i in range(start, n - (k - depth) + 1):
            v = text[i]
            if low < v < high:
                chosen[depth] = i
                if depth + 1 == k or search(depth + 1, i + 1):
                    return True
        return False

    return tuple(chosen) if search(0, 0) else None


def contains(text: Sequence[int], pattern: Sequence[int]) -> bool:
    """True iff some subsequence of ``text`` is order isomorphic to ``pattern``.

    >>> contains(Permutation.parse("391867452"), Permutation.parse("51342"))
    True
    """
    return occurrence(text, pattern) is not None


# -- intervals and simplicity ------------------------------------------------

def proper_intervals(p: Sequence[int]) -> list[Interval]:
    """All intervals of length strictly between 1 and ``len(p)``, sorted by (start, end)."""
    n = len(p)
    found = []
    for i in range(n - 1):
        lo = hi = p[i]
        for j in range(i + 1, n):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i and j - i + 1 < n:
                found.append(Interval(i + 1, j + 1))
    return found


def is_simple_entries(p: Sequence[int]) -> bool:
    """Simplicity test on a raw sequence; used on the enumeration hot path."""
    n = len(p)
    if n <= 2:
        return True
    prev = p[0]
    for v in p[1:]:
        if v - prev == 1 or prev - v == 1:
            return False
        prev = v
    last = n - 1
    for i in range(n - 2):
        lo = hi = p[i]
        stop = n if i else last
        for j in range(i + 1, stop):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i:
                return False
    return True


def is_simple(p: Sequence[int]) -> bool:
    """True iff ``p`` has no proper interval (so 1, 12 and 21 are simple)."""
    return is_simple_entries(p)


# -- sums and inflations -----------------------------------------------------

def direct_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    m = len(a)
    return Permutation._trusted((*a, *(v + m for v in b)))


def skew_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    m = len(b)
    return Permutation._trusted((*(v + m for v in a), *b))


def inflate(quotient: Sequence[int], parts: Sequence[Sequence[int]]) -> Permutation:
    """The inflation of ``quotient`` by ``parts``, one block per quotient entry."""
    if len(parts) != len(quotient):
        raise ValueError(
            f"inflation of a length-{len(quotient)} quotient needs {len(quotient)} parts, got {len(parts)}"
        )
    if any(len(part) == 0 for part in parts):
        raise ValueError("inflation parts must be nonempty")
    # offset of block i = total size of the blocks for smaller quotient values
    sizes_by_value = [0] * (len(quotient) + 1)
    for v, part in zip(quotient, parts):
        sizes_by_value[v] = len(part)
    offsets = [0] * (len(quotient) + 1)
    for v in range(2, len(quotient) + 1):
        offsets[v] = offsets[v - 1] + sizes_by_value[v - 1]
    out: list[int] = []
    for v, part in zip(quotient, parts):
        base = offsets[v]
        out.extend(base + w for w in part)
    return Permutation(out)


def first_sum_split(p: Sequence[int]) -> int:
    """Smallest ``k`` in ``1..n-1`` with ``p[:k]`` a sum component, else 0."""
    top = 0
    for k, v in enumerate(p[:-1], 1):
        if v > top:
            top = v
        if top == k:
            return k
    return 0


def first_skew_split(p: Sequence[int]) -> int:
    """Smallest ``k`` in ``1..n-1`` with ``p[:k]`` a skew component, else 0."""
    n = len(p)
    low = n + 1
    for k, v in enumerate(p[:-1], 1):
        if v < low:
            low = v
        if low == n - k + 1:
            return k
    return 0


def is_sum_decomposable(p: Sequence[int]) -> bool:
    return first_sum_split(p) > 0


def is_skew_decomposable(p: Sequence[int]) -> bool:
    return first_skew_split(p) > 0


def simple_quotient(p: Sequence[int]) -> SimpleQuotient:
    """The canonical substitution decomposition of a nonempty permutation.

    Sum decomposable permutations come back as ``12[alpha, beta]`` with
    ``alpha`` sum indecomposable, skew decomposable ones as ``21[alpha, beta]``
    with ``alpha`` skew indecomposable.
    """
    n = len(p)
    if n == 0:
        raise ValueError("the empty permutation has no simple quotient")
    p = tuple(p)
    if n == 1:
        return SimpleQuotient(Permutation._trusted((1,)), (Permutation._trusted((1,)),))
    k = first_sum_split(p)
    if k:
        return SimpleQuotient(
            Permutation._trusted((1, 2)), (standardize(p[:k]), standardize(p[k:]))
        )
    k = first_skew_split(p)
    if k:
        return SimpleQuotient(
            Permutation._trusted((2, 1)), (standardize(p[:k]), standardize(p[k:]))
        )
    # Quotient has length >= 4, so the maximal proper intervals are disjoint
    # and every proper interval sits inside one of them.
    blocks: list[tuple[int, int]] = []
    covered = [False] * n
    for iv in sorted(proper_intervals(p), key=lambda iv: iv.start - iv.end):
        lo, hi = iv.start - 1, iv.end - 1
        if not covered[lo] and not covered[hi]:
            blocks.append((lo, hi))
            for i in range(lo, hi + 1):
                covered[i] = True
    blocks.extend((i, i) for i in range(n) if not covered[i])
    blocks.sort()
    quotient = standardize([p[lo] for lo, _ in blocks])
    parts = tuple(standardize(p[lo:hi + 1]) for lo, hi in blocks)
    return SimpleQuotient(quotient, parts)
