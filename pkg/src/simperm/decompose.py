"""Cell decompositions: staircases of 321-avoiders and spirals of simple
skew-merged permutations.

Entries are reported as 1-based ``(position, value)`` pairs.

Areas of a skew-merged permutation, by the role an entry can play::

    I    the 1 of some 132      (lower left, increasing)
    II   the 1 of some 231      (lower right, decreasing)
    III  the 3 of some 213      (upper right, increasing)
    IV   the 3 of some 312      (upper left, decreasing)

Whatever is in no area is the central region.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .classes import ClassId, is_member
from .permcore import Permutation, is_simple

__all__ = [
    "DecompositionError",
    "NotInClassError",
    "NotSimpleError",
    "TooShortError",
    "HasCentralElementError",
    "InternalInvariantError",
    "Entry",
    "CellDecomposition",
    "InnerElements",
    "staircase",
    "areas",
    "central_element",
    "inner_elements",
    "spiral_cells",
    "ascii_plot",
]

Entry = tuple[int, int]


class DecompositionError(ValueError):
    """Base class for rejected decomposition inputs."""


class NotInClassError(DecompositionError):
    pass


class NotSimpleError(DecompositionError):
    pass


class TooShortError(DecompositionError):
    pass


class HasCentralElementError(DecompositionError):
    pass


class InternalInvariantError(AssertionError):
    """A structural fact that must hold for valid input did not; this is a bug."""


@dataclass(frozen=True)
class CellDecomposition:
    kind: str
    cells: tuple[tuple[Entry, ...], ...]
    inner_pattern: Optional[str] = None
    central: Optional[Entry] = None

    def entries(self) -> list[Entry]:
        out = [e for cell in self.cells for e in cell]
        if self.central is not None:
            out.append(self.central)
        return sorted(out)

    def reconstruct(self) -> Permutation:
        """Flatten by position back into the permutation."""
        return Permutation(v for _, v in self.entries())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "cells": [[list(e) for e in cell] for cell in self.cells],
            "inner_pattern": self.inner_pattern,
            "central": list(self.central) if self.central else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _entry(p: Sequence[int], i: int) -> Entry:
    return (i + 1, p[i])


# -- staircase ----------------------------------------------------------------

def staircase(p: Sequence[int]) -> CellDecomposition:
    """Split a 321-avoider into alternating increasing cells.

    Odd cells take the longest increasing run of the remaining entries read
    left to right; even cells the longest run read bottom to top whose
    positions also increase.
    """
    p = Permutation(p)
    if not p:
        raise TooShortError("staircase needs a nonempty permutation")
    if not is_member(p, ClassId.AV321):
        raise NotInClassError(f"{p} contains 321")
    remaining = list(range(len(p)))
    cells = []
    horizontal = True
    while remaining:
        order = remaining if horizontal else sorted(remaining, key=lambda i: p[i])
        cell = [order[0]]
        for i in order[1:]:
            if i > cell[-1] and p[i] > p[cell[-1]]:
                cell.append(i)
            else:
                break
        taken = set(cell)
        remaining = [i for i in remaining if i not in taken]
        cells.append(tuple(_entry(p, i) for i in sorted(cell)))
        horizontal = not horizontal
    return CellDecomposition("staircase", tuple(cells))


# -- skew-merged structure ------------------------------------------------------

_ROLES = {
    (1, 3, 2): (0, 1),  # I: first entry of 132
    (2, 3, 1): (2, 2),  # II: last entry of 231
    (2, 1, 3): (2, 3),  # III: last entry of 213
    (3, 1, 2): (0, 4),  # IV: first entry of 312
}


def _pattern3(a: int, b: int, c: int) -> tuple[int, int, int]:
    if a < b:
        if b < c:
            return (1, 2, 3)
        return (1, 3, 2) if a < c else (2, 3, 1)
    if a < c:
        return (2, 1, 3)
    return (3, 1, 2) if b < c else (3, 2, 1)


def areas(p: Sequence[int]) -> dict[int, list[int]]:
    """0-based indices in each of areas 1-4 (I-IV) and 0 (central)."""
    found: dict[int, set[int]] = {1: set(), 2: set(), 3: set(), 4: set()}
    for idx in combinations(range(len(p)), 3):
        role = _ROLES.get(_pattern3(p[idx[0]], p[idx[1]], p[idx[2]]))
        if role:
            found[role[1]].add(idx[role[0]])
    out = {k: sorted(v) for k, v in found.items()}
    placed = set().union(*found.values())
    out[0] = [i for i in range(len(p)) if i not in placed]
    if sum(len(v) for v in found.values()) != len(placed):
        raise InternalInvariantError(f"areas of {p} overlap")
    return out


def _check_simple_skew_merged(p: Sequence[int]) -> Permutation:
    p = Permutation(p)
    if len(p) < 4:
        raise TooShortError(f"{p} has length {len(p)}; need a simple permutation of length >= 4")
    if not is_member(p, ClassId.SKEW_MERGED):
        raise NotInClassError(f"{p} is not skew-merged")
    if not is_simple(p):
        raise NotSimpleError(f"{p} is not simple")
    return p


def central_element(p: Sequence[int]) -> Optional[Entry]:
    """The entry of a simple skew-merged permutation lying in no area, if any."""
    p = _check_simple_skew_merged(p)
    central = areas(p)[0]
    if len(central) > 1:
        raise InternalInvariantError(f"{p} has {len(central)} central entries")
    if not central:
        return None
    i = central[0]
    if not is_simple(p.delete(i)):
        raise InternalInvariantError(f"removing the central entry of {p} breaks simplicity")
    return _entry(p, i)


@dataclass(frozen=True)
class InnerElements:
    """Labels follow the 3142 case, read ``c a d b`` left to right; for
    2413 they are the transposes of the inverse's labels."""

    pattern: str
    a: Entry
    b: Entry
    c: Entry
    d: Entry


def _inner_indices(p: Permutation, ar: dict[int, list[int]]) -> dict[str, int]:
    for k in (1, 2, 3, 4):
        if not ar[k]:
            raise InternalInvariantError(f"area {k} of simple {p} is empty")
    # the entry of each area nearest the crossing point of the two diagonals
    return {
        "a": max(ar[1]),   # rightmost in I
        "b": min(ar[2]),   # leftmost (highest) in II
        "d": min(ar[3]),   # leftmost (lowest) in III
        "c": max(ar[4]),   # rightmost (lowest) in IV
    }


def _transpose(e: Entry) -> Entry:
    return (e[1], e[0])


def inner_elements(p: Sequence[int]) -> InnerElements:
    p = _check_simple_skew_merged(p)
    ar = areas(p)
    if ar[0]:
        raise HasCentralElementError(f"{p} has a central element; remove it first")
    idx = _inner_indices(p, ar)
    pattern = str(p.pattern_at(sorted(idx.values())))
    if pattern == "3142":
        return InnerElements(pattern, *(_entry(p, idx[k]) for k in "abcd"))
    if pattern == "2413":
        inv = inner_elements(p.inverse())
        return InnerElements(pattern, _transpose(inv.a), _transpose(inv.b),
                             _transpose(inv.c), _transpose(inv.d))
    raise InternalInvariantError(f"inner elements of {p} form {pattern}")


def _spiral_3142(p: Permutation, ar: dict[int, list[int]], c_index: int) -> list[list[int]]:
    used: set[int] = set()
    cells: list[list[int]] = []
    prev = [c_index]
    k = 1
    while True:
        area = (k - 1) % 4 + 1
        candidates = [i for i in ar[area] if i not in used]
        if area == 1:    # right of some entry of the previous cell
            bound = min(prev)
            cell = [i for i in candidates if i > bound]
        elif area == 2:  # above some entry
            bound = min(p[j] for j in prev)
            cell = [i for i in candidates if p[i] > bound]
        elif area == 3:  # left of some entry
            bound = max(prev)
            cell = [i for i in candidates if i < bound]
        else:            # below some entry
            bound = max(p[j] for j in prev)
            cell = [i for i in candidates if p[i] < bound]
        if not cell:
            break
        cells.append(cell)
        used.update(cell)
        prev = cell
        k += 1
    if len(used) != len(p):
        raise InternalInvariantError(
            f"spiral of {p} stopped after {len(cells)} cells covering {len(used)} of {len(p)} entries"
        )
    return cells


def spiral_cells(p: Sequence[int]) -> CellDecomposition:
    """Monotone cells C1, C2, ... spiralling outwards from the inner elements.

    A central element, if present, is set aside: the cells are those of the
    permutation with it removed, lifted back into ``p``.
    """
    p = _check_simple_skew_merged(p)
    central = central_element(p)
    if central is not None:
        pos, val = central
        rest = spiral_cells(p.delete(pos - 1))
        lift = lambda e: (e[0] + (e[0] >= pos), e[1] + (e[1] >= val))  # noqa: E731
        cells = tuple(tuple(lift(e) for e in cell) for cell in rest.cells)
        return CellDecomposition("spiral", cells, rest.inner_pattern, central)
    inner = inner_elements(p)
    if inner.pattern == "2413":
        inv = spiral_cells(p.inverse())
        cells = tuple(tuple(sorted(_transpose(e) for e in cell)) for cell in inv.cells)
        return CellDecomposition("spiral", cells, "2413", None)
    cells = _spiral_3142(p, areas(p), inner.c[0] - 1)
    return CellDecomposition(
        "spiral", tuple(tuple(_entry(p, i) for i in cell) for cell in cells), "3142", None
    )


# -- rendering ----------------------------------------------------------------

_LABELS = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"


def ascii_plot(d: CellDecomposition) -> str:
    """Plot of the permutation with each entry drawn as its cell label; ``*`` is central."""
    labels: dict[Entry, str] = {}
    for k, cell in enumerate(d.cells):
        for e in cell:
            labels[e] = _LABELS[k % len(_LABELS)]
    if d.central is not None:
        labels[d.central] = "*"
    n = len(labels)
    grid = [["."] * n for _ in range(n)]
    for (pos, val), ch in labels.items():
        grid[n - val][pos - 1] = ch
    width = len(str(n))
    lines = [f"{n - r:>{width}} " + " ".join(row) for r, row in enumerate(grid)]
    return "\n".join(lines)
