"""Truncated formal power series with exact rational coefficients.

A :class:`TruncatedSeries` of order ``N`` knows the coefficients of
``x^0 .. x^N`` exactly and nothing beyond.  Binary operations return the
minimum order of their operands; nothing is ever padded with zeros.

Coefficients are kept as ``int`` whenever they are integral (every series
counted here is), falling back to :class:`fractions.Fraction` otherwise.

A :class:`BivariateSeries` is a polynomial in a marker ``y`` whose
coefficients are series in ``x``.  Every replacement substituted for ``y``
carries at least one factor of ``x``, so ``y^d`` only reaches ``x^d`` and
beyond; degrees above the x-order can be dropped without loss.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "Coeff",
    "SeriesError",
    "TruncatedSeries",
    "BivariateSeries",
    "LinearZSeries",
    "substitute_y",
    "evaluate_y",
]

Coeff = Union[int, Fraction]


class SeriesError(ValueError):
    """An operation's precondition on its series arguments does not hold."""


def _norm(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"series coefficients must be exact rationals, got {type(c).__name__}")


def _fmt(c: Coeff) -> str:
    return str(c)


class TruncatedSeries:
    """Exact coefficients ``c_0 .. c_N`` of a power series in ``x``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_norm(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            # listed coefficients are exact; missing ones up to the order are zero
            cs.extend([0] * (order + 1 - len(cs)))
        self.coeffs: tuple[Coeff, ...] = tuple(cs)
        self.order = order

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> "TruncatedSeries":
        return cls([0] * k + [c], order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    # -- access -------------------------------------------------------------

    def __getitem__(self, k: int) -> Coeff:
        if k < 0:
            return 0
        if k > self.order:
            raise IndexError(f"coefficient x^{k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, or ``order + 1`` if none is known."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.order + 1

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to order {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality up to the smaller of the two orders."""
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries([a[k] + b[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [0] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai:
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        a = self.coeffs
        if not a[0]:
            raise SeriesError("cannot invert a series with zero constant term")
        inv0 = Fraction(1) / a[0]
        out = [_norm(inv0)]
        for k in range(1, self.order + 1):
            s = sum(a[j] * out[k - j] for j in range(1, k + 1))
            out.append(_norm(-s * inv0))
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise SeriesError("division by zero")
            return TruncatedSeries([Fraction(c) / other for c in self.coeffs], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if not other.coeffs[0]:
            raise SeriesError("divisor has zero constant term")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift_down(self, k: int = 1) -> "TruncatedSeries":
        """Divide by ``x^k``; the first ``k`` coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise SeriesError(f"series is not divisible by x^{k}")
        if self.order < k:
            raise SeriesError("not enough known coefficients to divide by x^k")
        return TruncatedSeries(self.coeffs[k:], self.order - k)

    def shift_up(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by ``x^k`` (the order grows by ``k``)."""
        return TruncatedSeries([0] * k + list(self.coeffs), self.order + k)

    def sqrt(self) -> "TruncatedSeries":
        """Square root with constant term +1, by Newton iteration.

        Each step ``r <- (r + a/r) / 2`` doubles the number of correct
        coefficients.
        """
        if self.coeffs[0] != 1:
            raise SeriesError("sqrt needs constant term exactly 1")
        r = TruncatedSeries([1], 0)
        prec = 1
        while prec <= self.order:
            prec = min(2 * prec, self.order + 1)
            a = self.truncate(prec - 1)
            r = TruncatedSeries(r.coeffs, prec - 1)
            r = (r + a / r) * Fraction(1, 2)
        return r

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(x))`` by Horner's rule; ``inner`` needs zero constant term."""
        if inner.coeffs[0]:
            raise SeriesError("inner series of a composition must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = TruncatedSeries.zero(n)
        for c in reversed(self.coeffs[: n + 1]):
            acc = acc * inner + c
        return acc

    def __call__(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return self.compose(inner)

    # -- rendering ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if k == 0:
                terms.append(_fmt(c))
            elif k == 1:
                terms.append(f"{_fmt(c)} x")
            else:
                terms.append(f"{_fmt(c)} x^{k}")
        return " + ".join(terms) + f" + O(x^{self.order + 1})"

    def to_dict(self) -> dict:
        return {"order": str(self.order), "coeffs": [str(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedSeries":
        return cls([Fraction(c) for c in data["coeffs"]], int(data["order"]))

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_dict(json.loads(text))


# -- bivariate ---------------------------------------------------------------

class BivariateSeries:
    """``sum_d b_d(x) y^d`` for ``d = 0..N``, each ``b_d`` known to x-order ``N``.

    Stored as a list of coefficient rows, ``rows[d][a]`` being the coefficient
    of ``x^a y^d``.
    """

    __slots__ = ("rows", "order")

    def __init__(self, rows: Sequence[Sequence], order: int):
        self.order = order
        out = []
        for d in range(order + 1):
            row = list(rows[d]) if d < len(rows) else []
            row = [_norm(c) for c in row[: order + 1]]
            row.extend([0] * (order + 1 - len(row)))
            out.append(row)
        self.rows: list[list[Coeff]] = out

    @classmethod
    def from_series(cls, s: TruncatedSeries) -> "BivariateSeries":
        """A y-free bivariate series."""
        return cls([list(s.coeffs)], s.order)

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], Coeff], order: int) -> "BivariateSeries":
        """Build from ``{(x_degree, y_degree): coefficient}``."""
        rows = [[0] * (order + 1) for _ in range(order + 1)]
        for (a, d), c in terms.items():
            if a <= order and d <= order:
                rows[d][a] += c
        return cls(rows, order)

    @classmethod
    def y(cls, order: int) -> "BivariateSeries":
        return cls.from_terms({(0, 1): 1}, order)

    @classmethod
    def step_replacement(cls, order: int) -> "BivariateSeries":
        """``x(1 + y) / (1 - xy) = x + xy + x^2 y + x^2 y^2 + ...``"""
        terms = {}
        for k in range(order + 1):
            terms[(k + 1, k)] = 1
            terms[(k + 1, k + 1)] = 1
        return cls.from_terms(terms, order)

    def y_coefficient(self, d: int) -> TruncatedSeries:
        return TruncatedSeries(self.rows[d], self.order)

    @property
    def y_coefficients(self) -> list[TruncatedSeries]:
        return [self.y_coefficient(d) for d in range(self.order + 1)]

    def x_valuation_by_degree(self) -> list[int]:
        return [self.y_coefficient(d).valuation() for d in range(self.order + 1)]

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariateSeries):
            return self.order == other.order and self.rows == other.rows
        return NotImplemented

    def truncate(self, order: int) -> "BivariateSeries":
        if order > self.order:
            raise SeriesError("cannot extend a bivariate series")
        return BivariateSeries([row[: order + 1] for row in self.rows[: order + 1]], order)

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        n = min(self.order, other.order)
        return BivariateSeries(
            [[self.rows[d][a] + other.rows[d][a] for a in range(n + 1)] for d in range(n + 1)], n
        )

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries([[-c for c in row] for row in self.rows], self.order)

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            other = BivariateSeries.from_series(other)
        if isinstance(other, (int, Fraction)):
            return BivariateSeries([[c * other for c in row] for row in self.rows], self.order)
        n = min(self.order, other.order)
        out = [[0] * (n + 1) for _ in range(n + 1)]
        A, B = self.rows, other.rows
        for d1 in range(n + 1):
            r1 = A[d1]
            for a1 in range(n + 1):
                c = r1[a1]
                if not c:
                    continue
                for d2 in range(n + 1 - d1):
                    r2 = B[d2]
                    row = out[d1 + d2]
                    for a2 in range(n + 1 - a1):
                        if r2[a2]:
                            row[a1 + a2] += c * r2[a2]
        return BivariateSeries(out, n)

    __rmul__ = __mul__

    def times_y(self) -> "BivariateSeries":
        return BivariateSeries([[0] * (self.order + 1)] + self.rows[:-1], self.order)

    def over_one_plus_y(self) -> "BivariateSeries":
        """Multiply by ``1/(1 + y) = 1 - y + y^2 - ...``."""
        out = []
        prev = [0] * (self.order + 1)
        for row in self.rows:
            prev = [c - q for c, q in zip(row, prev)]
            out.append(prev)
        return BivariateSeries(out, self.order)

    def times_y_over_one_plus_y(self) -> "BivariateSeries":
        return self.times_y().over_one_plus_y()

    def substitute_canonical(self) -> "BivariateSeries":
        """Replace ``y`` by ``x(1 + y)/(1 - xy)`` in ``O(N^3)`` time.

        Horner's rule where multiplying by the replacement is a shift by
        ``x``, a multiplication by ``1 + y`` and a geometric sum in ``xy``.
        """
        n = self.order
        acc = [[0] * (n + 1) for _ in range(n + 1)]
        for d in range(n, -1, -1):
            # acc <- acc * x(1+y)
            nxt = [[0] * (n + 1) for _ in range(n + 1)]
            for e in range(n + 1):
                row = acc[e]
                for a in range(n):
                    c = row[a]
                    if c:
                        nxt[e][a + 1] += c
                        if e < n:
                            nxt[e + 1][a + 1] += c
            # acc <- acc / (1 - xy):  g[e][a] = f[e][a] + g[e-1][a-1]
            for e in range(1, n + 1):
                cur, below = nxt[e], nxt[e - 1]
                for a in range(n, 0, -1):
                    if below[a - 1]:
                        cur[a] += below[a - 1]
            # acc <- acc + b_d
            row_d = self.rows[d]
            nxt[0] = [c + q for c, q in zip(nxt[0], row_d)]
            acc = nxt
        return BivariateSeries(acc, n)

    def __repr__(self) -> str:
        return f"BivariateSeries(order={self.order}, terms={self.terms()!r})"

    def terms(self) -> dict[tuple[int, int], Coeff]:
        return {(a, d): c for d, row in enumerate(self.rows) for a, c in enumerate(row) if c}


def substitute_y(b: BivariateSeries, replacement: BivariateSeries) -> BivariateSeries:
    """``b(x, replacement(x, y))`` exact to x-order ``N``.

    ``replacement`` must have x-valuation at least 1 in every y-degree, so
    that ``replacement^d`` starts at ``x^d``.
    """
    if any(v < 1 for v in replacement.x_valuation_by_degree()):
        raise SeriesError("replacement for y must have x-valuation >= 1 in every y-degree")
    n = min(b.order, replacement.order)
    b = b.truncate(n)
    replacement = replacement.truncate(n)
    acc = BivariateSeries([], n)
    for d in range(n, -1, -1):
        acc = acc * replacement + BivariateSeries.from_series(b.y_coefficient(d))
    return acc


def evaluate_y(b: BivariateSeries, value: TruncatedSeries) -> TruncatedSeries:
    """``b(x, value(x))``; ``value`` must have zero constant term."""
    if value.order >= 0 and value.coeffs[0]:
        raise SeriesError("value substituted for y must have zero constant term")
    n = min(b.order, value.order)
    value = value.truncate(n)
    acc = TruncatedSeries.zero(n)
    for d in range(n, -1, -1):
        acc = acc * value + b.y_coefficient(d).truncate(n)
    return acc


class LinearZSeries:
    """``base + z * linear`` with ``base`` and ``linear`` bivariate in (x, y).

    The second marker ``z`` only ever appears to the first power, so it is a
    single extra slot rather than a full third variable.
    """

    def __init__(self, base: BivariateSeries, linear: BivariateSeries):
        self.base = base
        self.linear = linear

    def eliminate_z(self, z_value: BivariateSeries, y_value: BivariateSeries | None = None,
                    fast: bool = True) -> BivariateSeries:
        """Substitute ``y -> y_value`` (default: the canonical step) and ``z -> z_value``."""
        if y_value is None:
            sub = (lambda s: s.substitute_canonical()) if fast else (
                lambda s: substitute_y(s, BivariateSeries.step_replacement(s.order)))
        else:
            sub = lambda s: substitute_y(s, y_value)  # noqa: E731
        return sub(self.base) + sub(self.linear) * z_value
