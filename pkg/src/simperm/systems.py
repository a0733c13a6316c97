"""Generating functions for both classes and their simple permutations.

Each count is produced by more than one route (closed form, implicit relation
with the whole class, iterated cell-by-cell development) so that the routes
can be checked against one another and against brute-force enumeration.

Conventions: series count nonempty permutations; ``s321`` and
``s_skew_merged`` count simple permutations of length at least 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import (
    BivariateSeries,
    LinearZSeries,
    TruncatedSeries,
    evaluate_y,
)

__all__ = [
    "NamedSeries",
    "SERIES_NAMES",
    "named_series",
    "x_over_one_minus_x",
    "x_over_one_plus_x",
    "catalan_c",
    "sum_dec_gf",
    "s321_implicit",
    "s321_closed_form",
    "step_substitution",
    "naive_development",
    "fixed_point_y0",
    "fixed_point_y0_newton",
    "fixed_point_residual",
    "s321_naive",
    "s321_corrected_raw",
    "s321_corrected",
    "skew_merged_u_system",
    "skew_merged_u",
    "skew_merged_u_closed_form",
    "skew_merged_simples_gf",
    "skew_merged_class_gf",
    "skew_merged_class_closed_form",
    "skew_merged_f_residual",
    "master_identity_residual",
    "radical_substitution_identity",
]


def _x(n: int) -> TruncatedSeries:
    return TruncatedSeries.x(n)


def x_over_one_minus_x(n: int) -> TruncatedSeries:
    return TruncatedSeries([0] + [1] * n, n)


def x_over_one_plus_x(n: int) -> TruncatedSeries:
    return TruncatedSeries([0] + [(-1) ** (k - 1) for k in range(1, n + 1)], n)


def _motzkin_radical(n: int) -> TruncatedSeries:
    """sqrt(1 - 2x - 3x^2)"""
    return TruncatedSeries([1, -2, -3], n).sqrt()


# -- 321-avoiders -------------------------------------------------------------

def catalan_c(n: int) -> TruncatedSeries:
    """Nonempty 321-avoiders: ``(1 - 2x - sqrt(1 - 4x)) / (2x)``."""
    m = n + 1
    num = TruncatedSeries([1, -2], m) - TruncatedSeries([1, -4], m).sqrt()
    return num.shift_down(1) * Fraction(1, 2)


def sum_dec_gf(n: int) -> TruncatedSeries:
    """Sum decomposable 321-avoiders, ``c^2 / (1 + c)``."""
    c = catalan_c(n)
    return c * c / (1 + c)


def _skew_dec_321(n: int) -> TruncatedSeries:
    # x^2 / (1 - x)^2
    return TruncatedSeries([0, 0] + list(range(1, n)), n)


def s321_implicit(n: int) -> TruncatedSeries:
    """Simple 321-avoiders of length >= 4 from the four-way split of the class.

    Whatever the class leaves after removing ``1``, skew sums and direct sums
    is ``s(x/(1-x))``; composing with ``x/(1+x)`` undoes the substitution.
    """
    c = catalan_c(n)
    leftover = c - _x(n) - _skew_dec_321(n) - sum_dec_gf(n)
    return leftover.compose(x_over_one_plus_x(n))


def s321_closed_form(n: int) -> TruncatedSeries:
    """``(1 - x - 2x^2 - 2x^3 - sqrt(1 - 2x - 3x^2)) / (2 + 2x)``"""
    num = TruncatedSeries([1, -1, -2, -2], n) - _motzkin_radical(n)
    return num / TruncatedSeries([2, 2], n)


def master_identity_residual(n: int, s: TruncatedSeries | None = None) -> TruncatedSeries:
    """``c - x - x^2/(1-x)^2 - c^2/(1+c) - s(x/(1-x))``; zero when ``s`` is right."""
    if s is None:
        s = s321_implicit(n)
    c = catalan_c(n)
    return c - _x(n) - _skew_dec_321(n) - c * c / (1 + c) - s.compose(x_over_one_minus_x(n))


def step_substitution(b: BivariateSeries) -> BivariateSeries:
    """Replace each hollow dot ``y`` by ``x(y + 1)/(1 - xy)``."""
    return b.substitute_canonical()


def naive_development(cells: int, n: int) -> BivariateSeries:
    """``s_cells(x, y)`` from ``s_1 = y`` by repeated step substitution."""
    s = BivariateSeries.y(n)
    for _ in range(cells - 1):
        s = step_substitution(s)
    return s


def fixed_point_y0(n: int) -> TruncatedSeries:
    """Zero-constant-term root of ``x y^2 + (x - 1) y + x = 0`` (Motzkin numbers).

    Quadratic formula: ``(1 - x - sqrt(1 - 2x - 3x^2)) / (2x)``.
    """
    m = n + 1
    num = TruncatedSeries([1, -1], m) - _motzkin_radical(m)
    return num.shift_down(1) * Fraction(1, 2)


def fixed_point_residual(y: TruncatedSeries) -> TruncatedSeries:
    n = y.order
    x = _x(n)
    return x * y * y + (x - 1) * y + x


def fixed_point_y0_newton(n: int) -> TruncatedSeries:
    """The same root by Newton iteration on the quadratic residual."""
    y = TruncatedSeries([0], 0)
    prec = 1
    while prec <= n:
        prec = min(2 * prec, n + 1)
        y = TruncatedSeries(y.coeffs, prec - 1)
        x = _x(prec - 1)
        derivative = 2 * x * y + x - 1
        y = y - fixed_point_residual(y) / derivative
    return y


def s321_naive(n: int) -> TruncatedSeries:
    """The uncorrected development ``s_1 = y`` evaluated at the fixed point."""
    return evaluate_y(BivariateSeries.y(n), fixed_point_y0(n))


def s321_corrected_raw(n: int, fast: bool = True) -> TruncatedSeries:
    """Two-cell start ``xz/(1 - xy)``, one substitution step, then the fixed point.

    ``z`` marks the least element; it becomes ``x/(1 - xy)`` while ``y``
    takes the usual step.  The result still counts the permutation 21.
    """
    x_geometric = BivariateSeries.from_terms({(k + 1, k): 1 for k in range(n + 1)}, n)
    s2 = LinearZSeries(BivariateSeries([], n), x_geometric)
    s3 = s2.eliminate_z(x_geometric, fast=fast)
    return evaluate_y(s3, fixed_point_y0(n))


def s321_corrected(n: int, fast: bool = True) -> TruncatedSeries:
    """Simple 321-avoiders of length >= 4 via the corrected development."""
    return s321_corrected_raw(n, fast) - TruncatedSeries.monomial(2, n)


# -- skew-merged --------------------------------------------------------------

def skew_merged_u_system(n: int, fast: bool = True) -> BivariateSeries:
    """``u_5(x, y)``: four corrected steps from ``u_1 = y``.

    Steps into cells 2-4 force the leading optional insertion (factor
    ``y/(y+1)``); the step into cell 5 forbids it (factor ``1/(y+1)``).
    """
    if fast:
        step = step_substitution
    else:
        from .series import substitute_y

        replacement = BivariateSeries.step_replacement(n)
        step = lambda b: substitute_y(b, replacement)  # noqa: E731
    u = BivariateSeries.y(n)
    for _ in range(3):
        u = step(u).times_y_over_one_plus_y()
    return step(u).over_one_plus_y()


def skew_merged_u(n: int, fast: bool = True) -> TruncatedSeries:
    """Simple skew-merged permutations with inner pattern 3142 and no central element."""
    return evaluate_y(skew_merged_u_system(n, fast), fixed_point_y0(n))


def skew_merged_u_closed_form(n: int) -> TruncatedSeries:
    """``(1 - 2x - x^2 + (x - 1) sqrt(1 - 2x - 3x^2)) / (2 (x + 1)^2)``"""
    num = TruncatedSeries([1, -2, -1], n) + TruncatedSeries([-1, 1], n) * _motzkin_radical(n)
    return num / TruncatedSeries([2, 4, 2], n)


def skew_merged_simples_gf(n: int) -> TruncatedSeries:
    """All simple skew-merged permutations of length >= 4: ``2 (1 + x) u``."""
    return TruncatedSeries([2, 2], n) * skew_merged_u(n)


def skew_merged_class_gf(n: int, u: TruncatedSeries | None = None) -> TruncatedSeries:
    """Nonempty skew-merged permutations, from the simples.

    Solves ``f = x + 4xf - 2x^2 (f + 1) + 2 U (f + 1)`` with
    ``U = u(x/(1-x))`` for ``f``.
    """
    if u is None:
        u = skew_merged_u(n)
    big_u = u.compose(x_over_one_minus_x(n))
    x = _x(n)
    x2 = TruncatedSeries.monomial(2, n)
    return (x - 2 * x2 + 2 * big_u) / (1 - 4 * x + 2 * x2 - 2 * big_u)


def skew_merged_class_closed_form(n: int) -> TruncatedSeries:
    """``(1 - 3x) / ((1 - 2x) sqrt(1 - 4x))``; this one includes the empty permutation."""
    return TruncatedSeries([1, -3], n) / (TruncatedSeries([1, -2], n) * TruncatedSeries([1, -4], n).sqrt())


def skew_merged_f_residual(f: TruncatedSeries, u: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, u.order)
    f = f.truncate(n)
    x = _x(n)
    x2 = TruncatedSeries.monomial(2, n)
    big_u = u.truncate(n).compose(x_over_one_minus_x(n))
    return f - x - 4 * x * f + 2 * x2 * (f + 1) - 2 * big_u * (f + 1)


def radical_substitution_identity(n: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of ``sqrt(1-2x-3x^2)`` at ``x/(1-x)``, times ``1-x``, vs ``sqrt(1-4x)``."""
    lhs = _motzkin_radical(n).compose(x_over_one_minus_x(n)) * TruncatedSeries([1, -1], n)
    return lhs, TruncatedSeries([1, -4], n).sqrt()


# -- named access -------------------------------------------------------------

@dataclass(frozen=True)
class NamedSeries:
    name: str
    series: TruncatedSeries
    provenance: str

    def to_dict(self) -> dict:
        return {"name": self.name, "provenance": self.provenance, **self.series.to_dict()}


_BUILDERS = {
    "catalan_c": (catalan_c, "closed_form"),
    "sum_dec_f_plus": (sum_dec_gf, "implicit"),
    "s321": (s321_implicit, "implicit"),
    "motzkin_naive": (s321_naive, "iterated"),
    "fixed_point_y0": (fixed_point_y0, "closed_form"),
    "u_skew": (skew_merged_u, "iterated"),
    "s_skew_merged": (skew_merged_simples_gf, "iterated"),
    "f_skew_merged": (skew_merged_class_gf, "implicit"),
}

SERIES_NAMES = tuple(_BUILDERS)


def named_series(name: str, n: int) -> NamedSeries:
    try:
        build, provenance = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown series {name!r}; valid names: {', '.join(SERIES_NAMES)}") from None
    return NamedSeries(name, build(n), provenance)
