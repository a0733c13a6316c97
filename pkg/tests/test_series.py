import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from simperm.series import (
    BivariateSeries,
    LinearZSeries,
    SeriesError,
    TruncatedSeries,
    evaluate_y,
    substitute_y,
)
from simperm.systems import catalan_c, fixed_point_y0, x_over_one_minus_x, x_over_one_plus_x

T = TruncatedSeries
N = 12


def series_strategy(order=N, lo=-20, hi=20, constant=None):
    coeffs = st.lists(st.integers(lo, hi), min_size=order + 1, max_size=order + 1)
    if constant is not None:
        coeffs = coeffs.map(lambda cs: [constant] + cs[1:])
    return coeffs.map(lambda cs: T(cs, order))


def sympy_coeffs(expr, order):
    x = sympy.Symbol("x")
    poly = sympy.series(expr(x), x, 0, order + 1).removeO()
    return [sympy.Rational(poly.coeff(x, k)) for k in range(order + 1)]


# -- construction and access ---------------------------------------------------

def test_order_and_access():
    s = T([1, 2, 3], 5)
    assert s.coeffs == (1, 2, 3, 0, 0, 0)
    assert s[2] == 3
    with pytest.raises(IndexError):
        s[6]
    assert T([1, 2, 3, 4]).order == 3
    assert T([Fraction(4, 2)]).coeffs == (2,)
    with pytest.raises(TypeError):
        T([0.5])


def test_order_propagates_as_minimum():
    a, b = T([1, 1], 3), T([1, 1], 5)
    assert (a + b).order == 3
    assert (a * b).order == 3
    assert (b / a).order == 3
    with pytest.raises(SeriesError):
        a.truncate(4)


# -- arithmetic examples --------------------------------------------------------

def test_mul_examples():
    assert T([1, 1], 4) * T([1, -1], 4) == T([1, 0, -1], 4)
    assert (catalan_c(N) * catalan_c(N))[2] == 1
    a = T([3, -1, 4, 1], 6)
    assert not any((a - a).coeffs)


def test_div_examples():
    assert T([1], 8) / T([1, -1], 8) == T([1] * 9, 8)
    x2 = T.monomial(2, 8)
    assert (x2 / T([1, -2, 1], 8)).coeffs == (0, 0, 1, 2, 3, 4, 5, 6, 7)
    a = T([5, 0, -2, 7], 8)
    assert a / T([1], 8) == a
    with pytest.raises(SeriesError):
        a / T([0, 1], 8)


def test_sqrt_examples():
    r = T([1, -4], N).sqrt()
    # sqrt(1-4x) = 1 - sum 2 C(2n-2, n-1)/n x^n
    assert r.coeffs == tuple([1] + [-2 * math.comb(2 * n - 2, n - 1) // n for n in range(1, N + 1)])
    assert r.coeffs[:4] == (1, -2, -2, -4)
    assert r * r == T([1, -4], N)
    assert T([1], N).sqrt() == T([1], N)
    m = T([1, -2, -3], N).sqrt()
    assert m.coeffs[:4] == (1, -1, -2, -2)
    assert m * m == T([1, -2, -3], N)
    assert list(m.coeffs) == sympy_coeffs(lambda x: sympy.sqrt(1 - 2 * x - 3 * x**2), N)
    with pytest.raises(SeriesError):
        T([4, 1], N).sqrt()


def test_compose_examples():
    f = T([2, -1, 5, 3, 0, 7], 10)
    assert f.compose(T.x(10)) == f
    assert x_over_one_minus_x(N).compose(x_over_one_plus_x(N)) == T.x(N)
    lhs = T([1, -2, -3], N).sqrt().compose(x_over_one_minus_x(N)) * T([1, -1], N)
    assert lhs == T([1, -4], N).sqrt()
    with pytest.raises(SeriesError):
        f.compose(T([1, 1], 10))


def test_shift_and_rendering():
    s = T([0, 0, 3, 4], 5)
    assert s.shift_down(2) == T([3, 4], 3)
    with pytest.raises(SeriesError):
        s.shift_down(3)
    assert str(T([1, -2], 2)) == "1 + -2 x + 0 x^2 + O(x^3)"


def test_json_round_trip():
    s = T([Fraction(1, 3), 2, -7], 4)
    d = s.to_dict()
    assert d == {"order": "4", "coeffs": ["1/3", "2", "-7", "0", "0"]}
    assert T.from_json(s.to_json()) == s
    big = T([10**40], 1)
    assert big.to_dict()["coeffs"][0] == "1" + "0" * 40


# -- properties -----------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=200, deadline=None)
@given(series_strategy(), series_strategy(constant=1))
def test_div_mul_round_trip(a, b):
    assert (a / b) * b == a
    assert (a * b) / b == a


@settings(max_examples=200, deadline=None)
@given(series_strategy(constant=1))
def test_sqrt_square_round_trip(a):
    r = a.sqrt()
    assert r * r == a
    assert r[0] == 1


@settings(max_examples=100, deadline=None)
@given(series_strategy(), st.integers(0, N))
def test_truncation_monotone(a, k):
    b = T([1, 3, -1], N)
    assert (a * b).truncate(k) == a.truncate(k) * b.truncate(k)
    assert (a / b).truncate(k) == a.truncate(k) / b.truncate(k)
    assert (1 + a * T.x(N)).sqrt().truncate(k) == (1 + a * T.x(N)).truncate(k).sqrt()


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


@settings(max_examples=100, deadline=None)
@given(series_strategy(order=8), series_strategy(order=8, constant=0))
def test_compose_matches_power_sum(f, g):
    # sum_k f_k g^k with exact untruncated polynomials
    total = [0]
    power = [1]
    for c in f.coeffs:
        term = [c * v for v in power]
        total = [u + v for u, v in zip(total + [0] * len(term), term + [0] * len(total))]
        power = poly_mul(power, list(g.coeffs))
    assert list(f.compose(g).coeffs) == total[:9]


# -- bivariate ------------------------------------------------------------------

R = BivariateSeries.step_replacement


def test_step_replacement_expansion():
    terms = R(4).terms()
    assert terms[(1, 0)] == terms[(1, 1)] == terms[(2, 1)] == terms[(2, 2)] == 1
    assert (2, 0) not in terms


def test_substitute_y_examples():
    n = 8
    y = BivariateSeries.y(n)
    assert substitute_y(y, R(n)) == R(n)
    xy = BivariateSeries.from_terms({(1, 1): 1}, n)
    # x^2 (1+y)/(1-xy) = sum_k x^(k+2) y^k + x^(k+2) y^(k+1)
    expected = {}
    for k in range(n):
        expected[(k + 2, k)] = expected.get((k + 2, k), 0) + 1
        expected[(k + 2, k + 1)] = expected.get((k + 2, k + 1), 0) + 1
    expected = {t: c for t, c in expected.items() if t[0] <= n and t[1] <= n}
    assert substitute_y(xy, R(n)).terms() == expected
    assert evaluate_y(substitute_y(y, R(n)), T.zero(n)) == evaluate_y(R(n), T.zero(n))


def test_substitute_y_rejects_x_free_replacement():
    with pytest.raises(SeriesError):
        substitute_y(BivariateSeries.y(4), BivariateSeries.y(4))


def test_evaluate_y_examples():
    n = 10
    y0 = fixed_point_y0(n)
    assert evaluate_y(BivariateSeries.y(n), y0) == y0
    b = BivariateSeries.from_terms({(0, 0): 3, (2, 0): 1, (1, 1): 5, (0, 3): 2}, n)
    assert evaluate_y(b, T.zero(n)) == b.y_coefficient(0)
    assert evaluate_y(R(n), y0) == y0
    with pytest.raises(SeriesError):
        evaluate_y(b, T([1, 1], n))


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 6)), st.integers(-5, 5), max_size=10))
def test_fast_substitution_matches_generic(terms):
    b = BivariateSeries.from_terms(terms, 6)
    assert b.substitute_canonical() == substitute_y(b, R(6))


def test_substitution_matches_sympy():
    n = 6
    x, y = sympy.symbols("x y")
    b = BivariateSeries.from_terms({(1, 1): 2, (0, 2): 1, (2, 0): -1}, n)
    expr = 2 * x * y + y**2 - x**2
    rep = x * (1 + y) / (1 - x * y)
    sub = sympy.expand(sympy.series(expr.subs(y, rep), x, 0, n + 1).removeO())
    got = substitute_y(b, R(n)).terms()
    for (a, d), c in got.items():
        assert sub.coeff(x, a).coeff(y, d) == c
    assert len(got) == len(sympy.Poly(sub, x, y).terms())


def test_one_plus_y_factors():
    n = 6
    b = BivariateSeries.from_terms({(1, 1): 1, (2, 2): 3}, n)
    back = BivariateSeries.from_terms({(0, 0): 1, (0, 1): 1}, n) * b.over_one_plus_y()
    assert back == b
    assert b.times_y_over_one_plus_y() == b.times_y().over_one_plus_y()


def test_linear_z_elimination():
    n = 6
    g = BivariateSeries.from_terms({(k + 1, k): 1 for k in range(n + 1)}, n)
    s2 = LinearZSeries(BivariateSeries([], n), g)
    fast = s2.eliminate_z(g)
    assert fast == s2.eliminate_z(g, fast=False)
    assert fast == substitute_y(g, R(n)) * g
