import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bellinv.algebra import MultiPoly, rat_binomial
from bellinv.series import (
    OrderMismatch,
    Series,
    basis_expand,
    basis_resum,
    lagrange_coeffs,
    lagrange_resum,
    series_comp_inverse,
    series_compose,
    series_exp,
    series_log,
    series_pow_rat,
)
from conftest import nonzero_rationals, rationals

N = 7


def series_with(const, order=N):
    return st.lists(rationals(9, 5), min_size=order, max_size=order).map(
        lambda cs: Series([const] + cs, order))


unit_series = series_with(Fraction(1))


@st.composite
def l1_series(draw, order=N):
    lead = draw(nonzero_rationals(9, 5))
    rest = draw(st.lists(rationals(9, 5), min_size=order - 1, max_size=order - 1))
    return Series([0, lead] + rest, order)


def test_truncation_and_padding():
    s = Series([1, 2, 3, 4, 5], 2)
    assert list(s) == [1, 2, 3]
    assert list(Series([1], 3)) == [1, 0, 0, 0]


def test_mixed_order_rejected():
    with pytest.raises(OrderMismatch):
        Series([1, 1], 1) + Series([1, 1, 1], 2)


def test_geometric_reciprocal():
    one_minus_t = Series([1, -1], 6)
    assert list(one_minus_t.reciprocal()) == [1] * 7


def test_known_log_and_exp():
    log1p = series_log(Series([1, 1], 8))
    assert list(log1p) == [0] + [Fraction((-1) ** (n + 1), n) for n in range(1, 9)]
    e = series_exp(Series.t(8))
    assert list(e) == [Fraction(1, math.factorial(n)) for n in range(9)]


def test_square_root_coefficients():
    root = series_pow_rat(Series([1, 1], 8), Fraction(1, 2))
    assert list(root) == [rat_binomial(Fraction(1, 2), n) for n in range(9)]


def test_log_precondition():
    with pytest.raises(ValueError):
        series_log(Series([2, 1], 3))
    with pytest.raises(ValueError):
        series_exp(Series([1, 1], 3))


@given(unit_series)
def test_exp_log_round_trip(phi):
    assert series_exp(series_log(phi)) == phi


@given(unit_series, rationals(7, 4), rationals(7, 4))
def test_rational_power_is_additive(phi, a, b):
    assert series_pow_rat(phi, a) * series_pow_rat(phi, b) == series_pow_rat(phi, a + b)


@given(unit_series, st.integers(0, 4))
def test_rational_power_matches_integer_power(phi, k):
    assert series_pow_rat(phi, k) == phi.pow_int(k)


def test_compose_with_linear_inner():
    # (1 + t)^2 evaluated at 2t
    outer = Series([1, 2, 1], 4)
    assert list(series_compose(outer, Series([0, 2], 4))) == [1, 4, 4, 0, 0]


def test_compose_requires_zero_constant():
    with pytest.raises(ValueError):
        series_compose(Series([1, 1], 3), Series([1, 1], 3))


def test_inverse_of_t_over_one_plus_t():
    # t/(1+t) has inverse t/(1-t)
    f = Series([0, 1, -1, 1, -1, 1, -1], 6)
    assert list(series_comp_inverse(f)) == [0, 1, 1, 1, 1, 1, 1]


def test_inverse_of_catalan_kernel():
    # the inverse of t - t^2 is t times the Catalan generating function
    g = series_comp_inverse(Series([0, 1, -1], 8))
    catalan = [math.comb(2 * n, n) // (n + 1) for n in range(8)]
    assert list(g) == [0] + catalan


@given(l1_series())
def test_composition_inverse_both_sides(f):
    g = series_comp_inverse(f)
    t = Series.t(N)
    assert series_compose(f, g) == t
    assert series_compose(g, f) == t


def test_no_inverse_outside_l1():
    with pytest.raises(ValueError, match="no composite inverse"):
        series_comp_inverse(Series([0, 0, 1], 4))
    with pytest.raises(ValueError):
        series_comp_inverse(Series([1, 1], 4))


def test_lagrange_catalan():
    # with phi = 1/(1-t), t/phi(t) = t - t^2, so expanding t in powers of it inverts t - t^2
    phi = Series([1, -1], 8).reciprocal()
    coeffs = lagrange_coeffs(Series.t(8), phi)
    assert coeffs == [0, 1, 1, 2, 5, 14, 42, 132, 429]


@given(series_with(Fraction(0)), unit_series)
def test_lagrange_resubstitution(G, phi):
    coeffs = lagrange_coeffs(G, phi)
    assert lagrange_resum(coeffs, phi) == G


@given(series_with(Fraction(3)), l1_series())
def test_basis_round_trip(S, F):
    mu = basis_expand(S, F)
    assert basis_resum(mu, F) == S


def test_basis_needs_l1():
    with pytest.raises(ValueError):
        basis_expand(Series([1, 1], 3), Series([0, 0, 1], 3))


def test_polynomial_coefficients():
    x = MultiPoly.var(1)
    s = Series([1, x], 3)
    assert s.pow_int(3)[3] == x ** 3
    assert series_pow_rat(s, Fraction(1, 2))[2] == Fraction(-1, 8) * x ** 2


def test_json_round_trip():
    s = Series([1, Fraction(-2, 3), 0, 5], 3)
    data = s.to_json()
    assert data == {"order": 3, "coeffs": ["1", "-2/3", "0", "5"]}
    assert Series.from_json(data) == s
