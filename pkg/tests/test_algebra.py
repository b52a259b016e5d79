import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bellinv.algebra import (
    MultiPoly,
    UniPoly,
    as_rational,
    falling_factorial,
    format_rational,
    invert_unit,
    rat_binomial,
)
from conftest import rationals

x1, x2, x3 = (MultiPoly.var(i) for i in (1, 2, 3))


def small_poly():
    mono = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 3)), max_size=3)
    return st.dictionaries(mono.map(tuple), rationals(), max_size=5).map(MultiPoly)


class TestScalars:
    def test_as_rational_accepts_strings_and_ints(self):
        assert as_rational("-3/6") == Fraction(-1, 2)
        assert as_rational(7) == Fraction(7)
        assert as_rational(" 4 ") == 4

    def test_as_rational_rejects_floats_and_bools(self):
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(TypeError):
            as_rational(True)
        with pytest.raises(ValueError):
            as_rational("")

    def test_format_lowest_terms(self):
        assert format_rational(Fraction(4, -6)) == "-2/3"
        assert format_rational(5) == "5"

    def test_falling_factorial_small(self):
        assert falling_factorial(5, 3) == 60
        assert falling_factorial(Fraction(1, 2), 2) == Fraction(-1, 4)
        assert falling_factorial(9, 0) == 1

    @pytest.mark.parametrize("t", range(0, 12))
    def test_binomial_matches_comb(self, t):
        for k in range(0, 14):
            assert rat_binomial(t, k) == math.comb(t, k)

    def test_binomial_negative_upper(self):
        # C(-1, k) = (-1)^k and C(-1/2, 2) = 3/8
        assert [rat_binomial(-1, k) for k in range(6)] == [1, -1, 1, -1, 1, -1]
        assert rat_binomial(Fraction(-1, 2), 2) == Fraction(3, 8)

    @given(rationals(), st.integers(1, 10))
    def test_pascal_rule(self, t, k):
        assert rat_binomial(t + 1, k) == rat_binomial(t, k) + rat_binomial(t, k - 1)

    def test_invert_unit(self):
        assert invert_unit(Fraction(2, 3)) == Fraction(3, 2)
        with pytest.raises(ZeroDivisionError):
            invert_unit(0)


class TestMultiPoly:
    def test_square_of_binomial(self):
        assert (x1 + x2) ** 2 == x1 ** 2 + 2 * x1 * x2 + x2 ** 2

    def test_zero_terms_dropped(self):
        p = x1 * x2 - x2 * x1
        assert p.is_zero() and p == 0

    def test_render(self):
        assert str(2 * x1 * x3 + x2 ** 2) == "2x1x3 + x2^2"
        assert str(3 * x2 ** 2 - x1 * x3) == "-x1x3 + 3x2^2"
        assert str(MultiPoly.const(Fraction(-1, 2))) == "-1/2"

    def test_canonical_order_is_graded(self):
        p = x1 + x2 ** 2 + MultiPoly.const(1) + x1 * x2
        degrees = [sum(e for _, e in m) for m, _ in p.ordered_terms()]
        assert degrees == sorted(degrees, reverse=True)

    def test_json_shape(self):
        assert (2 * x1 * x3 + x2 ** 2).to_json() == [
            {"exps": {"1": 1, "3": 1}, "coef": "2"},
            {"exps": {"2": 2}, "coef": "1"},
        ]

    @given(small_poly())
    def test_json_round_trip_is_fixed_point(self, p):
        data = p.to_json()
        q = MultiPoly.from_json(data)
        assert q == p and q.to_json() == data

    @given(small_poly(), small_poly(), st.lists(rationals(), min_size=4, max_size=4))
    def test_eval_is_ring_homomorphism(self, p, q, point):
        assert (p + q).eval(point) == p.eval(point) + q.eval(point)
        assert (p * q).eval(point) == p.eval(point) * q.eval(point)

    def test_eval_mapping_and_missing(self):
        assert (x1 * x3).eval({1: 2, 3: 5}) == 10
        with pytest.raises(ValueError):
            (x1 * x3).eval({1: 2})

    def test_shift_var(self):
        p = x1 ** 3 * x2 + x1 * x3
        assert p.shift_var(1, -1) == x1 ** 2 * x2 + x3
        with pytest.raises(ArithmeticError):
            p.shift_var(1, -2)
        assert p.min_exponent(1) == 1

    def test_repeated_variable_in_key_merges(self):
        assert MultiPoly({((1, 1), (1, 1)): 1}) == x1 ** 2

    def test_scalar_division(self):
        assert (4 * x1) / 8 == x1 / 2
        assert ((4 * x1) / 8).to_json()[0]["coef"] == "1/2"


class TestUniPoly:
    u = UniPoly.u()

    def test_degree_and_trim(self):
        assert UniPoly([1, 2, 0, 0]).degree == 1
        assert UniPoly([]).degree == -1

    def test_horner_eval(self):
        p = UniPoly([1, -3, 2])  # (1-u)(1-2u)
        assert p(1) == 0 and p(Fraction(1, 2)) == 0 and p(3) == 10

    def test_composition(self):
        p = self.u ** 2 + 1
        assert p(self.u + 1) == self.u ** 2 + 2 * self.u + 2

    def test_shift_matches_composition(self):
        p = UniPoly([3, 0, -1, 5])
        assert p.shift(Fraction(2, 3)) == p(self.u + Fraction(2, 3))

    @given(st.lists(rationals(), max_size=6))
    def test_json_round_trip(self, cs):
        p = UniPoly(cs)
        assert UniPoly.from_json(p.to_json()) == p

    def test_render(self):
        assert str(UniPoly([0, Fraction(1, 2), 1])) == "u^2 + 1/2*u"
