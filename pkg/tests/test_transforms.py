from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from bellinv.algebra import rat_binomial
from bellinv.lambdas import ProblemSpec, lambda_recurrence
from bellinv.series import Series, series_pow_rat
from bellinv.transforms import (
    SingularParameterError,
    general_backward,
    general_forward,
    general_forward_lagrange,
    linear_phi_checks,
    linear_weight_backward,
    linear_weight_forward,
    mina_backward,
    pipeline_invariants,
    scaled_binomial_backward,
    scaled_binomial_forward,
    two_term_backward,
    two_term_forward,
)
from conftest import rationals

N = 6
sequences = st.lists(rationals(9, 4), min_size=N, max_size=N)
small_ints = st.integers(-5, 5)


def gf(seq, order=N):
    return Series([0] + list(seq), order)


class TestLinearWeightPair:
    def test_a_zero_b_one_is_moebius(self):
        # z_m = sum (-1)^{k-1} B(m,k)(x): Z = X/(1+X)
        x = [1, Fraction(1, 2), -2, 3, 0, 1]
        X = gf(x)
        Z = X * (X + 1).reciprocal()
        assert linear_weight_forward(0, 1, x) == list(Z)[1:]
        assert linear_weight_backward(0, 1, list(Z)[1:]) == x

    @given(small_ints, small_ints, sequences)
    def test_round_trip_integer_params(self, a, b, x):
        assume(a or b)
        assume(all(a * m + b for m in range(1, N + 1)))
        z = linear_weight_forward(a, b, x)
        assert linear_weight_backward(a, b, z) == x
        assert linear_weight_forward(a, b, linear_weight_backward(a, b, x)) == x

    @given(rationals(5, 3), rationals(5, 3), sequences)
    @settings(max_examples=25)
    def test_round_trip_rational_params(self, a, b, x):
        assume(a or b)
        assume(all(a * m + b for m in range(1, N + 1)))
        assert linear_weight_backward(a, b, linear_weight_forward(a, b, x)) == x

    def test_singular(self):
        with pytest.raises(SingularParameterError) as info:
            linear_weight_forward(1, -3, [1] * 5)
        assert info.value.index == 3
        with pytest.raises(SingularParameterError):
            linear_weight_backward(0, 0, [1])


class TestScaledBinomialPair:
    def test_a_zero_is_power_map(self):
        # y_m = (1/b) sum C(-b,k) B(m,k)(x): Y = ((1+X)^{-b} - 1)/b
        b = Fraction(3, 2)
        x = [2, -1, Fraction(1, 3), 0, 5, -2]
        Y = (series_pow_rat(gf(x) + 1, -b) - 1) * (1 / b)
        assert scaled_binomial_forward(0, b, x) == list(Y)[1:]

    def test_first_term(self):
        # y_1 = C(-a-b, 1)/(a+b) x_1 = -x_1
        assert scaled_binomial_forward(2, 3, [7])[0] == -7

    @given(rationals(6, 3), rationals(6, 3).filter(bool), sequences)
    def test_round_trip(self, a, b, x):
        assume(all(a * m + b and a * m + 1 for m in range(1, N + 1)))
        y = scaled_binomial_forward(a, b, x)
        assert scaled_binomial_backward(a, b, y) == x
        assert scaled_binomial_forward(a, b, scaled_binomial_backward(a, b, x)) == x

    @pytest.mark.parametrize("a,b,index", [(1, 0, 0), (1, -2, 2), (Fraction(-1, 3), 5, 3)])
    def test_singular(self, a, b, index):
        with pytest.raises(SingularParameterError) as info:
            scaled_binomial_forward(a, b, [1] * 6)
        assert info.value.index == index


class TestTwoTermPair:
    @given(st.integers(1, 4), st.integers(-6, 6), st.integers(-6, 6), sequences)
    @settings(max_examples=30)
    def test_round_trip(self, p, q, r, y):
        assume(q != r and q and r)
        assume(all(q + n * p and r + n * p for n in range(1, N + 1)))
        x = two_term_forward(p, q, r, y)
        assert two_term_backward(p, q, r, x) == y
        assert two_term_forward(p, q, r, two_term_backward(p, q, r, y)) == y

    def test_specialises_general_pair(self):
        p, q, r = Fraction(2, 3), Fraction(2), Fraction(-7, 3)
        spec = ProblemSpec.two_term(p, q, r)
        y = [1, 2, Fraction(-1, 2), 0, 3, 1]
        assert two_term_forward(p, q, r, y) == general_forward(spec, y)
        x = two_term_forward(p, q, r, y)
        assert two_term_backward(p, q, r, x) == general_backward(spec, x)

    def test_singular(self):
        with pytest.raises(SingularParameterError) as info:
            two_term_forward(1, -2, 3, [1, 1, 1])
        assert info.value.index == 2


class TestGeneralPair:
    SPECS = [
        ProblemSpec("2/3", ((1, 2), (-1, 3))),
        ProblemSpec(3, ((1, 1), (2, -1), (-3, "1/2"))),
        ProblemSpec("-3/5", ((1, 1), (-2, 2), (3, -1), (-2, 4))),
    ]

    def test_unit_input_collapses(self):
        # with y = (1, 0, 0) only B(n,n) survives: x_n = sum a_i q_i/(np+q_i) C(np+q_i, n)
        spec = self.SPECS[0]
        x = general_forward(spec, [1, 0, 0])
        assert x[0] == spec.c(1)
        for n in range(1, 4):
            expected = sum(a * q / (n * spec.p + q) * rat_binomial(n * spec.p + q, n)
                           for a, q in spec.terms)
            assert x[n - 1] == expected

    @pytest.mark.parametrize("spec", SPECS)
    def test_matches_lagrange(self, spec, rng):
        y = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(7)]
        assert general_forward(spec, y) == general_forward_lagrange(spec, y)

    @pytest.mark.parametrize("spec", SPECS)
    def test_round_trip(self, spec, rng):
        y = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(7)]
        x = general_forward(spec, y)
        assert general_backward(spec, x) == y
        assert general_forward(spec, general_backward(spec, y)) == y

    def test_explicit_table(self):
        spec = self.SPECS[1]
        x = [1, 2, 3]
        assert general_backward(spec, x, lambda_recurrence(spec, 3)) == general_backward(spec, x)
        with pytest.raises(ValueError):
            general_backward(spec, x, lambda_recurrence(spec, 2))

    def test_forward_pole_names_index(self):
        spec = ProblemSpec(1, ((1, -2), (-1, 1)))
        with pytest.raises(SingularParameterError) as info:
            general_forward(spec, [1, 1, 1])
        assert info.value.index == 2 and info.value.term == 1

    def test_backward_pole(self):
        spec = ProblemSpec("1/2", ((1, 2), (-1, 3)))
        with pytest.raises(SingularParameterError) as info:
            general_backward(spec, [1, 1, 1])
        assert info.value.index == 2


class TestThreeTermBackward:
    @pytest.mark.parametrize("terms", [
        ((1, 1), (2, -1), (-3, "1/2")),
        ((2, 3), (-1, 3), (-1, 5)),
    ])
    def test_agrees_with_general(self, terms, rng):
        spec = ProblemSpec("2/5", terms)
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(7)]
        expected = general_backward(spec, x)
        assert mina_backward(spec, x) == expected
        assert mina_backward(spec, x, method="recurrence") == expected
        assert general_forward(spec, mina_backward(spec, x)) == x

    def test_no_pole_at_pn_equal_one(self):
        spec = ProblemSpec(1, ((1, 1), (2, "1/3"), (-3, "1/2")))
        y = [1, -1, 2]
        with pytest.raises(SingularParameterError):
            general_backward(spec, general_forward(spec, y))
        assert mina_backward(spec, general_forward(spec, y)) == y

    def test_needs_three_terms(self):
        with pytest.raises(ValueError):
            mina_backward(ProblemSpec(1, ((1, 1), (-1, 2))), [1])
        with pytest.raises(ValueError):
            mina_backward(ProblemSpec(1, ((1, 1), (2, -1), (-3, 2))), [1], method="other")


@pytest.mark.parametrize("spec", TestGeneralPair.SPECS)
def test_pipeline_invariants(spec):
    cases = pipeline_invariants(spec, [2, -1, Fraction(1, 3), 0, 1, 4], 6)
    assert len(cases) == 4 and all(c["status"] == "pass" for c in cases)


@pytest.mark.parametrize("spec", TestGeneralPair.SPECS)
def test_linear_phi(spec):
    cases = linear_phi_checks(spec, 8)
    assert all(c["status"] == "pass" for c in cases)
    assert sum(c["identity"] == "linear-phi-zero-sum" for c in cases) == 7
