from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bellinv.algebra import UniPoly
from bellinv.lambdas import (
    ProblemSpec,
    SpecError,
    build_instance,
    check_table_structure,
    f_recurrence,
    lambda_closed_m2,
    lambda_closed_m3_degenerate,
    lambda_f_bridge,
    lambda_from_f,
    lambda_from_instance,
    lambda_recurrence,
    verify_lambda_laws,
)
from bellinv.series import Series

u = UniPoly.u()

TWO_TERM = ProblemSpec("1/2", (("1", "2"), ("-1", "3")))
THREE_TERM = ProblemSpec("2/3", (("1", "1"), ("2", "-1"), ("-3", "1/2")))
FOUR_TERM = ProblemSpec(3, ((1, 1), (-2, 2), (3, -1), (-2, 4)))


def brute_lambda_values(spec, y, s, N):
    """lambda_n(s) for integer s by direct triangular solve of w**s = sum mu_k F**k.

    Uses only series multiplication: w**s by repeated products and F**k likewise.
    """
    inst = build_instance(spec, y, N)
    w, F = inst.w.truncate(N), inst.F
    ws = Series.const(1, N)
    base = w if s >= 0 else w.reciprocal()
    for _ in range(abs(s)):
        ws = ws * base
    powers = [Series.const(1, N)]
    for _ in range(N):
        powers.append(powers[-1] * F)
    mu = []
    residual = ws
    for n in range(N + 1):
        coef = residual[n] / powers[n][n]
        mu.append(coef)
        residual = residual - powers[n] * coef
    return mu


class TestSpec:
    def test_moments(self):
        assert THREE_TERM.c(0) == 0
        assert THREE_TERM.c(1) == 1 - 2 - Fraction(3, 2)
        assert THREE_TERM.c(2) == 1 + 2 - Fraction(3, 4)

    @pytest.mark.parametrize("p,terms,msg", [
        (0, ((1, 1), (-1, 2)), "p == 0"),
        (1, ((1, 1), (1, 2)), "c0 != 0"),
        (1, ((1, 2), (-1, 2)), "c1 == 0"),
    ])
    def test_validation(self, p, terms, msg):
        with pytest.raises(SpecError, match=msg):
            ProblemSpec(p, terms)

    def test_two_term_constructor(self):
        spec = ProblemSpec.two_term(1, 2, 5)
        assert spec.a == (Fraction(1, 3), Fraction(-1, 3))
        assert spec.c(1) == -1

    def test_json_round_trip(self):
        data = THREE_TERM.to_json()
        assert data["p"] == "2/3" and data["terms"][2] == {"a": "-3", "q": "1/2"}
        assert ProblemSpec.from_json(data) == THREE_TERM

    def test_malformed_json(self):
        with pytest.raises(SpecError, match="malformed"):
            ProblemSpec.from_json({"p": "1"})


class TestRecurrence:
    @pytest.mark.parametrize("spec", [TWO_TERM, THREE_TERM, FOUR_TERM])
    def test_first_two_by_hand(self, spec):
        # n = 0: c1 lambda_1 = -u.  n = 1: 2 c1 lambda_2 = -u lambda_1 - sum a q lambda_1(-q) lambda_1(u)
        c1, c2 = spec.c(1), spec.c(2)
        table = lambda_recurrence(spec, 2)
        assert table[0] == 1
        assert table[1] == -u / c1
        assert table[2] == u * u / (2 * c1 * c1) + u * c2 / (2 * c1 ** 3)

    def test_three_term_example_first_value(self):
        spec = ProblemSpec(1, ((2, 3), (-1, 3), (-1, 5)))
        a3, q1, q3 = Fraction(-1), Fraction(3), Fraction(5)
        assert lambda_recurrence(spec, 1)[1] == u / (a3 * (q1 - q3))

    @pytest.mark.parametrize("spec", [TWO_TERM, THREE_TERM, FOUR_TERM])
    def test_structure(self, spec):
        cases = check_table_structure(lambda_recurrence(spec, 10))
        assert cases and all(c["status"] == "pass" for c in cases)

    def test_order_zero(self):
        assert lambda_recurrence(TWO_TERM, 0).polys == (UniPoly.const(1),)


class TestClosedForms:
    def test_two_term_small_by_hand(self):
        q, r = Fraction(2), Fraction(3)
        assert lambda_closed_m2(1, q, r, 1) == u
        assert lambda_closed_m2(1, q, r, 2) == u * (u + q + r) / 2
        assert lambda_closed_m2(1, q, r, 3) == u * (u + q + 2 * r) * (u + 2 * q + r) / 6

    @given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 5))
    @settings(max_examples=25)
    def test_two_term_matches_recurrence(self, q, r, p):
        if q == r:
            return
        spec = ProblemSpec.two_term(p, q, r)
        table = lambda_recurrence(spec, 8)
        for n in range(9):
            assert table[n] == lambda_closed_m2(p, q, r, n)

    def test_repeated_exponent_matches_recurrence(self):
        spec = ProblemSpec("1/3", ((2, 3), (-1, 3), (-1, 5)))
        table = lambda_recurrence(spec, 9)
        for n in range(10):
            assert table[n] == lambda_closed_m3_degenerate(spec, n)

    def test_repeated_exponent_requires_equal_q(self):
        with pytest.raises(SpecError):
            lambda_closed_m3_degenerate(THREE_TERM, 2)


class TestInstanceRoute:
    @pytest.mark.parametrize("spec", [TWO_TERM, THREE_TERM, FOUR_TERM])
    def test_agrees_with_recurrence(self, spec, rng):
        N = 6
        expected = lambda_recurrence(spec, N).polys
        for _ in range(2):
            y = [Fraction(rng.randint(1, 7), rng.randint(1, 3))]
            y += [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(N - 1)]
            assert lambda_from_instance(spec, y, N).polys == expected

    @pytest.mark.parametrize("s", [-2, 0, 1, 3])
    def test_brute_force_values(self, s):
        spec = ProblemSpec(1, ((1, 1), (-1, 2)))
        y = [1, Fraction(1, 2), -2, 0, 1]
        N = 5
        table = lambda_recurrence(spec, N)
        values = brute_lambda_values(spec, y, s, N)
        assert values == [table[n](spec.p * s) for n in range(N + 1)]

    def test_instance_relations(self):
        inst = build_instance(THREE_TERM, [1, 2, -1, 3], 4)
        t = Series.t(4)
        assert inst.f == inst.phi.pow_rat(-THREE_TERM.p) * t
        assert inst.F[1] == THREE_TERM.c(1) * 1  # F_1 = c1 y1

    def test_needs_nonzero_y1(self):
        with pytest.raises(ValueError, match="y1"):
            lambda_from_instance(THREE_TERM, [0, 1, 1], 3)


class TestThreeTermPolynomials:
    def test_f_first_values(self):
        spec = THREE_TERM
        c1, c2, c3 = spec.c(1), spec.c(2), spec.c(3)
        ft = f_recurrence(spec, 3)
        assert ft.f(1) == 1
        assert ft.f(2) == u + c2 / c1
        assert ft.f(3) == u * u + 3 * c2 / c1 * u + (3 * c2 ** 2 - c1 * c3) / c1 ** 2

    def test_bridge(self):
        cases = lambda_f_bridge(THREE_TERM, 8)
        assert len(cases) == 8 and all(c["status"] == "pass" for c in cases)

    def test_lambda_from_f_rescaling(self):
        ft = f_recurrence(THREE_TERM, 4)
        lam = lambda_recurrence(THREE_TERM, 4)
        assert lambda_from_f(THREE_TERM, ft.f(4), 4) == lam[4]

    def test_requires_three_terms(self):
        with pytest.raises(SpecError):
            f_recurrence(TWO_TERM, 3)

    def test_f_index_from_one(self):
        with pytest.raises(IndexError):
            f_recurrence(THREE_TERM, 2).f(0)


class TestLaws:
    @pytest.mark.parametrize("spec", [TWO_TERM, THREE_TERM, FOUR_TERM])
    def test_all_laws_hold(self, spec):
        cases = verify_lambda_laws(spec, 6, seed=3)
        statuses = {c["status"] for c in cases}
        assert "fail" not in statuses
        identities = {c["identity"] for c in cases if c["status"] == "pass"}
        assert {"lambda-addition", "lambda-weighted-addition", "lambda-shift-recurrence"} <= identities
        if spec.m == 3:
            assert {"lambda-three-term-eliminated", "lambda-three-term-difference"} <= identities

    def test_poles_are_reported_not_failed(self):
        cases = verify_lambda_laws(THREE_TERM, 2, seed=0)
        assert any(c["status"] == "skipped-pole" for c in cases)

    def test_wrong_table_is_caught(self):
        table = lambda_recurrence(THREE_TERM, 4)
        broken = list(table.polys)
        broken[3] = broken[3] + u
        bad = type(table)(THREE_TERM, tuple(broken))
        cases = verify_lambda_laws(THREE_TERM, 3, seed=1, table=bad)
        assert any(c["status"] == "fail" for c in cases)


def test_table_json():
    data = lambda_recurrence(TWO_TERM, 2).to_json()
    assert data["spec"] == TWO_TERM.to_json()
    assert data["lambda"][0] == ["1"]
    assert data["lambda"][1] == ["0", "1"]
