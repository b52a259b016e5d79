"""Nonlinear inverse pairs between sequences, expressed through Bell polynomials.

Each pair consists of a forward map and a backward map on finite prefixes
``x_1 .. x_N`` (stored 0-based in Python lists). Composing the two in either
order is the identity. Parameters that make a denominator vanish somewhere in
the index range are rejected up front with :class:`SingularParameterError`.

Pairs provided:

* :func:`linear_weight_forward` / :func:`linear_weight_backward` -- weights
  ``(am+bk)/(k(am+b)) C(-am-b, k-1)`` and ``(1/k) C(am+bk, k-1)``.
* :func:`scaled_binomial_forward` / :func:`scaled_binomial_backward` --
  ``C(-am-b, k)/(am+b)`` and ``C(-(am+1)/b, k) b**k/(am+1)``.
* :func:`two_term_forward` / :func:`two_term_backward` -- the two-exponent
  case with a product closed form on the backward side.
* :func:`general_forward` / :func:`general_backward` -- arbitrary admissible
  ``(p, a_i, q_i)``; the backward side uses ``lambda_k`` at ``u = pn - 1``.
* :func:`mina_backward` -- the three-term backward map via ``f_k``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import UniPoly, as_rational, factorial, format_rational, rat_binomial
from .bell import bell_table
from .lambdas import (
    LambdaTable,
    ProblemSpec,
    build_instance,
    f_recurrence,
    lambda_recurrence,
)
from .series import Series, lagrange_coeffs, series_compose


class SingularParameterError(ValueError):
    """A denominator vanishes at sequence index ``index``."""

    def __init__(self, message: str, index: int, term: int | None = None):
        super().__init__(message)
        self.index = index
        self.term = term


def _seq(values: Sequence) -> list[Fraction]:
    return [as_rational(v) for v in values]


def _apply(coeff, values: list[Fraction]) -> list[Fraction]:
    """``out_n = sum_k coeff(n, k) B(n, k)(values)``."""
    N = len(values)
    B = bell_table(N, values)
    out = []
    for n in range(1, N + 1):
        total = Fraction(0)
        for k in range(1, n + 1):
            if B[n][k]:
                total += coeff(n, k) * B[n][k]
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# (am+bk)/(k(am+b)) pair
# ---------------------------------------------------------------------------


def _check_linear_weight(a: Fraction, b: Fraction, N: int) -> None:
    if a == 0 and b == 0:
        raise SingularParameterError("a and b are both zero", 0)
    for m in range(1, N + 1):
        if a * m + b == 0:
            raise SingularParameterError(f"a*m + b vanishes at m={m}", m)


def linear_weight_forward(a, b, x: Sequence) -> list[Fraction]:
    """``z_m = sum_k (am+bk)/(k(am+b)) C(-am-b, k-1) B(m,k)(x)``."""
    a, b, x = as_rational(a), as_rational(b), _seq(x)
    _check_linear_weight(a, b, len(x))

    def coeff(m, k):
        return (a * m + b * k) / (k * (a * m + b)) * rat_binomial(-a * m - b, k - 1)

    return _apply(coeff, x)


def linear_weight_backward(a, b, z: Sequence) -> list[Fraction]:
    """``x_m = sum_k (1/k) C(am+bk, k-1) B(m,k)(z)``."""
    a, b, z = as_rational(a), as_rational(b), _seq(z)
    _check_linear_weight(a, b, len(z))
    return _apply(lambda m, k: rat_binomial(a * m + b * k, k - 1) / k, z)


# ---------------------------------------------------------------------------
# C(-am-b, k)/(am+b) pair
# ---------------------------------------------------------------------------


def _check_scaled_binomial(a: Fraction, b: Fraction, N: int) -> None:
    if b == 0:
        raise SingularParameterError("b must be nonzero", 0)
    for m in range(1, N + 1):
        if a * m + b == 0:
            raise SingularParameterError(f"a*m + b vanishes at m={m}", m)
        if a * m + 1 == 0:
            raise SingularParameterError(f"a*m + 1 vanishes at m={m}", m)


def scaled_binomial_forward(a, b, x: Sequence) -> list[Fraction]:
    """``y_m = (1/(am+b)) sum_k C(-am-b, k) B(m,k)(x)``."""
    a, b, x = as_rational(a), as_rational(b), _seq(x)
    _check_scaled_binomial(a, b, len(x))
    return _apply(lambda m, k: rat_binomial(-a * m - b, k) / (a * m + b), x)


def scaled_binomial_backward(a, b, y: Sequence) -> list[Fraction]:
    """``x_m = (1/(am+1)) sum_k C(-(am+1)/b, k) b**k B(m,k)(y)``."""
    a, b, y = as_rational(a), as_rational(b), _seq(y)
    _check_scaled_binomial(a, b, len(y))
    return _apply(
        lambda m, k: rat_binomial(-(a * m + 1) / b, k) * b**k / (a * m + 1), y)


# ---------------------------------------------------------------------------
# Two-exponent pair
# ---------------------------------------------------------------------------


def _check_two_term(p: Fraction, q: Fraction, r: Fraction, N: int) -> None:
    if r == q:
        raise SingularParameterError("r - q must be nonzero", 0)
    if p * q * r == 0:
        raise SingularParameterError("p*q*r must be nonzero", 0)
    for n in range(1, N + 1):
        if q + n * p == 0:
            raise SingularParameterError(f"q + n*p vanishes at n={n}", n)
        if r + n * p == 0:
            raise SingularParameterError(f"r + n*p vanishes at n={n}", n)


def two_term_forward(p, q, r, y: Sequence) -> list[Fraction]:
    """``x_n = (1/c) sum_k (q/(q+np) C(q+np,k) - r/(r+np) C(r+np,k)) B(n,k)(y)``
    with ``c = r - q``."""
    p, q, r, y = as_rational(p), as_rational(q), as_rational(r), _seq(y)
    _check_two_term(p, q, r, len(y))
    c = r - q

    def coeff(n, k):
        return (q / (q + n * p) * rat_binomial(q + n * p, k)
                - r / (r + n * p) * rat_binomial(r + n * p, k)) / c

    return _apply(coeff, y)


def two_term_backward(p, q, r, x: Sequence) -> list[Fraction]:
    """``y_n = -sum_k (1/k!) prod_{j=1..k-1} (np + kq + cj - 1) B(n,k)(x)``."""
    p, q, r, x = as_rational(p), as_rational(q), as_rational(r), _seq(x)
    _check_two_term(p, q, r, len(x))
    c = r - q

    def coeff(n, k):
        prod = Fraction(1)
        for j in range(1, k):
            prod *= n * p + k * q + c * j - 1
        return -prod / factorial(k)

    return _apply(coeff, x)


# ---------------------------------------------------------------------------
# General pair
# ---------------------------------------------------------------------------


def general_forward(spec: ProblemSpec, y: Sequence) -> list[Fraction]:
    """``x_n = sum_k (sum_i a_i q_i/(np+q_i) C(np+q_i, k)) B(n,k)(y)``."""
    y = _seq(y)
    p = spec.p
    for n in range(1, len(y) + 1):
        for i, q in enumerate(spec.q, start=1):
            if n * p + q == 0:
                raise SingularParameterError(
                    f"n*p + q_i vanishes at n={n}, i={i}", n, term=i)

    def coeff(n, k):
        return sum((a * q / (n * p + q) * rat_binomial(n * p + q, k)
                    for a, q in spec.terms), Fraction(0))

    return _apply(coeff, y)


def general_forward_lagrange(spec: ProblemSpec, y: Sequence) -> list[Fraction]:
    """``x`` from Lagrange inversion of ``F(t/phi**p) = sum a_i phi**q_i``.

    Independent of the closed coefficient formula; valid at every ``n``.
    """
    y = _seq(y)
    N = len(y)
    phi = Series([Fraction(1)] + y, N)
    G = sum((phi.pow_rat(q) * a for a, q in spec.terms), Series.const(0, N))
    return lagrange_coeffs(G, phi.pow_rat(spec.p), N)[1:]


def _check_backward_order(spec: ProblemSpec, N: int) -> None:
    for n in range(1, N + 1):
        if spec.p * n == 1:
            raise SingularParameterError(f"1 - p*n vanishes at n={n}", n)


def general_backward(spec: ProblemSpec, x: Sequence,
                     table: LambdaTable | None = None) -> list[Fraction]:
    """``y_n = sum_k lambda_k(u = pn - 1) / (1 - pn) B(n,k)(x)``."""
    x = _seq(x)
    N = len(x)
    _check_backward_order(spec, N)
    lam = table if table is not None else lambda_recurrence(spec, N)
    if lam.order < N:
        raise ValueError("lambda table is shorter than the sequence")
    p = spec.p
    return _apply(lambda n, k: lam[k](p * n - 1) / (1 - p * n), x)


def mina_backward(spec: ProblemSpec, x: Sequence, method: str = "mina") -> list[Fraction]:
    """Three-term backward map ``y_n = -sum_k f_k(u = pn - 1)/(k! (-c1)**k) B(n,k)(x)``.

    ``method`` selects where ``f_k`` comes from: ``"mina"`` (Mina polynomial
    coefficients) or ``"recurrence"``. No ``pn = 1`` restriction arises.
    """
    from .mina import f_via_mina  # mina depends on lambdas; keep import local

    if spec.m != 3:
        raise ValueError("three-term map needs m == 3")
    x = _seq(x)
    N = len(x)
    if method == "mina":
        fs = [f_via_mina(spec, k) for k in range(1, N + 1)]
    elif method == "recurrence":
        table = f_recurrence(spec, N)
        fs = [table.f(k) for k in range(1, N + 1)]
    else:
        raise ValueError("method must be 'mina' or 'recurrence'")
    neg_c1 = -spec.c(1)
    p = spec.p
    return _apply(lambda n, k: -fs[k - 1](p * n - 1) / (factorial(k) * neg_c1**k), x)


# ---------------------------------------------------------------------------
# Series-level invariants
# ---------------------------------------------------------------------------


def pipeline_invariants(spec: ProblemSpec, y: Sequence, N: int) -> list[dict]:
    """Build ``phi, f, g, w, F`` for ``y`` and check the series identities.

    * ``f(g(t)) = g(f(t)) = t``
    * ``phi(t / w(t)) = w(t)**(-1/p)``
    * ``F(t) = sum a_k w(t)**(-q_k/p)`` where ``F`` has the Lagrange
      coefficients of ``sum a_k phi**q_k`` in powers of ``t/phi**p``
    * ``F(t / phi(t)**p) = sum a_k phi(t)**q_k``
    """
    inst = build_instance(spec, y, N)
    t = Series.t(N)
    cases = []

    def record(identity, ok, lhs, rhs):
        cases.append({
            "identity": identity, "n": N, "status": "pass" if ok else "fail",
            "parameters": {"spec": spec.to_json(),
                           "y": [format_rational(v) for v in inst.phi.coeffs[1:]]},
            "witness": None if ok else {"lhs": lhs.to_json(), "rhs": rhs.to_json()},
        })

    fg, gf = series_compose(inst.f, inst.g), series_compose(inst.g, inst.f)
    record("pipeline-inverse", fg == t and gf == t, fg, gf)

    lhs = series_compose(inst.phi, inst.g)
    rhs = inst.w.pow_rat(Fraction(-1) / spec.p)
    record("pipeline-phi-at-inverse", lhs == rhs, lhs, rhs)

    x = general_forward_lagrange(spec, inst.phi.coeffs[1:])
    F_lagrange = Series([Fraction(0)] + x, N)
    record("pipeline-F-from-w", F_lagrange == inst.F, F_lagrange, inst.F)

    G = sum((inst.phi.pow_rat(q) * a for a, q in spec.terms), Series.const(0, N))
    back = series_compose(inst.F, inst.f)
    record("pipeline-defining-relation", back == G, back, G)
    return cases


def linear_phi_checks(spec: ProblemSpec, N: int) -> list[dict]:
    """The instance ``phi = 1 - t`` with ``p = 1``.

    Here ``w = 1 + t`` and ``x_n = (-1)**n sum a_i C(n-1+q_i, n)``; then
    ``C(s, n) = sum_k lambda_k(s) B(n,k)(x)`` as polynomials in ``s``, and in
    particular ``sum_k lambda_k(n-1) B(n,k)(x) = 0`` for ``n >= 2``.
    """
    unit = spec if spec.p == 1 else ProblemSpec(1, spec.terms)
    cases = []
    inst = build_instance(unit, [-1], N)
    cases.append({"identity": "linear-phi-w", "n": N,
                  "status": "pass" if inst.w == Series([1, 1], N) else "fail",
                  "witness": None})

    x = [(-1) ** n * sum((a * rat_binomial(n - 1 + q, n) for a, q in unit.terms), Fraction(0))
         for n in range(1, N + 1)]
    cases.append({"identity": "linear-phi-F", "n": N,
                  "status": "pass" if list(inst.F.coeffs[1:]) == x else "fail",
                  "witness": None})

    lam = lambda_recurrence(unit, N)
    B = bell_table(N, x)
    s = UniPoly.u()  # p = 1, so u = s
    binom_s = UniPoly.const(1)
    for n in range(1, N + 1):
        binom_s = binom_s * (s - (n - 1)) / n
        total = UniPoly()
        for k in range(1, n + 1):
            total = total + lam[k] * B[n][k]
        ok = total == binom_s
        cases.append({"identity": "linear-phi-binomial", "n": n,
                      "status": "pass" if ok else "fail",
                      "witness": None if ok else {"sum": total.to_json()}})
        if n >= 2:
            value = total(n - 1)
            cases.append({"identity": "linear-phi-zero-sum", "n": n,
                          "status": "pass" if value == 0 else "fail",
                          "witness": None if value == 0 else {"value": format_rational(value)}})
    return cases
