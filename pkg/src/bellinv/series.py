"""Truncated formal power series over a generic coefficient ring.

A :class:`Series` of order ``N`` carries the coefficients of ``t**0 .. t**N``.
Coefficients may be ``Fraction``, :class:`~bellinv.algebra.UniPoly` or
:class:`~bellinv.algebra.MultiPoly`; anything supporting ``+``, ``-``, ``*``
and scalar multiplication by Fraction works. Operations between series of
different orders are rejected.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Scalar, as_rational, format_rational, invert_unit
from .bell import bell_row


class OrderMismatch(ValueError):
    pass


def _is_zero(c) -> bool:
    return c == 0


class Series:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        if not cs:
            cs = [Fraction(0)]
        zero = cs[0] * 0
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs.extend(zero for _ in range(order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    # -- constructors ----------------------------------------------------------
    @classmethod
    def t(cls, order: int, ring_one=Fraction(1)) -> "Series":
        return cls([ring_one * 0, ring_one], order)

    @classmethod
    def const(cls, value, order: int) -> "Series":
        return cls([value], order)

    @property
    def zero(self):
        return self.coeffs[0] * 0

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n <= self.order else self.zero

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise OrderMismatch("cannot extend a truncated series")
        return Series(self.coeffs[: order + 1], order)

    def in_L0(self) -> bool:
        return not _is_zero(self.coeffs[0])

    def in_L1(self) -> bool:
        return _is_zero(self.coeffs[0]) and self.order >= 1 and not _is_zero(self.coeffs[1])

    # -- ring operations -------------------------------------------------------
    def _check(self, other: "Series") -> None:
        if other.order != self.order:
            raise OrderMismatch(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, Series):
            self._check(other)
            return Series((a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)
        cs = list(self.coeffs)
        cs[0] = cs[0] + other
        return Series(cs, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Series((-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series((c * other for c in self.coeffs), self.order)
        self._check(other)
        N = self.order
        out = [self.zero] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j in range(N + 1 - i):
                b = other.coeffs[j]
                if not _is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return Series(out, N)

    def __rmul__(self, other):
        return Series((other * c for c in self.coeffs), self.order)

    def pow_int(self, k: int) -> "Series":
        if k < 0:
            return self.reciprocal().pow_int(-k)
        out = Series.const(self.coeffs[0] * 0 + 1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    __pow__ = pow_int

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and all(
            _is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    # -- calculus ----------------------------------------------------------------
    def derivative(self) -> "Series":
        """Formal derivative, one order lower."""
        N = self.order
        if N == 0:
            return Series([self.zero], 0)
        return Series((self.coeffs[n] * n for n in range(1, N + 1)), N - 1)

    def integral(self) -> "Series":
        """Antiderivative with zero constant term, one order higher."""
        return Series(
            [self.zero] + [c * Fraction(1, n + 1) for n, c in enumerate(self.coeffs)],
            self.order + 1,
        )

    def div_t(self) -> "Series":
        """``self / t`` for a series with zero constant term; order drops by one."""
        if not _is_zero(self.coeffs[0]):
            raise ArithmeticError("series is not divisible by t")
        if self.order == 0:
            raise ArithmeticError("nothing left after dividing an order-0 series by t")
        return Series(self.coeffs[1:], self.order - 1)

    def mul_t(self) -> "Series":
        """``t * self`` truncated to the same order."""
        return Series([self.zero] + list(self.coeffs[:-1]), self.order)

    # -- unit operations ---------------------------------------------------------
    def reciprocal(self) -> "Series":
        """``1 / self``; the constant term must be an invertible rational."""
        inv0 = invert_unit(self.coeffs[0])
        out = [self.coeffs[0] * 0 + inv0]
        for n in range(1, self.order + 1):
            acc = self.zero
            for k in range(1, n + 1):
                if not _is_zero(self.coeffs[k]):
                    acc = acc + self.coeffs[k] * out[n - k]
            out.append(acc * (-inv0))
        return Series(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.reciprocal()
        return self * (Fraction(1) / as_rational(other))

    def log(self) -> "Series":
        return series_log(self)

    def exp(self) -> "Series":
        return series_exp(self)

    def pow_rat(self, alpha: Scalar) -> "Series":
        return series_pow_rat(self, alpha)

    def __call__(self, inner: "Series") -> "Series":
        return series_compose(self, inner)

    # -- serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_coef_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        return cls([as_rational(c) for c in data["coeffs"]], int(data["order"]))

    def __repr__(self):
        return f"Series(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"


def _coef_json(c):
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    return c.to_json()


# ---------------------------------------------------------------------------
# Transcendental operations
# ---------------------------------------------------------------------------


def _require_one(phi: Series, what: str) -> None:
    if not _is_zero(phi.coeffs[0] - 1):
        raise ValueError(f"{what} requires constant term 1")


def series_log(phi: Series) -> Series:
    """``log(phi)`` for ``phi(0) = 1``, via ``n L_n = n phi_n - sum k L_k phi_{n-k}``."""
    _require_one(phi, "log")
    N = phi.order
    out = [phi.zero]
    for n in range(1, N + 1):
        acc = phi.coeffs[n] * n
        for k in range(1, n):
            if not _is_zero(phi.coeffs[n - k]):
                acc = acc - out[k] * k * phi.coeffs[n - k]
        out.append(acc * Fraction(1, n))
    return Series(out, N)


def series_exp(h: Series) -> Series:
    """``exp(h)`` for ``h(0) = 0``, via ``n E_n = sum k h_k E_{n-k}``."""
    if not _is_zero(h.coeffs[0]):
        raise ValueError("exp requires constant term 0")
    N = h.order
    out = [h.zero + 1]
    for n in range(1, N + 1):
        acc = h.zero
        for k in range(1, n + 1):
            if not _is_zero(h.coeffs[k]):
                acc = acc + h.coeffs[k] * k * out[n - k]
        out.append(acc * Fraction(1, n))
    return Series(out, N)


def series_pow_rat(phi: Series, alpha: Scalar) -> Series:
    """``phi**alpha`` for rational ``alpha`` and ``phi(0) = 1``.

    Uses the power-rule recurrence
    ``n h_n = sum_{k=1..n} ((alpha+1) k - n) phi_k h_{n-k}``.
    """
    _require_one(phi, "rational power")
    alpha = as_rational(alpha)
    N = phi.order
    out = [phi.zero + 1]
    for n in range(1, N + 1):
        acc = phi.zero
        for k in range(1, n + 1):
            if _is_zero(phi.coeffs[k]):
                continue
            w = (alpha + 1) * k - n
            if w:
                acc = acc + phi.coeffs[k] * out[n - k] * w
        out.append(acc * Fraction(1, n))
    return Series(out, N)


def series_compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(t))`` truncated; ``inner`` must have zero constant term."""
    if outer.order != inner.order:
        raise OrderMismatch(f"order mismatch: {outer.order} vs {inner.order}")
    if not _is_zero(inner.coeffs[0]):
        raise ValueError("composition requires inner series with zero constant term")
    N = outer.order
    acc = Series.const(outer.coeffs[N] + inner.zero, N)
    for n in range(N - 1, -1, -1):
        acc = acc * inner + outer.coeffs[n]
    return acc


def series_comp_inverse(f: Series) -> Series:
    """Compositional inverse ``g`` with ``f(g(t)) = g(f(t)) = t``.

    Coefficients come from Lagrange inversion, ``g_n = (1/n) [t^{n-1}] (t/f)^n``;
    the result is checked by composing back.
    """
    if not f.in_L1():
        raise ValueError("no composite inverse: series must have f(0) = 0 and f'(0) != 0")
    N = f.order
    quotient = f.div_t().reciprocal()  # t/f up to order N-1
    out = [f.zero, quotient.coeffs[0] * 0 + invert_unit(f.coeffs[1])]
    power = quotient
    for n in range(2, N + 1):
        power = power * quotient
        out.append(power.coeffs[n - 1] * Fraction(1, n))
    g = Series(out, N)
    ident = Series.t(N, f.zero + 1)
    if series_compose(f, g) != ident:
        raise ArithmeticError("compositional inverse failed verification")
    return g


def lagrange_coeffs(G: Series, phi: Series, N: int | None = None) -> list:
    """Coefficients ``a_n`` with ``G(t) = sum a_n (t/phi(t))^n`` up to order ``N``.

    ``a_0 = G(0)`` and ``a_n = (1/n) [t^{n-1}] G'(t) phi(t)^n``.
    """
    if N is None:
        N = G.order
    if N > G.order or N > phi.order:
        raise OrderMismatch("requested order exceeds the given series")
    if not phi.in_L0():
        raise ValueError("Lagrange inversion requires phi(0) != 0")
    out = [G.coeffs[0]]
    if N == 0:
        return out
    dG = G.truncate(N).derivative()
    base = phi.truncate(N - 1)
    power = Series.const(base.zero + 1, N - 1)
    for n in range(1, N + 1):
        power = power * base
        acc = G.zero
        for i in range(n):
            a = dG.coeffs[i]
            b = power.coeffs[n - 1 - i]
            if not _is_zero(a) and not _is_zero(b):
                acc = acc + a * b
        out.append(acc * Fraction(1, n))
    return out


def lagrange_resum(coeffs: Sequence, phi: Series) -> Series:
    """``sum coeffs[n] (t/phi(t))^n`` truncated at ``phi.order``."""
    N = phi.order
    inner = phi.reciprocal().mul_t()
    return series_compose(Series(list(coeffs), N), inner)


def basis_expand(S: Series, F: Series) -> list:
    """Coordinates ``mu`` with ``S = sum_n mu_n F^n`` up to ``S.order``.

    Triangular solve on ``S_n = sum_k mu_k B(n, k)(F_1, F_2, ...)`` with pivot
    ``B(n, n) = F_1**n``.
    """
    if S.order != F.order:
        raise OrderMismatch(f"order mismatch: {S.order} vs {F.order}")
    if not F.in_L1():
        raise ValueError("basis expansion requires F(0) = 0 and F'(0) != 0")
    N = S.order
    inv1 = invert_unit(F.coeffs[1])
    fs = list(F.coeffs[1:])
    mu = [S.coeffs[0]]
    for n in range(1, N + 1):
        row = bell_row(n, fs[:n])
        acc = S.coeffs[n]
        for k in range(1, n):
            if not _is_zero(row[k - 1]):
                acc = acc - mu[k] * row[k - 1]
        mu.append(acc * inv1**n)
    return mu


def basis_resum(mu: Sequence, F: Series) -> Series:
    """``sum mu_n F^n`` truncated at ``F.order``."""
    return series_compose(Series(list(mu), F.order), F)
