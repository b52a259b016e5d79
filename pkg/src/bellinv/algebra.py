"""Exact scalars and polynomial rings.

Scalars are :class:`fractions.Fraction`. Two polynomial types sit on top:

* :class:`MultiPoly` -- sparse multivariate polynomials in ``x1, x2, ...``
  (variables are addressed by positive integer index).
* :class:`UniPoly` -- dense univariate polynomials in a single indeterminate,
  used throughout for polynomials in ``u = p*s``.

Both are immutable and interoperate with ``int`` and ``Fraction`` operands.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"n"``/``"n/d"`` string to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Scalar) -> str:
    return str(Fraction(value))


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


def falling_factorial(t: Scalar, n: int) -> Fraction:
    """``t (t-1) ... (t-n+1)``; the empty product for ``n == 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = Fraction(t)
    out = Fraction(1)
    for j in range(n):
        out *= t - j
    return out


def rat_binomial(t: Scalar, k: int) -> Fraction:
    """Generalized binomial coefficient ``(t)_k / k!`` for rational ``t``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return falling_factorial(t, k) / factorial(k)


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------

Monomial = tuple  # sorted tuple of (variable index, exponent>0) pairs


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class MultiPoly:
    """Sparse polynomial over the rationals in variables ``x1, x2, ...``.

    Terms map a monomial (a sorted tuple of ``(index, exponent)`` pairs with
    positive exponents) to a nonzero Fraction coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            exps: dict[int, int] = {}
            for v, e in mono:
                v, e = int(v), int(e)
                if v < 1 or e < 0:
                    raise ValueError(f"bad monomial {mono!r}")
                exps[v] = exps.get(v, 0) + e
            key = tuple(sorted((v, e) for v, e in exps.items() if e))
            c = Fraction(coef)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, index: int, exponent: int = 1) -> "MultiPoly":
        if index < 1:
            raise ValueError("variable indices start at 1")
        if exponent == 0:
            return cls.const(1)
        return cls._raw({((index, exponent),): Fraction(1)})

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        value = Fraction(value)
        return cls._raw({(): value} if value else {})

    @classmethod
    def coerce(cls, value) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        if _is_scalar(value):
            return cls.const(value)
        return NotImplemented

    # -- inspection ----------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> set[int]:
        return {v for mono in self._terms for v, _ in mono}

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self._terms), default=-1)

    def min_exponent(self, index: int) -> int:
        """Smallest exponent of ``x_index`` over all terms (0 for the zero poly)."""
        if not self._terms:
            return 0
        return min(dict(m).get(index, 0) for m in self._terms)

    def ordered_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded lexicographic order (x1 > x2 > ...), highest first."""
        top = max(self.variables(), default=0)

        def key(item):
            mono = dict(item[0])
            dense = [mono.get(v, 0) for v in range(1, top + 1)]
            return (-_mono_degree(item[0]), [-e for e in dense])

        return sorted(self._terms.items(), key=key)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if _is_scalar(other):
            other = Fraction(other)
            if not other:
                return MultiPoly._raw({})
            return MultiPoly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift_var(self, index: int, delta: int) -> "MultiPoly":
        """Multiply by ``x_index**delta``; a negative delta must divide exactly."""
        out = {}
        for mono, c in self._terms.items():
            exps = dict(mono)
            e = exps.get(index, 0) + delta
            if e < 0:
                raise ArithmeticError(f"x{index}^{-delta} does not divide polynomial")
            exps[index] = e
            out[tuple(sorted((v, x) for v, x in exps.items() if x))] = c
        return MultiPoly._raw(out)

    # -- evaluation ----------------------------------------------------------
    def eval(self, assignment: Mapping[int, Scalar] | Sequence[Scalar]):
        """Evaluate at ``assignment``.

        ``assignment`` is either a mapping ``index -> value`` or a sequence
        whose position ``i`` holds the value of ``x_{i+1}``. Values may be
        any ring element supporting ``*`` and ``**``.
        """
        if not isinstance(assignment, Mapping):
            assignment = {i + 1: v for i, v in enumerate(assignment)}
        missing = self.variables() - set(assignment)
        if missing:
            raise ValueError(f"assignment is missing variables {sorted(missing)}")
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                term = term * assignment[v] ** e
            total = total + term
        return total

    # -- comparison / hashing --------------------------------------------------
    def __eq__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> list[dict]:
        return [
            {"exps": {str(v): e for v, e in mono}, "coef": format_rational(c)}
            for mono, c in self.ordered_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "MultiPoly":
        terms: dict[Monomial, Fraction] = {}
        for entry in data:
            mono = tuple((int(v), int(e)) for v, e in entry["exps"].items())
            key = tuple(sorted((v, e) for v, e in mono if e))
            terms[key] = terms.get(key, Fraction(0)) + as_rational(entry["coef"])
        return cls(terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.ordered_terms():
            body = "".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in mono)
            mag = abs(c)
            if body:
                coef = "" if mag == 1 else str(mag)
            else:
                coef = str(mag)
            parts.append(("-" if c < 0 else "+", coef + body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, chunk in parts[1:]:
            text += f" {sign} {chunk}"
        return text

    def __repr__(self):
        return f"MultiPoly({self})"


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense polynomial ``sum coeffs[i] * u**i`` with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def u(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, value: Scalar) -> "UniPoly":
        return cls((value,))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, UniPoly):
            return value
        if _is_scalar(value):
            return cls((value,))
        return NotImplemented

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if _is_scalar(other):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        inv = Fraction(1) / Fraction(other)
        return UniPoly(c * inv for c in self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = UniPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or another UniPoly."""
        acc = Fraction(0) if _is_scalar(x) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, delta: Scalar) -> "UniPoly":
        """The polynomial ``u -> self(u + delta)``."""
        return self(UniPoly((delta, 1)))

    def __eq__(self, other):
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Iterable) -> "UniPoly":
        return cls(as_rational(c) for c in data)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            mag = abs(c)
            coef = str(mag) if (mag != 1 or not mono) else ""
            if coef and mono:
                coef += "*"
            parts.append(("-" if c < 0 else "+", coef + mono))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, chunk in parts[1:]:
            text += f" {sign} {chunk}"
        return text

    def __repr__(self):
        return f"UniPoly({self})"


def invert_unit(c) -> Fraction:
    """Inverse of a ring element that is a nonzero rational constant."""
    if _is_scalar(c):
        value = Fraction(c)
    elif isinstance(c, (UniPoly, MultiPoly)) and c.is_constant():
        value = c.constant()
    else:
        raise ArithmeticError(f"{c!r} is not an invertible constant")
    if not value:
        raise ZeroDivisionError("cannot invert zero")
    return 1 / value
