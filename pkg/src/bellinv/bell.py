"""Ordinary (partial) Bell polynomials.

``B(n, k)`` is the coefficient of ``t**n`` in ``(x1*t + x2*t**2 + ...)**k``.
Two independent constructions are provided: explicit enumeration of the
partitions of ``n`` into ``k`` parts (:func:`bell_partition`), and coefficient
extraction from truncated powers of the generating series (:func:`bell_gf`).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import MultiPoly, factorial


def _check_range(n: int, k: int) -> None:
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"Bell index out of range: need 1 <= k <= n, got n={n}, k={k}")


def partition_multiplicities(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield ``(i_1, ..., i_{n-k+1})`` with ``sum i_j = k`` and ``sum j*i_j = n``."""
    _check_range(n, k)
    width = n - k + 1
    mult = [0] * width

    # Descend from the largest part size; ``parts``/``weight`` are what is left.
    def descend(j: int, parts: int, weight: int):
        if j == 0:
            if parts == 0 and weight == 0:
                yield tuple(mult)
            return
        if parts == 0:
            if weight == 0:
                yield tuple(mult)
            return
        # every remaining part is at least 1 and at most j
        if weight < parts or weight > parts * j:
            return
        top = min(parts, weight // j)
        for i in range(top, -1, -1):
            mult[j - 1] = i
            yield from descend(j - 1, parts - i, weight - i * j)
        mult[j - 1] = 0

    yield from descend(width, k, n)


@lru_cache(maxsize=None)
def bell_partition(n: int, k: int) -> MultiPoly:
    """Symbolic ``B(n, k)`` in ``x1 .. x_{n-k+1}`` by partition enumeration."""
    _check_range(n, k)
    terms = {}
    for mult in partition_multiplicities(n, k):
        coef = factorial(k)
        for i in mult:
            coef //= factorial(i)
        mono = tuple((j + 1, i) for j, i in enumerate(mult) if i)
        terms[mono] = Fraction(coef)
    return MultiPoly(terms)


def _truncated_mul(a: list, b: list, n: int) -> list:
    out = [None] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai is None or ai == 0:
            continue
        for j in range(0, n + 1 - i):
            bj = b[j] if j < len(b) else None
            if bj is None or bj == 0:
                continue
            prod = ai * bj
            out[i + j] = prod if out[i + j] is None else out[i + j] + prod
    return out


def _gen_series(f: Sequence, n: int) -> list:
    # coefficient list of f1*t + f2*t^2 + ..., positions beyond len(f) are absent
    series = [None] * (n + 1)
    for j, fj in enumerate(f[:n], start=1):
        series[j] = fj
    return series


def _zero_like(f: Sequence):
    for v in f:
        return v * 0
    return Fraction(0)


def bell_gf(n: int, k: int, f: Sequence):
    """``[t^n] (f1*t + f2*t^2 + ...)**k`` for ring elements ``f = (f1, f2, ...)``.

    Only ``f1 .. f_{n-k+1}`` can contribute; extra entries are ignored.
    """
    _check_range(n, k)
    base = _gen_series(f, n)
    power = base
    for _ in range(k - 1):
        power = _truncated_mul(power, base, n)
    value = power[n]
    return _zero_like(f) if value is None else value


def bell_row(n: int, x: Sequence) -> list:
    """``[B(n,1), ..., B(n,n)]`` evaluated at ``x = (x1, ..., xn)``."""
    if n < 1:
        raise ValueError("n must be positive")
    zero = _zero_like(x)
    base = _gen_series(x, n)
    power = base
    row = []
    for k in range(1, n + 1):
        if k > 1:
            power = _truncated_mul(power, base, n)
        row.append(zero if power[n] is None else power[n])
    return row


def bell_table(N: int, x: Sequence) -> list[list]:
    """``table[n][k] = B(n, k)(x)`` for ``1 <= k <= n <= N``.

    Row 0 and column 0 are padding (``table[0][0] = 1`` by convention for
    ``F**0``). Built from the truncated powers ``F, F**2, ..., F**N``.
    """
    zero = _zero_like(x)
    table = [[zero] * (N + 1) for _ in range(N + 1)]
    table[0][0] = zero + 1
    base = _gen_series(x, N)
    power = base
    for k in range(1, N + 1):
        if k > 1:
            power = _truncated_mul(power, base, N)
        for n in range(k, N + 1):
            if power[n] is not None:
                table[n][k] = power[n]
    return table
