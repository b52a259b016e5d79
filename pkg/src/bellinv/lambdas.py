"""The coefficient polynomials ``lambda_n`` and their rescaling ``f_n``.

For parameters ``p, (a_i, q_i)`` with ``sum a_i = 0`` and
``c1 = sum a_i q_i != 0``, put ``F(t) = sum a_i w(t)**(-q_i/p)``; then
``lambda_n(s)`` are the coordinates of ``w(t)**s`` in the basis ``F(t)**n``.
Each ``lambda_n`` is a polynomial of degree ``n`` in ``u = p*s``, and every
polynomial here is expressed in ``u``. Evaluating "at ``s = -q/p``" therefore
means evaluating at ``u = -q``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import UniPoly, as_rational, factorial, format_rational, rat_binomial
from .series import Series, basis_expand, series_comp_inverse, series_exp, series_log

U = UniPoly.u()


class SpecError(ValueError):
    """Problem parameters violate an admissibility condition."""


@dataclass(frozen=True)
class ProblemSpec:
    p: Fraction
    terms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        p = as_rational(self.p)
        terms = tuple((as_rational(a), as_rational(q)) for a, q in self.terms)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise SpecError("at least one (a, q) pair is required")
        if p == 0:
            raise SpecError("p == 0")
        if self.c(0) != 0:
            raise SpecError("c0 != 0")
        if self.c(1) == 0:
            raise SpecError("c1 == 0")

    @property
    def m(self) -> int:
        return len(self.terms)

    @property
    def a(self) -> tuple[Fraction, ...]:
        return tuple(a for a, _ in self.terms)

    @property
    def q(self) -> tuple[Fraction, ...]:
        return tuple(q for _, q in self.terms)

    def c(self, k: int) -> Fraction:
        """``c_k = sum a_i q_i**k``."""
        return sum((a * q**k for a, q in self.terms), Fraction(0))

    @classmethod
    def two_term(cls, p, q, r) -> "ProblemSpec":
        """``a1 = -a2 = 1/(r - q)`` with exponents ``q, r``."""
        q, r = as_rational(q), as_rational(r)
        if q == r:
            raise SpecError("r == q")
        a = 1 / (r - q)
        return cls(p, ((a, q), (-a, r)))

    def to_json(self) -> dict:
        return {
            "p": format_rational(self.p),
            "terms": [{"a": format_rational(a), "q": format_rational(q)} for a, q in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProblemSpec":
        try:
            terms = tuple((t["a"], t["q"]) for t in data["terms"])
            return cls(data["p"], terms)
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed spec: {exc}") from exc


@dataclass(frozen=True)
class LambdaTable:
    spec: ProblemSpec
    polys: tuple[UniPoly, ...]

    def __getitem__(self, n: int) -> UniPoly:
        return self.polys[n]

    def __len__(self):
        return len(self.polys)

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "variable": "u=p*s",
                "lambda": [p.to_json() for p in self.polys]}


@dataclass(frozen=True)
class FTable:
    """``f_1 .. f_N``; index with ``table.f(n)``."""

    spec: ProblemSpec
    polys: tuple[UniPoly, ...]

    def f(self, n: int) -> UniPoly:
        if n < 1:
            raise IndexError("f is indexed from 1")
        return self.polys[n - 1]

    @property
    def order(self) -> int:
        return len(self.polys)

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "variable": "u=p*s",
                "f": [p.to_json() for p in self.polys]}


# ---------------------------------------------------------------------------
# Recurrence route
# ---------------------------------------------------------------------------


def lambda_recurrence(spec: ProblemSpec, N: int) -> LambdaTable:
    """``lambda_0 .. lambda_N`` from

    ``(n+1) c1 lambda_{n+1}(u) = -u lambda_n(u)
    - sum_k a_k q_k sum_{j=1..n} lambda_{n+1-j}(-q_k) j lambda_j(u)``.
    """
    if N < 0:
        raise ValueError("order must be nonnegative")
    c1 = spec.c(1)
    lam = [UniPoly.const(1)]
    # values[k][i] = lambda_i(u = -q_k)
    values = [[Fraction(1)] for _ in spec.terms]
    for n in range(N):
        acc = -(U * lam[n])
        for k, (a, q) in enumerate(spec.terms):
            if not a or not q:
                continue
            inner = UniPoly()
            for j in range(1, n + 1):
                inner = inner + lam[j] * (values[k][n + 1 - j] * j)
            acc = acc - inner * (a * q)
        nxt = acc / ((n + 1) * c1)
        lam.append(nxt)
        for k, (_, q) in enumerate(spec.terms):
            values[k].append(nxt(-q))
    return LambdaTable(spec, tuple(lam))


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def lambda_closed_m2(p, q, r, n: int) -> UniPoly:
    """``(u/n!) prod_{k=1..n-1} (u + k q + (n-k) r)`` for the two-term spec.

    ``p`` only fixes ``u = p*s`` and does not enter the polynomial in ``u``.
    """
    q, r = as_rational(q), as_rational(r)
    if q == r:
        raise SpecError("r == q")
    if n == 0:
        return UniPoly.const(1)
    out = U / factorial(n)
    for k in range(1, n):
        out = out * (U + (k * q + (n - k) * r))
    return out


def lambda_closed_m3_degenerate(spec: ProblemSpec, n: int) -> UniPoly:
    """Closed form for three terms with ``q1 == q2``:

    ``u / (n! (a3 (q1 - q3))**n) * prod_{k=1..n-1} (u + k q1 + (n-k) q3)``.
    """
    if spec.m != 3:
        raise SpecError("degenerate closed form needs exactly three terms")
    (_, q1), (_, q2), (a3, q3) = spec.terms
    if q1 != q2:
        raise SpecError("degenerate closed form needs q1 == q2")
    scale = a3 * (q1 - q3)
    if scale == 0:
        raise SpecError("a3 * (q1 - q3) == 0")
    if n == 0:
        return UniPoly.const(1)
    out = U / (factorial(n) * scale**n)
    for k in range(1, n):
        out = out * (U + (k * q1 + (n - k) * q3))
    return out


# ---------------------------------------------------------------------------
# Series route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """The series attached to a concrete ``phi = 1 + sum y_n t^n``.

    ``f = t / phi**p``, ``g`` its compositional inverse, ``w = t / g`` and
    ``F = sum a_k w**(-q_k/p)``.
    """

    spec: ProblemSpec
    phi: Series
    f: Series
    g: Series
    w: Series
    F: Series


def build_instance(spec: ProblemSpec, y: Sequence, N: int) -> Instance:
    if N < 1:
        raise ValueError("order must be at least 1")
    ys = [as_rational(v) for v in y][:N]
    ys.extend(Fraction(0) for _ in range(N - len(ys)))
    # [t^N] of t/g needs g through t^{N+1}, so work one order higher
    phi = Series([Fraction(1)] + ys, N + 1)
    f = phi.pow_rat(-spec.p).mul_t()
    g = series_comp_inverse(f)
    w = g.div_t().reciprocal()
    F = sum((w.pow_rat(-q / spec.p) * a for a, q in spec.terms), Series.const(0, N))
    return Instance(spec, phi.truncate(N), f.truncate(N), g.truncate(N), w, F)


def lambda_from_instance(spec: ProblemSpec, y: Sequence, N: int) -> LambdaTable:
    """``lambda_n`` as the coordinates of ``w**s`` in powers of ``F``.

    ``w**s = exp((u/p) log w)`` is expanded with polynomial-in-``u``
    coefficients, so the result is exact for every ``s`` at once.
    """
    inst = build_instance(spec, y, N)
    if not inst.F.in_L1():
        raise ValueError("F has vanishing linear term; choose y1 != 0")
    log_w = series_log(inst.w)
    exponent = Series([c * (U / spec.p) for c in log_w.coeffs], N)
    ws = series_exp(exponent)
    mu = basis_expand(ws, inst.F)
    return LambdaTable(spec, tuple(UniPoly.coerce(m) for m in mu))


# ---------------------------------------------------------------------------
# The rescaled polynomials f_n (three-term case)
# ---------------------------------------------------------------------------


def _require_m3(spec: ProblemSpec) -> None:
    if spec.m != 3:
        raise SpecError(f"this construction needs exactly three terms, got m={spec.m}")


def f_recurrence(spec: ProblemSpec, N: int) -> FTable:
    """``f_1 = 1`` and

    ``f_{n+1}(u) = u f_n(u) + (1/c1) sum_k a_k q_k**2
    sum_{i=1..n} C(n,i) f_i(-q_k) f_{n+1-i}(u)``.
    """
    _require_m3(spec)
    c1 = spec.c(1)
    fs = [UniPoly.const(1)]
    values = [[Fraction(1)] for _ in spec.terms]  # values[k][i-1] = f_i(-q_k)
    for n in range(1, N):
        acc = U * fs[n - 1]
        for k, (a, q) in enumerate(spec.terms):
            weight = a * q * q / c1
            if not weight:
                continue
            for i in range(1, n + 1):
                acc = acc + fs[n - i] * (weight * rat_binomial(n, i) * values[k][i - 1])
        fs.append(acc)
        for k, (_, q) in enumerate(spec.terms):
            values[k].append(acc(-q))
    return FTable(spec, tuple(fs[:N]))


def lambda_from_f(spec: ProblemSpec, f: UniPoly, n: int) -> UniPoly:
    """``lambda_n = u / (n! (-c1)**n) * f_n``."""
    return U * f / (factorial(n) * (-spec.c(1)) ** n)


def lambda_f_bridge(spec: ProblemSpec, N: int) -> list[dict]:
    """Compare ``lambda_n`` from the recurrence with the rescaled ``f_n``."""
    lam = lambda_recurrence(spec, N)
    ft = f_recurrence(spec, N)
    cases = []
    for n in range(1, N + 1):
        lhs = lam[n]
        rhs = lambda_from_f(spec, ft.f(n), n)
        ok = lhs == rhs
        cases.append({
            "identity": "lambda-f-rescaling",
            "n": n,
            "status": "pass" if ok else "fail",
            "witness": None if ok else {"lambda": lhs.to_json(), "rescaled_f": rhs.to_json()},
        })
    return cases


# ---------------------------------------------------------------------------
# Law checks
# ---------------------------------------------------------------------------


def _case(identity: str, n: int, ok: bool, witness=None, **extra) -> dict:
    out = {"identity": identity, "n": n, "status": "pass" if ok else "fail",
           "witness": None if ok else witness}
    out.update(extra)
    return out


def _distinct_points(rng: random.Random, count: int, avoid=()) -> list[Fraction]:
    seen = set(avoid)
    pts = []
    while len(pts) < count:
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        if v not in seen:
            seen.add(v)
            pts.append(v)
    return pts


def check_table_structure(table: LambdaTable) -> list[dict]:
    """``lambda_0 = 1``; for ``n >= 1`` degree ``n`` and no constant term."""
    cases = [_case("lambda-zero-is-one", 0, table[0] == 1)]
    for n in range(1, len(table)):
        p = table[n]
        cases.append(_case("lambda-degree", n, p.degree == n, {"degree": p.degree}))
        cases.append(_case("lambda-vanishes-at-zero", n, p(0) == 0,
                           {"value": format_rational(p(0))}))
    return cases


def verify_lambda_laws(spec: ProblemSpec, N: int, seed: int = 0,
                       table: LambdaTable | None = None) -> list[dict]:
    """Check the addition laws and shift recurrences of ``lambda_n`` for ``n <= N``.

    Every identity is reduced to a polynomial identity of bounded degree and
    tested on more points than that degree, so a pass is a proof. Points at
    which a denominator vanishes are reported as ``skipped-pole``.
    """
    rng = random.Random(seed)
    lam = table if table is not None else lambda_recurrence(spec, N + 1)
    if lam.order < N + 1:
        raise ValueError("table must extend one order past N")
    cases: list[dict] = []
    qs = spec.q

    for n in range(N + 1):
        # lambda_n(a+b) = sum lambda_k(a) lambda_{n-k}(b); degree <= n per variable
        grid = _distinct_points(rng, 2 * n + 1)
        ok, witness = True, None
        for a in grid:
            la = [lam[k](a) for k in range(n + 1)]
            for b in grid:
                lhs = lam[n](a + b)
                rhs = sum(la[k] * lam[n - k](b) for k in range(n + 1))
                if lhs != rhs:
                    ok, witness = False, {"a": str(a), "b": str(b)}
                    break
            if not ok:
                break
        cases.append(_case("lambda-addition", n, ok, witness, points=len(grid) ** 2))

        # a n lambda_n(a+b) = (a+b) sum k lambda_k(a) lambda_{n-k}(b); a != 0
        grid = _distinct_points(rng, 2 * n + 3, avoid={Fraction(0)})
        ok, witness = True, None
        for a in grid:
            la = [lam[k](a) for k in range(n + 1)]
            for b in grid:
                lhs = n * lam[n](a + b)
                rhs = (a + b) / a * sum(k * la[k] * lam[n - k](b) for k in range(n + 1))
                if lhs != rhs:
                    ok, witness = False, {"a": str(a), "b": str(b)}
                    break
            if not ok:
                break
        cases.append(_case("lambda-weighted-addition", n, ok, witness, points=len(grid) ** 2))

        # lambda_n(u) = (n+1) sum a_k q_k / (q_k - u) lambda_{n+1}(u - q_k)
        cases.extend(_pointwise(
            "lambda-shift-recurrence", n, rng, degree=n + spec.m, poles=set(qs),
            lhs=lambda u, n=n: lam[n](u),
            rhs=lambda u, n=n: (n + 1) * sum(
                a * q / (q - u) * lam[n + 1](u - q) for a, q in spec.terms),
        ))

        if spec.m == 3:
            (a1, q1), (a2, q2), (a3, q3) = spec.terms
            cases.extend(_pointwise(
                "lambda-three-term-eliminated", n, rng, degree=n + 4,
                poles={Fraction(0), q1, q2},
                lhs=lambda u, n=n: (u + n * q3) / ((n + 1) * u) * lam[n](u),
                rhs=lambda u, n=n: (a1 * (q3 - q1) / (u - q1) * lam[n + 1](u - q1)
                                    + a2 * (q3 - q2) / (u - q2) * lam[n + 1](u - q2)),
            ))
            cases.extend(_pointwise(
                "lambda-three-term-difference", n, rng, degree=n + 5,
                poles={Fraction(0), q1, q2, q3},
                lhs=lambda u, n=n: Fraction(n) / ((n + 1) * u) * lam[n](u),
                rhs=lambda u, n=n: sum(a / (u - q) * lam[n + 1](u - q) for a, q in spec.terms),
            ))
    return cases


def _pointwise(identity, n, rng, degree, poles, lhs, rhs) -> list[dict]:
    """Test ``lhs == rhs`` at ``degree + 1`` points where both sides are defined.

    The candidate points include the poles themselves; those raise on
    evaluation and are reported as ``skipped-pole`` rather than failures.
    """
    cases = []
    candidates = sorted(poles) + _distinct_points(rng, degree + 1, avoid=poles)
    good = 0
    for u in candidates:
        try:
            ok = lhs(u) == rhs(u)
        except ZeroDivisionError:
            cases.append({"identity": identity, "n": n, "status": "skipped-pole",
                          "witness": {"u": str(u)}})
            continue
        if not ok:
            cases.append(_case(identity, n, False, {"u": str(u)}))
            return cases
        good += 1
    cases.append(_case(identity, n, good >= degree + 1, {"points": good}, points=good))
    return cases
