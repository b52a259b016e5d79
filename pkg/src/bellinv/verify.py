"""Seeded verification suites producing machine-readable reports.

Every suite returns a list of case dicts carrying at least ``identity``,
``status`` (``pass``, ``fail`` or ``skipped-pole``) and ``witness``.
:func:`run` assembles them into a report with stable case ids.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from . import __version__
from .algebra import MultiPoly, format_rational
from .bell import bell_gf, bell_partition
from .lambdas import (
    ProblemSpec,
    SpecError,
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
from .mina import (
    check_chi_matches_matrices,
    check_published_f,
    check_published_table,
    check_shifted_product,
    f_via_mina,
    mina_row,
    verify_convolutions,
)
from .transforms import (
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

SUITES = ("bell", "lambda", "mina", "transforms")


# ---------------------------------------------------------------------------
# Seeded generators
# ---------------------------------------------------------------------------


def random_rational(rng: random.Random, num: int = 20, den: int = 10) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_nonzero(rng: random.Random, num: int = 20, den: int = 10) -> Fraction:
    while True:
        v = random_rational(rng, num, den)
        if v:
            return v


def random_sequence(rng: random.Random, N: int) -> list[Fraction]:
    return [random_rational(rng) for _ in range(N)]


def random_spec(rng: random.Random, m: int, N: int = 0, *, p: Fraction | None = None,
                degenerate: bool = False) -> ProblemSpec:
    """A random admissible spec with no poles for orders up to ``N``.

    Avoided: ``n p + q_i = 0`` and ``p n = 1`` for ``1 <= n <= N``.
    ``degenerate=True`` forces ``q_1 == q_2`` (needs ``m == 3``).
    """
    while True:
        pp = p if p is not None else random_nonzero(rng, 6, 4)
        qs = [random_rational(rng, 12, 4) for _ in range(m)]
        if degenerate:
            qs[1] = qs[0]
        a = [random_nonzero(rng, 12, 5) for _ in range(m - 1)]
        a.append(-sum(a, Fraction(0)))
        try:
            spec = ProblemSpec(pp, tuple(zip(a, qs)))
        except SpecError:
            continue
        if degenerate and spec.terms[2][0] * (qs[0] - qs[2]) == 0:
            continue
        if any(n * pp + q == 0 for n in range(1, N + 1) for q in qs):
            continue
        if any(pp * n == 1 for n in range(1, N + 1)):
            continue
        return spec


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _seq_json(values) -> list[str]:
    return [format_rational(v) for v in values]


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_bell(order: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    cases = []
    for trial in range(5):
        x = [random_rational(rng) for _ in range(order)]
        lam = random_nonzero(rng)
        for n in range(1, order + 1):
            for k in range(1, n + 1):
                sym = bell_partition(n, k)
                ev = sym.eval(x[: n - k + 1])
                ok = ev == bell_gf(n, k, x)
                weighted = [lam**j * v for j, v in enumerate(x[: n - k + 1], start=1)]
                scaled = [lam * v for v in x[: n - k + 1]]
                cases.append({"identity": "bell-partition-vs-gf", "n": n, "k": k,
                              "trial": trial, "status": _status(ok),
                              "witness": None if ok else {"x": _seq_json(x)}})
                ok = sym.eval(weighted) == lam**n * ev
                cases.append({"identity": "bell-weight-homogeneity", "n": n, "k": k,
                              "trial": trial, "status": _status(ok), "witness": None})
                ok = sym.eval(scaled) == lam**k * ev
                cases.append({"identity": "bell-degree-homogeneity", "n": n, "k": k,
                              "trial": trial, "status": _status(ok), "witness": None})
    return cases


def suite_lambda(order: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    cases = []
    specs = [random_spec(rng, m) for m in (2, 3, 3, 4, 5)]
    for idx, spec in enumerate(specs):
        params = {"spec": spec.to_json(), "spec_index": idx}
        table = lambda_recurrence(spec, order + 1)
        for c in check_table_structure(table):
            cases.append({**c, "parameters": params})
        for c in verify_lambda_laws(spec, order, seed=seed + idx, table=table):
            cases.append({**c, "parameters": params})
        ys = []
        for _ in range(2):
            y = random_sequence(rng, order)
            y[0] = random_nonzero(rng)
            ys.append(y)
        for j, y in enumerate(ys):
            inst = lambda_from_instance(spec, y, order)
            ok = inst.polys == table.polys[: order + 1]
            cases.append({"identity": "lambda-instance-independence", "n": order,
                          "status": _status(ok),
                          "parameters": {**params, "y": _seq_json(y), "trial": j},
                          "witness": None if ok else {"lambda": inst.to_json()["lambda"]}})
        if spec.m == 3:
            for c in lambda_f_bridge(spec, order):
                cases.append({**c, "parameters": params})

    # two-term closed product
    for trial in range(3):
        q, r = random_rational(rng, 12, 4), random_rational(rng, 12, 4)
        if q == r or q == 0 or r == 0:
            continue
        spec = ProblemSpec.two_term(random_nonzero(rng, 6, 4), q, r)
        table = lambda_recurrence(spec, max(order, 12))
        for n in range(len(table)):
            ok = table[n] == lambda_closed_m2(spec.p, q, r, n)
            cases.append({"identity": "lambda-two-term-product", "n": n, "status": _status(ok),
                          "parameters": {"spec": spec.to_json()}, "witness": None})

    # three terms with a repeated exponent
    for trial in range(2):
        spec = random_spec(rng, 3, degenerate=True)
        table = lambda_recurrence(spec, max(order, 10))
        ft = f_recurrence(spec, max(order, 10))
        for n in range(1, len(table)):
            closed = lambda_closed_m3_degenerate(spec, n)
            ok = table[n] == closed
            cases.append({"identity": "lambda-repeated-exponent-product", "n": n,
                          "status": _status(ok), "parameters": {"spec": spec.to_json()},
                          "witness": None})
            bridged = lambda_from_f(spec, ft.f(n), n)
            ok = closed == bridged and ft.f(n) == f_via_mina(spec, n)
            cases.append({"identity": "lambda-three-way", "n": n, "status": _status(ok),
                          "parameters": {"spec": spec.to_json()}, "witness": None})
    return cases


def suite_mina(order: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    cases = []
    cases.extend(check_published_table())
    cases.extend(check_published_f())
    cases.extend(check_chi_matches_matrices(order))
    cases.extend(check_shifted_product(order))
    for n in range(1, order + 1):
        try:
            row = mina_row(n)
            ok = all(isinstance(c, MultiPoly) for c in row)
        except ArithmeticError:
            ok = False
        cases.append({"identity": "mina-polynomial", "n": n, "status": _status(ok),
                      "witness": None})
        ok = ok and row[n - 1] == 1
        cases.append({"identity": "mina-top-coefficient", "n": n, "status": _status(ok),
                      "witness": None})
    cases.extend(verify_convolutions(order, "symbolic"))
    cases.extend(verify_convolutions(order, "random", seed=seed))
    for trial in range(3):
        spec = random_spec(rng, 3)
        ft = f_recurrence(spec, order)
        for n in range(1, order + 1):
            ok = f_via_mina(spec, n) == ft.f(n)
            cases.append({"identity": "f-mina-vs-recurrence", "n": n, "status": _status(ok),
                          "parameters": {"spec": spec.to_json()}, "witness": None})
    return cases


def _round_trip(identity: str, forward: Callable, backward: Callable, x, params) -> list[dict]:
    """Both compositions on the same input; poles become ``skipped-pole``."""
    out = []
    for direction, first, second in (("forward-backward", forward, backward),
                                      ("backward-forward", backward, forward)):
        try:
            got = second(first(x))
        except SingularParameterError as exc:
            out.append({"identity": identity, "direction": direction, "n": len(x),
                        "status": "skipped-pole", "parameters": params,
                        "witness": {"index": exc.index, "reason": str(exc)}})
            continue
        ok = got == list(x)
        out.append({"identity": identity, "direction": direction, "n": len(x),
                    "status": _status(ok), "parameters": params,
                    "witness": None if ok else {"input": _seq_json(x), "got": _seq_json(got)}})
    return out


def suite_transforms(order: int, seed: int, cases_per_pair: int = 5) -> list[dict]:
    rng = random.Random(seed)
    cases = []
    N = order
    for trial in range(cases_per_pair):
        x = random_sequence(rng, N)

        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        params = {"a": str(a), "b": str(b), "trial": trial}
        cases.extend(_round_trip("pair-linear-weight",
                                 lambda v: linear_weight_forward(a, b, v),
                                 lambda v: linear_weight_backward(a, b, v), x, params))

        a, b = random_rational(rng, 6, 4), random_nonzero(rng, 6, 4)
        params = {"a": str(a), "b": str(b), "trial": trial}
        cases.extend(_round_trip("pair-scaled-binomial",
                                 lambda v: scaled_binomial_forward(a, b, v),
                                 lambda v: scaled_binomial_backward(a, b, v), x, params))

        while True:
            p, q, r = (random_nonzero(rng, 6, 4) for _ in range(3))
            if q != r:
                break
        params = {"p": str(p), "q": str(q), "r": str(r), "trial": trial}
        cases.extend(_round_trip("pair-two-term",
                                 lambda v: two_term_forward(p, q, r, v),
                                 lambda v: two_term_backward(p, q, r, v), x, params))

        spec2 = ProblemSpec.two_term(p, q, r)
        try:
            ok = general_forward(spec2, x) == two_term_forward(p, q, r, x)
            ok = ok and general_backward(spec2, x) == two_term_backward(p, q, r, x)
            status = _status(ok)
        except SingularParameterError:
            status = "skipped-pole"
        cases.append({"identity": "general-specializes-to-two-term", "n": N,
                      "status": status, "parameters": params, "witness": None})

        spec = random_spec(rng, rng.choice((2, 3, 4)), N)
        params = {"spec": spec.to_json(), "trial": trial}
        cases.extend(_round_trip("pair-general",
                                 lambda v: general_forward(spec, v),
                                 lambda v: general_backward(spec, v), x, params))
        ok = general_forward(spec, x) == general_forward_lagrange(spec, x)
        cases.append({"identity": "general-forward-vs-lagrange", "n": N,
                      "status": _status(ok), "parameters": params, "witness": None})

        spec3 = random_spec(rng, 3, N)
        params = {"spec": spec3.to_json(), "trial": trial}
        cases.extend(_round_trip("pair-three-term-mina",
                                 lambda v: general_forward(spec3, v),
                                 lambda v: mina_backward(spec3, v), x, params))
        via_mina = mina_backward(spec3, x)
        ok = via_mina == general_backward(spec3, x) == mina_backward(spec3, x, "recurrence")
        cases.append({"identity": "general-backward-vs-mina", "n": N, "status": _status(ok),
                      "parameters": params, "witness": None})

        y = random_sequence(rng, N)
        pspec = random_spec(rng, rng.choice((2, 3)))
        cases.extend(pipeline_invariants(pspec, y, N))

    spec = random_spec(rng, 3, p=Fraction(1))
    cases.extend(linear_phi_checks(spec, max(N, 10)))
    return cases


SUITE_FUNCS = {
    "bell": suite_bell,
    "lambda": suite_lambda,
    "mina": suite_mina,
    "transforms": suite_transforms,
}


def run(suite: str = "all", order: int = 8, seed: int = 0) -> dict:
    """Run one suite (or ``"all"``) and return the report dict."""
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {name!r}")
    cases = []
    for name in names:
        for i, case in enumerate(SUITE_FUNCS[name](order, seed)):
            cases.append({"id": f"{name}/{i:05d}/{case['identity']}", **case})
    cases.sort(key=lambda c: c["id"])
    summary = {"pass": 0, "fail": 0, "skipped-pole": 0}
    for c in cases:
        summary[c["status"]] += 1
    return {
        "tool": "bellinv",
        "version": __version__,
        "suite": suite,
        "order": order,
        "seed": seed,
        "summary": summary,
        "cases": cases,
    }
