"""Command-line entry point: ``bellinv {bell,lambda,mina,transform,verify}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .algebra import as_rational, format_rational
from .bell import bell_partition, bell_row
from .lambdas import (
    ProblemSpec,
    SpecError,
    f_recurrence,
    lambda_closed_m2,
    lambda_closed_m3_degenerate,
    lambda_from_instance,
    lambda_recurrence,
    LambdaTable,
    FTable,
)
from .mina import f_via_mina, mina_via_matrices
from .transforms import (
    SingularParameterError,
    general_backward,
    general_forward,
    linear_weight_backward,
    linear_weight_forward,
    mina_backward,
    scaled_binomial_backward,
    scaled_binomial_forward,
    two_term_backward,
    two_term_forward,
)
from . import verify as verify_mod

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3

# Used when ``lambda`` is called without --spec: F = w**(-1) - 1.
DEFAULT_SPEC = {"p": "1", "terms": [{"a": "-1", "q": "0"}, {"a": "1", "q": "1"}]}


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def parse_rationals(text: str, what: str = "value") -> list[Fraction]:
    out = []
    for pos, chunk in enumerate(text.split(","), start=1):
        try:
            out.append(as_rational(chunk))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{what} {pos} ({chunk.strip()!r}): not a rational literal")
    return out


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}")


def load_spec(path: str | None) -> ProblemSpec:
    data = DEFAULT_SPEC if path is None else load_json(path)
    if not isinstance(data, dict):
        raise UsageError(f"{path}: spec must be a JSON object")
    return ProblemSpec.from_json(data)


def load_sequence(path: str, order: int | None) -> list[Fraction]:
    data = load_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("values"), list):
        raise UsageError(f"{path}: expected an object with a 'values' list")
    values = []
    for pos, raw in enumerate(data["values"], start=1):
        try:
            values.append(as_rational(raw))
        except (TypeError, ValueError, ZeroDivisionError):
            raise UsageError(f"{path}: values[{pos}] ({raw!r}) is not a rational literal")
    if order is not None:
        if order > len(values):
            raise UsageError(f"{path}: order {order} exceeds {len(values)} values")
        values = values[:order]
    return values


def to_csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------------------
# Subcommands; each returns (text, exit code)
# ---------------------------------------------------------------------------


def cmd_bell(args) -> tuple[str, int]:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    if args.k is not None and not 1 <= args.k <= n:
        raise UsageError(f"--k must lie in 1..{n}, got {args.k}")
    ks = [args.k] if args.k is not None else list(range(1, n + 1))
    if args.values is None:
        polys = {k: bell_partition(n, k) for k in ks}
        if args.format == "csv":
            return to_csv([(n, k, str(p)) for k, p in polys.items()], ["n", "k", "poly"]), 0
        if args.k is not None:
            return dumps(polys[args.k].to_json()), 0
        return dumps([polys[k].to_json() for k in ks]), 0
    values = parse_rationals(args.values)
    if len(values) < n - min(ks) + 1:
        raise UsageError(f"need {n - min(ks) + 1} values for B({n},{min(ks)}), got {len(values)}")
    row = bell_row(n, (values + [Fraction(0)] * n)[:n])
    picked = {k: row[k - 1] for k in ks}
    if args.format == "csv":
        return to_csv([(n, k, format_rational(v)) for k, v in picked.items()],
                      ["n", "k", "value"]), 0
    if args.k is not None:
        return dumps(format_rational(picked[args.k])), 0
    return dumps([format_rational(picked[k]) for k in ks]), 0


def _closed_table(spec: ProblemSpec, order: int) -> LambdaTable:
    if spec.m == 2:
        (a1, q), (a2, r) = spec.terms
        if q == r or a1 != 1 / (r - q) or a2 != -a1:
            raise UsageError("closed form needs a1 = -a2 = 1/(q2 - q1)")
        polys = [lambda_closed_m2(spec.p, q, r, n) for n in range(order + 1)]
    elif spec.m == 3 and spec.terms[0][1] == spec.terms[1][1]:
        polys = [lambda_closed_m3_degenerate(spec, n) for n in range(order + 1)]
    else:
        raise UsageError("closed form exists only for two terms or three terms with q1 == q2")
    return LambdaTable(spec, tuple(polys))


def cmd_lambda(args) -> tuple[str, int]:
    spec = load_spec(args.spec)
    order = args.order
    if order < 0:
        raise UsageError("--order must be nonnegative")
    method = args.method
    if method == "f" or method == "f-mina":
        if order < 1:
            raise UsageError("f tables start at n = 1")
        if method == "f":
            table = f_recurrence(spec, order)
        else:
            table = FTable(spec, tuple(f_via_mina(spec, n) for n in range(1, order + 1)))
        rows = [(n, *p.to_json()) for n, p in enumerate(table.polys, start=1)]
    else:
        if method == "rec":
            table = lambda_recurrence(spec, order)
        elif method == "closed":
            table = _closed_table(spec, order)
        else:
            if order < 1:
                table = lambda_recurrence(spec, 0)
            else:
                y = parse_rationals(args.y, "y") if args.y else [Fraction(1)] * order
                table = lambda_from_instance(spec, y, order)
        rows = [(n, *p.to_json()) for n, p in enumerate(table.polys)]
    if args.format == "csv":
        return to_csv(rows, ["n", "coefficients (u^0, u^1, ...)"]), 0
    return dumps(table.to_json()), 0


def cmd_mina(args) -> tuple[str, int]:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    if args.k is not None and not 0 <= args.k < n:
        raise UsageError(f"--k must lie in 0..{n - 1}, got {args.k}")
    ks = [args.k] if args.k is not None else list(range(n))
    polys = {k: mina_via_matrices(n, k) for k in ks}
    if args.format == "csv":
        return to_csv([(n, k, str(p)) for k, p in polys.items()], ["n", "k", "poly"]), 0
    if args.k is not None:
        return dumps(polys[args.k].to_json()), 0
    return dumps([polys[k].to_json() for k in ks]), 0


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"theorem {args.theorem} needs {', '.join(missing)}")
    return [as_rational(getattr(args, n)) for n in names]


def cmd_transform(args) -> tuple[str, int]:
    seq = load_sequence(args.seq, args.order_explicit)
    forward = args.direction == "forward"
    th = args.theorem
    if th == "t13":
        a, b = _need(args, "a", "b")
        out = (linear_weight_forward if forward else linear_weight_backward)(a, b, seq)
    elif th == "t14":
        a, b = _need(args, "a", "b")
        out = (scaled_binomial_forward if forward else scaled_binomial_backward)(a, b, seq)
    elif th == "t15":
        p, q, r = _need(args, "p", "q", "r")
        out = (two_term_forward if forward else two_term_backward)(p, q, r, seq)
    else:
        if args.spec is None:
            raise UsageError(f"theorem {th} needs --spec")
        spec = load_spec(args.spec)
        if th == "t17" and spec.m != 3:
            raise UsageError("theorem t17 needs a three-term spec")
        if forward:
            out = general_forward(spec, seq)
        elif th == "general":
            out = general_backward(spec, seq)
        else:
            out = mina_backward(spec, seq)
    if args.format == "csv":
        return to_csv([(n, format_rational(v)) for n, v in enumerate(out, start=1)],
                      ["n", "value"]), 0
    return dumps({"values": [format_rational(v) for v in out],
                  "provenance": {"theorem": th, "direction": args.direction}}), 0


def cmd_verify(args) -> tuple[str, int]:
    report = verify_mod.run(args.suite, args.order, args.seed)
    code = EXIT_FAIL if report["summary"]["fail"] else 0
    if args.format == "csv":
        rows = [(c["id"], c["identity"], c.get("n", ""), c["status"]) for c in report["cases"]]
        return to_csv(rows, ["id", "identity", "n", "status"]), code
    return dumps(report), code


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common(defaults: bool) -> argparse.ArgumentParser:
    sup = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=sup(None),
                        help="truncation order / sequence length (default 8)")
    common.add_argument("--seed", type=int, default=sup(None),
                        help="random seed (falls back to $BELLINV_SEED, then 0)")
    common.add_argument("--format", choices=("json", "csv"), default=sup("json"))
    common.add_argument("--out", default=sup(None), help="write output to FILE")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellinv", parents=[_common(True)],
        description="Exact Bell-polynomial inverse relations, lambda/f tables and Mina polynomials.")
    parser.add_argument("--version", action="version", version=f"bellinv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("bell", parents=[common], help="Bell polynomials B(n,k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--values", help="comma-separated x1,x2,... to evaluate at")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("lambda", parents=[common], help="lambda_n or f_n tables in u = p*s")
    p.add_argument("--spec", help="spec JSON file (default: p=1, terms (-1,0),(1,1))")
    p.add_argument("--method", choices=("rec", "closed", "instance", "f", "f-mina"),
                   default="rec")
    p.add_argument("--y", help="auxiliary y1,y2,... for --method instance")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("mina", parents=[common], help="Mina polynomials C(n,k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_mina)

    p = sub.add_parser("transform", parents=[common], help="apply one inverse pair")
    p.add_argument("--theorem", choices=("t13", "t14", "t15", "general", "t17"), required=True)
    p.add_argument("--direction", choices=("forward", "backward"), required=True)
    p.add_argument("--spec", help="spec JSON file (general, t17)")
    p.add_argument("--seq", required=True, help='sequence JSON file {"values": [...]}')
    for name in ("a", "b", "p", "q", "r"):
        p.add_argument(f"--{name}", help=f"rational parameter {name}")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("bell", "lambda", "mina", "transforms", "all"),
                   default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.order_explicit = args.order
    if args.order is None:
        args.order = 8
    if args.seed is None:
        env = os.environ.get("BELLINV_SEED")
        try:
            args.seed = int(env) if env else 0
        except ValueError:
            parser.error(f"BELLINV_SEED must be an integer, got {env!r}")
    try:
        text, code = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except SpecError as exc:
        print(f"bellinv: invalid spec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularParameterError as exc:
        print(f"bellinv: singular parameters at index {exc.index}: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
