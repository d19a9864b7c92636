"""Command-line interface.

Exit codes: 0 success/verified, 1 valid negative result, 2 usage or
precondition error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import _config
from .exact_linalg import subspace_equal
from .io import FormatError, dumps, load_tensor, parse_rationals, tensor_to_json
from .multilin import key_of
from .syzygy import (
    PreconditionError,
    _require_1generic_and_codim,
    certify_counterexample,
    counterexample,
    embed_last_syzygy,
    embedded_span,
    en_betti,
    eval_syzygy,
    last_syzygy_dim,
    last_syzygy_space_oracle,
    on_X,
    random_syzygy,
    support_test,
    syzygy_ideal_test,
    tangent_test,
)
from .tensor3 import catalecticant, check_1generic, green_report, random_tensor, row_rank

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(v: Sequence) -> list[str]:
    return [str(x) for x in v]


def _read_tensor(args):
    if not args.input:
        raise UsageError("missing -i/--input")
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    return load_tensor(text)


def _coords(text: str | None, n: int, what: str) -> tuple[Fraction, ...]:
    if text is None:
        raise UsageError(f"missing {what}")
    v = parse_rationals(text)
    if len(v) != n:
        raise UsageError(f"{what} needs {n} coordinates, got {len(v)}")
    return v


def _syzygy_arg(args, t) -> tuple[Fraction, ...]:
    if t.a < t.b:
        raise PreconditionError(f"need a >= b, got a={t.a}, b={t.b}")
    return _coords(args.syzygy, last_syzygy_dim(t.a, t.b), "-s (syzygy coordinates in S_{a-b}B)")


# commands return (exit code, json payload, text)


def cmd_gen(args):
    if args.kind == "cat":
        if args.rows is None or args.cols is None:
            raise UsageError("gen cat needs --rows and --cols")
        if args.rows < 1 or args.cols < 1:
            raise UsageError("--rows and --cols must be positive")
        t = catalecticant(args.rows, args.cols)
    else:
        if args.rows is None or args.cols is None or args.dim_c is None:
            raise UsageError("gen random needs --rows, --cols and --dim-c")
        if min(args.rows, args.cols, args.dim_c) < 1 or args.coeff_bound < 0:
            raise UsageError("dimensions must be positive and --coeff-bound non-negative")
        t = random_tensor(args.rows, args.cols, args.dim_c, args.seed, args.coeff_bound)
    js = tensor_to_json(t)
    return OK, js, dumps(js).rstrip("\n")


def cmd_check(args):
    t = _read_tensor(args)
    rep = check_1generic(t, witness_budget=args.budget, seed=args.seed)
    js = rep.to_json()
    if rep.is_1generic:
        text = "1-generic: yes"
    else:
        label = "row" if rep.failing_side == "rows" else "column"
        w = "none found" if rep.witness is None else "(" + ",".join(_fmt(rep.witness)) + ")"
        text = f"1-generic: no\nfailing side: {rep.failing_side}\nwitness {label}: {w}"
    return (OK if rep.is_1generic else NEGATIVE), js, text


def cmd_betti(args):
    t = _read_tensor(args)
    if t.a < t.b:
        raise PreconditionError(f"need a >= b, got a={t.a}, b={t.b}")
    table = en_betti(t.a, t.b)
    js = {"a": t.a, "b": t.b, **table.to_json()}
    return OK, js, table.to_text()


def cmd_syzygy(args):
    t = _read_tensor(args)
    s = _syzygy_arg(args, t)
    coc = embed_last_syzygy(t, s)
    js = {"s": _fmt(s), "cocycle": coc.to_json()}
    lines = [f"e[{key_of(k)}]: {p!r}" for k, p in coc.components.items()] or ["0"]
    return OK, js, "\n".join(lines)


def cmd_ideal_test(args):
    t = _read_tensor(args)
    s = _syzygy_arg(args, t)
    res = syzygy_ideal_test(t, s)
    js = {"s": _fmt(s), **res}
    text = f"dim I(s)_b = {res['dim_I_s']}, dim (I_X)_b = {res['dim_I_X']}, " + (
        "equal" if res["equal"] else "not equal"
    )
    return (OK if res["equal"] else NEGATIVE), js, text


def cmd_eval(args):
    t = _read_tensor(args)
    s = _syzygy_arg(args, t)
    x = _coords(args.point, t.c, "-x (point coordinates)")
    val = eval_syzygy(embed_last_syzygy(t, s), x)
    js = {"s": _fmt(s), "x": _fmt(x), "value": val.to_json(), "zero": val.is_zero(), "x_on_X": on_X(t, x)}
    return OK, js, f"s(x) = {val!r}\nx on X: {'yes' if js['x_on_X'] else 'no'}"


def cmd_rank_row(args):
    t = _read_tensor(args)
    alpha = _coords(args.alpha, t.a, "--alpha (generalized row)")
    if not any(alpha):
        raise UsageError("--alpha must be nonzero")
    r = row_rank(t, alpha)
    js = {"alpha": _fmt(alpha), "rank": r, "b": t.b, "field": _config.field_name()}
    return OK, js, f"rank {r} (b = {t.b})"


def verify_support(args, t):
    rep = support_test(t, args.trials, args.seed)
    js = rep.to_json()
    text = (
        f"off X: {rep.off_X_nonzero} nonzero, {rep.off_X_zero} zero; "
        f"on X: {rep.on_X_zero} zero, {rep.on_X_nonzero} nonzero\nverdict: {rep.verdict}"
    )
    return (OK if rep.verdict == "pass" else NEGATIVE), js, text


def verify_tangent(args, t):
    s = _syzygy_arg(args, t)
    x = _coords(args.point, t.c, "-x (point coordinates)")
    try:
        rep = tangent_test(t, s, x)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    js = rep.to_json()
    if not rep.x_smooth_on_X:
        return NEGATIVE, js, "x is a singular point of X; comparison skipped"
    text = f"dim {rep.dim_TX} = dim {rep.dim_TSyz}, " + ("equal" if rep.equal else "not equal")
    return (OK if rep.equal else NEGATIVE), js, text


def verify_ideal(args, t):
    _require_1generic_and_codim(t)
    if args.syzygy is not None:
        syzygies = [_syzygy_arg(args, t)]
    else:
        syzygies = [random_syzygy(np.random.default_rng([args.seed, 3, i]), t.a, t.b) for i in range(args.trials)]
    results = [syzygy_ideal_test(t, s) for s in syzygies]
    equal = sum(r["equal"] for r in results)
    label = "proven case (b = 2)" if t.b <= 2 else "experimental evidence"
    js = {"label": label, "tested": len(results), "equal": equal, "results": results}
    text = f"{equal}/{len(results)} syzygy ideals equal (I_X)_b [{label}]"
    return (OK if equal == len(results) else NEGATIVE), js, text


def verify_koszul(args, t):
    if t.a < t.b:
        raise PreconditionError(f"need a >= b, got a={t.a}, b={t.b}")
    oracle = last_syzygy_space_oracle(t)
    formula = comb(t.a - 1, t.b - 1)
    span = embedded_span(t)
    match = oracle.dim == formula and subspace_equal(oracle, span)
    js = {"oracle_dim": oracle.dim, "formula_dim": formula, "embedded_dim": span.dim, "match": match}
    text = f"oracle dim {oracle.dim}, formula dim {formula}, " + ("match" if match else "mismatch")
    return (OK if match else NEGATIVE), js, text


def verify_green(args, t):
    rep = green_report(t)
    rep["field"] = _config.field_name()
    text = f"e_a rank {rep['rank']} of {rep['expected']}: " + ("injective" if rep["injective"] else rep["reason"])
    return (OK if rep["injective"] else NEGATIVE), rep, text


VERIFIERS = {
    "support": verify_support,
    "tangent": verify_tangent,
    "ideal": verify_ideal,
    "koszul": verify_koszul,
    "green": verify_green,
}


def cmd_verify(args):
    t = _read_tensor(args)
    code, js, text = VERIFIERS[args.check](args, t)
    return code, {"check": args.check, **js}, text


def cmd_counterexample(args):
    t = _read_tensor(args)
    if args.budget < 0:
        raise UsageError("--budget must be non-negative")
    res = counterexample(t, budget=args.budget, seed=args.seed)
    js = res.to_json()
    if args.point is not None:
        x = _coords(args.point, t.c, "-x (point coordinates)")
        cert = certify_counterexample(t, res.s, x)
        js["injected"] = {"x": _fmt(x), "certificate": cert, "passes": cert["eval_zero"] and cert["x_off_X"]}
    if res.found:
        # re-evaluate from scratch before reporting
        cert = certify_counterexample(t, res.s, res.x)
        if not (cert["eval_zero"] and cert["x_off_X"]):  # pragma: no cover - guarded by counterexample()
            raise RuntimeError("certificate failed re-verification")
        text = f"s = ({','.join(_fmt(res.s))}), x = ({','.join(_fmt(res.x))}): s(x) = 0 and x not on X"
    else:
        text = f"budget exhausted after {res.attempts} attempts"
    if "injected" in js:
        text += "\ninjected x: " + ("passes" if js["injected"]["passes"] else "fails")
    ok = res.found or js.get("injected", {}).get("passes", False)
    return (OK if ok else NEGATIVE), js, text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="tensor JSON file ('-' for stdin)")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="syzkit", description="Last syzygies of 1-generic matrices of linear forms.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a tensor")
    g.add_argument("kind", choices=("cat", "random"))
    g.add_argument("--rows", type=int)
    g.add_argument("--cols", type=int)
    g.add_argument("--dim-c", type=int)
    g.add_argument("--coeff-bound", type=int, default=5)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check-1generic", parents=[common], help="certify 1-genericity")
    c.add_argument("--budget", type=int, default=2000, help="witness search budget")
    c.set_defaults(func=cmd_check)

    sub.add_parser("betti", parents=[common], help="Eagon-Northcott Betti diagram").set_defaults(func=cmd_betti)

    for name, func, help_ in (
        ("syzygy", cmd_syzygy, "Koszul cocycle of a last syzygy"),
        ("ideal-test", cmd_ideal_test, "compare I(s) with I_X in degree b"),
        ("eval", cmd_eval, "evaluate a last syzygy at a point"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("-s", "--syzygy", help="coordinates of s in S_{a-b}B (graded-lex)")
        sp.add_argument("-x", "--point", help="point coordinates")
        sp.set_defaults(func=func)

    v = sub.add_parser("verify", parents=[common], help="check a theorem on an instance")
    v.add_argument("check", choices=sorted(VERIFIERS))
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("-s", "--syzygy")
    v.add_argument("-x", "--point")
    v.set_defaults(func=cmd_verify)

    ce = sub.add_parser("counterexample", parents=[common], help="syzygy with support off X")
    ce.add_argument("--budget", type=int, default=1000)
    ce.add_argument("-x", "--point", help="also certify this point")
    ce.set_defaults(func=cmd_counterexample)

    r = sub.add_parser("rank-row", parents=[common], help="rank of a generalized row")
    r.add_argument("--alpha", help="coordinates of the generalized row")
    r.set_defaults(func=cmd_rank_row)
    return p


def _emit(args, payload: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 0) is not None and getattr(args, "trials", 0) < 0:
        parser.error("--trials must be non-negative")
    try:
        code, js, text = args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        if args.format == "json":
            _emit(args, dumps({"status": "precondition-failed", "reason": str(exc)}))
        return ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    if args.format == "json":
        _emit(args, dumps(js))
    else:
        _emit(args, text + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))
