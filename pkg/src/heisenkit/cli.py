"""Command-line front end.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or parse
error, 3 an internal limit was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import fixtures as fixture_mod
from .engine import LimitExceeded, QGHA, nmul, normal_form, one_dim_rep_constraints, rep_variables
from .families import classify
from .freealg import parse_element
from .homology import NotGraded, NotQuadratic, hilbert_dims, koszul_numeric_check
from .morphisms import GenMap, algebra_from_dict, verify_hom, verify_inverse_pair
from .parsing import ParseError
from .potentials import cyclic_derivative, match_jacobian
from .skewpbw import SkewPBWClaim, check_graded_extension, recheck_certificate, verify

DEFAULT_MAXDEG = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(value: str) -> dict:
    text = value.strip()
    if not text.startswith("{"):
        path = Path(value)
        if not path.exists():
            raise UsageError(f"no such file: {value}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None


def _algebra(value: str) -> QGHA:
    try:
        return algebra_from_dict(_load_json(value))
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise UsageError(f"bad algebra spec: {exc}") from None


def _element(A: QGHA, text: str, maxdeg: int):
    e = parse_element(text, A.names, sorted(A.parameters))
    if e.degree() > maxdeg:
        raise LimitExceeded(f"expression degree {e.degree()} exceeds --maxdeg {maxdeg}")
    return e


def _weights(text: str | None, A: QGHA | None = None):
    """``w_x,w_y,w_t`` or ``name=w,...``."""
    if text is None:
        return None
    try:
        if "=" in text:
            return {k.strip(): int(v) for k, v in (part.split("=") for part in text.split(","))}
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"bad weights {text!r}") from None
    if len(parts) != 3 or min(parts) < 1:
        raise UsageError("weights need three positive integers w_x,w_y,w_t")
    return tuple(parts)


def _weights_by_name(w, A: QGHA) -> dict:
    if w is None:
        return {n: 1 for n in A.names}
    if isinstance(w, dict):
        return w
    t, x, y = A.names
    return {x: w[0], y: w[1], t: w[2]}


# verbs -------------------------------------------------------------------------------


def cmd_normalize(a):
    A = _algebra(a.algebra)
    nf = normal_form(_element(A, a.expr, a.maxdeg), A)
    return 0, {"normal_form": str(nf)}, str(nf)


def cmd_multiply(a):
    A = _algebra(a.algebra)
    left = normal_form(_element(A, a.left, a.maxdeg), A)
    right = normal_form(_element(A, a.right, a.maxdeg), A)
    prod = nmul(left, right)
    return 0, {"product": str(prod)}, str(prod)


def cmd_classify(a):
    rep = classify(_algebra(a.algebra), a.max_weight)
    return 0, rep.to_dict(), None


def _claim(a, A):
    vars_ = tuple(v.strip() for v in a.vars.split(",")) if a.vars else None
    try:
        return SkewPBWClaim(A, a.ring, vars_)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify_skewpbw(a):
    A = _algebra(a.algebra)
    claim = _claim(a, A)
    cert = verify(claim, a.maxdeg)
    out = cert.to_dict()
    out["rechecked"] = recheck_certificate(cert, claim) if cert.holds else None
    return (0 if cert.holds else 1), out, f"holds: {cert.holds}"


def cmd_graded_check(a):
    A = _algebra(a.algebra)
    rep = check_graded_extension(_claim(a, A), _weights_by_name(_weights(a.weights), A), a.maxdeg)
    return (0 if rep.graded else 1), rep.to_dict(), f"graded: {rep.graded}"


def cmd_hilbert(a):
    A = _algebra(a.algebra)
    dims = hilbert_dims(A, _weights(a.weights), a.max)
    return 0, {"hilbert_dims": dims}, ",".join(map(str, dims))


def cmd_koszul_check(a):
    A = _algebra(a.algebra)
    rep = koszul_numeric_check(A, a.max, trials=a.trials, rng=random.Random(a.seed))
    return (0 if rep.verdict == "consistent" else 1), rep.to_dict(), f"{rep.verdict} with Koszul"


def cmd_potential_derive(a):
    params = [p.strip() for p in a.params.split(",")] if a.params else None
    gens = tuple(g.strip() for g in a.gens.split(","))
    phi = parse_element(a.expr, gens, params)
    if a.wrt not in gens:
        raise UsageError(f"--wrt must be one of {gens}")
    d = cyclic_derivative(phi, a.wrt)
    return 0, {"derivative": str(d), "wrt": a.wrt}, str(d)


def cmd_jacobian_match(a):
    rep = match_jacobian(_algebra(a.algebra))
    return (0 if rep.verdict != "no_witness" else 1), rep.to_dict(), rep.verdict


def cmd_verify_hom(a):
    data = _load_json(a.map)
    try:
        m = GenMap.from_dict(data)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise UsageError(f"bad map spec: {exc}") from None
    check = verify_hom(m)
    out = {"map": m.to_dict(), "hom": check.to_dict()}
    ok = check.valid
    if a.inverse:
        inv = GenMap.from_dict(_load_json(a.inverse))
        inv_check = verify_hom(inv)
        pair = inv_check.valid and ok and verify_inverse_pair(m, inv)
        out["inverse_hom"] = inv_check.to_dict()
        out["inverse_pair"] = pair
        ok = ok and pair
    return (0 if ok else 1), out, f"valid: {ok}"


def cmd_one_dim_reps(a):
    A = _algebra(a.algebra)
    cons = one_dim_rep_constraints(A)
    return 0, {"variables": rep_variables(A.names), "constraints": [str(c) for c in cons]}, \
        "\n".join(f"{c} = 0" for c in cons)


def cmd_fixtures(a):
    if a.name in (None, "all"):
        res = fixture_mod.run_all(a.seed)
        text = "\n".join(f"{r['id']:<10} {'pass' if r['passed'] else 'FAIL'}" for r in res["summary"])
    else:
        try:
            res = fixture_mod.run_fixture(a.name, a.seed)
        except fixture_mod.UnknownFixture:
            raise UsageError(f"unknown fixture {a.name!r}; known: {', '.join(fixture_mod.FIXTURES)}") from None
        text = "\n".join(f"{'pass' if c['passed'] else 'FAIL'}  {c['name']}" for c in res["checks"])
    return (0 if res["passed"] else 1), res, text


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heisenkit", description="Normal forms and structure checks for quantum generalized Heisenberg algebras.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--maxdeg", type=int, default=DEFAULT_MAXDEG)
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    s = verb("normalize", cmd_normalize, "PBW normal form of an expression")
    s.add_argument("--algebra", required=True)
    s.add_argument("--expr", required=True)
    s = verb("multiply", cmd_multiply, "product of two elements")
    s.add_argument("--algebra", required=True)
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s = verb("classify", cmd_classify, "decidable structural predicates")
    s.add_argument("--algebra", required=True)
    s.add_argument("--max-weight", type=int, default=3)
    for name, fn in (("verify-skewpbw", cmd_verify_skewpbw), ("graded-check", cmd_graded_check)):
        s = verb(name, fn, "skew PBW extension checks")
        s.add_argument("--algebra", required=True)
        s.add_argument("--ring", choices=("K", "K[t]", "R_xt"), default="K[t]")
        s.add_argument("--vars")
        if name == "graded-check":
            s.add_argument("--weights")
    s = verb("hilbert", cmd_hilbert, "Hilbert function by PBW enumeration")
    s.add_argument("--algebra", required=True)
    s.add_argument("--weights")
    s.add_argument("--max", type=int, default=6)
    s = verb("koszul-check", cmd_koszul_check, "numerical Koszul identity")
    s.add_argument("--algebra", required=True)
    s.add_argument("--max", type=int, default=6)
    s.add_argument("--trials", type=int, default=3)
    s = verb("potential-derive", cmd_potential_derive, "cyclic derivative of a potential")
    s.add_argument("--expr", required=True)
    s.add_argument("--wrt", required=True)
    s.add_argument("--gens", default="t,x,y")
    s.add_argument("--params")
    s = verb("jacobian-match", cmd_jacobian_match, "potential witness for the relations")
    s.add_argument("--algebra", required=True)
    s = verb("verify-hom", cmd_verify_hom, "check a map given on generators")
    s.add_argument("--map", required=True)
    s.add_argument("--inverse")
    s = verb("one-dim-reps", cmd_one_dim_reps, "constraints of one-dimensional representations")
    s.add_argument("--algebra", required=True)
    s = verb("fixtures", cmd_fixtures, "run structural fixtures")
    s.add_argument("name", nargs="?", default="all")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        env_seed = os.environ.get("HEISENKIT_SEED")
        if env_seed is not None:
            try:
                args.seed = int(env_seed)
            except ValueError:
                raise UsageError(f"HEISENKIT_SEED must be an integer, got {env_seed!r}") from None
        code, report, text = args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except (NotGraded, NotQuadratic) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=err)
        return 3
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2, default=str), file=out)
    elif text is not None:
        print(text, file=out)
    else:
        for key in sorted(report):
            print(f"{key}: {json.dumps(report[key], sort_keys=True, default=str)}", file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
