"""Command line entry point.

Exit codes: 0 success, 1 a property fails or a counterexample was found,
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra as alg
from .downsets import FiniteCarrier, IdAlgebra, NotDownDirected, WordCarrier, parse_antichain
from .harness import SuiteConfig, catalog, run_suite
from .laws import check_id_cancel_criterion, check_square_condition
from .nuclei import (
    Nucleus,
    conuclear_image,
    enumerate_conuclei,
    enumerate_nuclei,
    nuclear_image,
    validate_nucleus,
)
from .pogroup import (
    NoPositiveBound,
    NotIntegrallyClosed,
    SigmaComputer,
    check_proof,
    format_signed,
    parse_signed,
    prove_bounded,
)
from .words import (
    BudgetExceeded,
    FreePreimage,
    Variant,
    check_left_cancellativity,
    check_limited_cancellativity,
    format_word,
    parse_word,
)

OK, FAIL, MALFORMED = 0, 1, 2

QUASI_GRAMMAR = """\
quasi-inequality grammar:
  formula := ineq ('&' ineq)* '=>' ineq | ineq
  ineq    := term '<=' term
  term    := prod ('|' prod)*          join
  prod    := atom ('*' atom)*          product
  atom    := var | '1' | 'g(' term ')' | '(' term ')'
"""


class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text: str, **record):
        if self.as_json:
            print(json.dumps(record, sort_keys=True))
        else:
            print(text)


def _load(path):
    return alg.load(path)


def _fp(A, args) -> FreePreimage:
    return FreePreimage(A, Variant(args.variant, args.commutative))


def _nucleus(A, maps, name):
    if name is None:
        if not maps:
            raise alg.MalformedAlgebra("the file declares no nucleus; pass --nucleus or add one")
        name = maps[0][0]
    for nm, mp in maps:
        if nm == name:
            return Nucleus(A, mp, nm)
    raise alg.MalformedAlgebra(f"no nucleus named {name!r}")


# ---------------------------------------------------------------- commands


def cmd_validate(args, out):
    A, maps = _load(args.file)
    rep = alg.validate(A, A.kind)
    bad = list(rep.lines())
    for nm, mp in maps:
        bad += [f"nucleus {nm}: {v}" for v in validate_nucleus(Nucleus(A, mp, nm)).violations]
    if bad:
        for line in bad:
            out.emit(line, violation=line)
        return FAIL
    out.emit(f"OK {A.name} is a valid {A.kind.structure}", ok=True, kind=A.kind.structure)
    return OK


def cmd_props(args, out):
    A, _ = _load(args.file)
    props = {
        "commutative": alg.is_commutative(A),
        "integral": alg.is_integral(A),
        "integrally_closed": alg.is_integrally_closed(A),
        "cancellative": alg.is_cancellative(A),
        "ideally_residuated": alg.is_ideally_residuated(A),
        "residuated": alg.is_residuated(A),
        "sl": A.join is not None,
    }
    if out.as_json:
        out.emit("", name=A.name, **props)
    else:
        for k, v in props.items():
            print(f"{k}: {str(v).lower()}")
    return OK


def cmd_nuclei(args, out):
    A, _ = _load(args.file)
    for g in enumerate_nuclei(A):
        out.emit(alg.dump_nucleus(g.name, g.map).rstrip(), name=g.name, map=list(g.map))
    return OK


def cmd_image(args, out):
    A, maps = _load(args.file)
    g = _nucleus(A, maps, args.nucleus)
    rep = validate_nucleus(g)
    if not rep.ok:
        for line in rep.lines():
            out.emit(line, violation=line)
        return FAIL
    B = nuclear_image(g)
    out.emit(alg.dumps(B).rstrip(), algebra=alg.dumps(B))
    return OK


def cmd_conuclei(args, out):
    A, _ = _load(args.file)
    for s in enumerate_conuclei(A):
        B = conuclear_image(s)
        out.emit(f"{s.name} {list(s.map)} image size {B.n}", name=s.name, map=list(s.map), image_size=B.n)
    return OK


def cmd_word_le(args, out):
    A, _ = _load(args.file)
    fp = _fp(A, args)
    u, v = fp.check(parse_word(args.u)), fp.check(parse_word(args.v))
    res = fp.le(u, v)
    out.emit(str(res).lower(), result=res)
    return OK


def cmd_canon(args, out):
    A, _ = _load(args.file)
    fp = _fp(A, args)
    w = fp.canonical(fp.check(parse_word(args.u)))
    out.emit(format_word(w), word=format_word(w))
    return OK


def cmd_free_cancel(args, out):
    A, _ = _load(args.file)
    fp = _fp(A, args)
    found = False
    if fp.variant.structure != "sgrp":
        wit = check_limited_cancellativity(fp, args.budget)
        if wit:
            found = True
            text = f"limited {wit[0]}: u={format_word(wit[1])} w={format_word(wit[2])}"
            out.emit(text, check="limited", witness=text)
    if fp.variant.structure != "mon":
        wit = check_left_cancellativity(fp, args.budget)
        if wit:
            found = True
            side, a, u, v = wit
            text = f"{side}: a={a} u={format_word(u)} v={format_word(v)}"
            out.emit(text, check="cancellative", witness=text)
    if not found:
        out.emit("OK", ok=True)
    return FAIL if found else OK


def cmd_square(args, out):
    A, _ = _load(args.file)
    comm = True if args.commutative else None
    wit = check_square_condition(A, args.n_max or 3, comm)
    if wit:
        out.emit(str(wit), witness=str(wit))
        return FAIL
    out.emit("OK", ok=True)
    return OK


def cmd_idcancel(args, out):
    A, _ = _load(args.file)
    rep = check_id_cancel_criterion(A, args.n_max)
    text = [
        f"cycle sentences up to n={rep.n_max}: {'hold' if rep.criterion_holds else 'fail'}",
        f"Id cancellative: {str(rep.id_cancellative).lower()}",
    ]
    if rep.cycle_violation:
        text.append(f"cycle witness: {rep.cycle_violation}")
    if rep.id_witness:
        side, a, b, x = rep.id_witness
        fmt = IdAlgebra(FiniteCarrier(A)).fmt
        text.append(f"Id witness ({side}): a={fmt(a)} b={fmt(b)} x={fmt(x)}")
    out.emit("\n".join(text), criterion_holds=rep.criterion_holds, id_cancellative=rep.id_cancellative, agree=rep.agree)
    return OK if rep.agree else FAIL


def _idl(A, args, literal_x, literal_y):
    xs, ys = parse_antichain(literal_x), parse_antichain(literal_y)
    if all(isinstance(v, int) for v in xs + ys):
        idl = IdAlgebra(FiniteCarrier(A))
    else:
        xs = [v if isinstance(v, tuple) else (v,) for v in xs]
        ys = [v if isinstance(v, tuple) else (v,) for v in ys]
        idl = IdAlgebra(WordCarrier(A, args.budget, args.commutative))
    return idl, idl.normalize(xs), idl.normalize(ys)


def cmd_meet(args, out):
    A, _ = _load(args.file)
    idl, X, Y = _idl(A, args, args.x, args.y)
    Z = idl.meet(X, Y)
    out.emit(idl.fmt(Z), result=idl.fmt(Z))
    return OK


def cmd_residual(args, out):
    A, _ = _load(args.file)
    idl, X, Y = _idl(A, args, args.x, args.y)
    Z = idl.residual(X, Y, args.side)
    out.emit(idl.fmt(Z), result=idl.fmt(Z))
    return OK


def cmd_sigma(args, out):
    A, _ = _load(args.file)
    ws = SigmaComputer(A)(parse_signed(args.alpha))
    text = "{" + ",".join(format_word(w) for w in ws) + "}"
    out.emit(text, result=[format_word(w) for w in ws])
    return OK


def cmd_prove(args, out):
    A, _ = _load(args.file)
    alpha, beta = parse_signed(args.alpha), parse_signed(args.beta)
    res = prove_bounded(A, alpha, beta, args.depth or 6, args.budget if args.budget_given else None)
    if not res.proved:
        out.emit(f"unknown-at-depth {args.depth or 6}", status=res.status)
        return FAIL
    p = res.proof
    if not check_proof(FreePreimage(A, Variant("umon")), p):
        out.emit("internal error: emitted proof does not check", status="invalid")
        return FAIL
    out.emit(
        "\n".join(p.lines()) + f"\n{'normal' if res.normal else 'not normal'}",
        status=res.status,
        normal=res.normal,
        steps=[{"rule": s.rule, "at": [s.start, s.end], "side": s.side_condition()} for s in p.steps],
        end=format_signed(p.end),
    )
    return OK


def cmd_catalog(args, out):
    kind = alg.AlgebraKind(args.kind, args.commutative)
    cat = catalog(args.n_max or 3, kind)
    for A in cat:
        if out.as_json:
            out.emit("", name=A.name, n=A.n, algebra=alg.dumps(A))
        else:
            print(alg.dumps(A))
    return OK


def cmd_verify(args, out):
    cfg = SuiteConfig(n_max=args.n_max or 3, L=args.budget, depth=args.depth or 6, seed=args.seed)
    only = [int(x) for x in args.only.split(",")] if args.only else None
    reports = run_suite(cfg, only)
    for r in reports:
        out.emit(r.line(), **r.record())
    return OK if all(r.ok for r in reports) else FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", choices=["mon", "umon", "sgrp"], default="mon")
    common.add_argument("--commutative", action="store_true")
    common.add_argument("--budget", type=int, default=None, help="word length budget L (default 4)")
    common.add_argument("--depth", type=int, default=None, help="proof search depth (default 6)")
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--json", action="store_true", help="one JSON record per line")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(
        prog="artifact",
        description="Free nuclear preimages of finite ordered monoids.",
        epilog=QUASI_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check the axioms of an algebra file", "file")
    add("props", cmd_props, "structural predicates", "file")
    add("nuclei", cmd_nuclei, "enumerate all nuclei", "file")
    add("image", cmd_image, "nuclear image of a nucleus in the file", "file").add_argument("--nucleus")
    add("conuclei", cmd_conuclei, "enumerate conuclei and their images", "file")
    add("word-le", cmd_word_le, "decide u <= v in the free preimage", "file", "u", "v")
    add("canon", cmd_canon, "shortest equivalent word", "file", "u")
    add("free-cancel", cmd_free_cancel, "search cancellativity witnesses among words", "file")
    add("square", cmd_square, "check the square condition", "file")
    add("idcancel", cmd_idcancel, "cycle criterion against cancellativity of Id", "file")
    add("meet", cmd_meet, "meet of two antichains", "file", "x", "y")
    add("residual", cmd_residual, "residual of two antichains", "file", "x", "y").add_argument(
        "--side", choices=["left", "right"], default="left"
    )
    add("sigma", cmd_sigma, "maximal positive words below a signed word", "file", "alpha")
    add("prove", cmd_prove, "bounded proof search for alpha <= beta", "file", "alpha", "beta")
    add("catalog", cmd_catalog, "enumerate small algebras").add_argument(
        "--kind", choices=["pomonoid", "slmonoid", "posemigroup"], default="pomonoid"
    )
    add("verify", cmd_verify, "run the verification suite").add_argument(
        "--only", help="comma separated criterion numbers"
    )
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.budget_given = args.budget is not None
    if args.budget is None:
        args.budget = 4
    out = Out(args.json)
    try:
        return args.fn(args, out)
    except (BudgetExceeded, NotDownDirected, NotIntegrallyClosed, NoPositiveBound, alg.NotIdeallyResiduated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    except (alg.MalformedAlgebra, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
