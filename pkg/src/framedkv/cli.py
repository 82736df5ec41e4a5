"""Command-line front end.  Every verb prints one JSON document

    {"ok": bool, "verb": str, "result": ..., "failures": [...], "timing_ms": int}

and exits with status 0 exactly when ok is true.  Errors are reported as
{"ok": false, "verb": ..., "error": {"kind", "message"}} with status 2.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .alphabet import Alphabet
from .catalog import (StrandSet, direct, insert_k, make_tf, strands, tf_alphabet, tower, verify_action_table,
                      verify_split)
from .cyclic import CyclicPair, trace_project
from .errors import InvariantError, KernelError
from .expr import Gen, Op, evaluate, parse_expr
from .framing import expand_reduced_Dg, framing_value, solve_genus1
from .goldman import GtContext
from .kv import (FramingData, automorphism_from_json, check_KRV, check_KV, check_SolKV, j_fr, j_fr_gr)
from .lie import LieElement, bch, bch_tensor
from .presented import GradedBasis, check_degree, presentation_from_json
from .scalars import poly_str
from .series import named_series

DEFAULT_SEED = 20240101


class UsageError(KernelError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _labels(args) -> List[str]:
    if args.labels:
        return [l.strip() for l in args.labels.split(",") if l.strip()]
    return strands(args.strands)


def _names_in(node) -> List[str]:
    if isinstance(node, Gen):
        return [node.name]
    if isinstance(node, Op):
        return [n for a in node.args for n in _names_in(a)]
    return []


def _free_alphabet(nodes) -> Alphabet:
    names: List[str] = []
    for node in nodes:
        for n in _names_in(node):
            if n not in names:
                names.append(n)
    return Alphabet.from_names(sorted(names))


# --- verbs -------------------------------------------------------------------------

def cmd_dims(args):
    check_degree(args.max_degree)
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            pres = presentation_from_json(json.load(fh), args.max_degree)
        alg = GradedBasis(pres, args.max_degree)
        return {"dims": alg.dims(), "generators": pres.alphabet.names}, []
    labels = _labels(args)
    if args.genus is None:
        alg = GradedBasis(make_tf(StrandSet(tuple(labels), None, args.framed)), args.max_degree)
        return {"dims": alg.dims(), "labels": labels, "genus": None, "framed": args.framed}, []
    alg = direct(args.genus, labels, args.max_degree, args.framed)
    result = {"dims": alg.dims(), "labels": labels, "genus": args.genus, "framed": args.framed}
    failures = []
    if args.tower and args.framed and len(labels) >= 2:
        tdims = tower(args.genus, labels, args.max_degree).dims()
        result["dims_tower"] = tdims
        if tdims != result["dims"]:
            failures.append({"relator": "dimensions", "witness": None, "residue": [result["dims"], tdims]})
    return result, failures


def cmd_nf(args):
    check_degree(args.max_degree)
    node = parse_expr(args.expr)
    if args.genus is None and not args.labels and not args.strands:
        alph = _free_alphabet([node])
        lie = LieElement.from_tensor(evaluate(node, alph, args.max_degree))
        return {"lyndon": lie.to_json()}, []
    labels = _labels(args)
    g = args.genus or 0
    alg = tower(g, labels, args.max_degree) if len(labels) >= 2 else direct(g, labels, args.max_degree)
    lie = LieElement.from_tensor(evaluate(node, alg.alphabet, args.max_degree))
    vec = alg.evaluate(lie)
    return {"lyndon": lie.to_json(), "normal_form": alg.vector_json(vec), "labels": labels, "genus": g}, []


def cmd_bch(args):
    check_degree(args.max_degree)
    nodes = [parse_expr(e) for e in args.exprs]
    alph = _free_alphabet(nodes)
    lies = [LieElement.from_tensor(evaluate(n, alph, args.max_degree)) for n in nodes]
    out = bch(lies)
    oracle = LieElement.from_tensor(bch_tensor([l.to_tensor() for l in lies]))
    failures = [] if out == oracle else [{"relator": "bch vs log(exp...exp)", "witness": None,
                                          "residue": (out - oracle).to_json()}]
    return {"bch": out.to_json()}, failures


def cmd_insert(args):
    check_degree(args.max_degree)
    labels = _labels(args)
    s = StrandSet(tuple(labels), args.genus, True)
    lie = LieElement.from_tensor(evaluate(parse_expr(args.expr), tf_alphabet(s), args.max_degree))
    J = [j.strip() for j in args.J.split(",") if j.strip()]
    target, image = insert_k(s, args.k, J, lie)
    return {"target_labels": list(target.labels), "image": image.to_json()}, []


def _report(rep):
    data = rep.to_json()
    failures = data.pop("failures")
    data.pop("ok")
    return data, failures


def cmd_verify_action(args):
    check_degree(args.max_degree)
    return _report(verify_action_table(args.genus, args.punctures, args.max_degree, args.mutate))


def cmd_verify_split(args):
    check_degree(args.max_degree)
    return _report(verify_split(args.genus, args.punctures, args.max_degree, args.mutate))


def _gt(args) -> GtContext:
    check_degree(args.max_degree)
    return GtContext(args.genus, args.punctures, args.max_degree)


def _grouplike(ctx: GtContext, text: str):
    v = evaluate(parse_expr(text), ctx.alphabet, ctx.D)
    if v.is_grouplike():
        return v
    if v.is_primitive():
        return v.exp()
    raise InvariantError("argument must be a Lie element or a group-like element")


def _pairing(ctx: GtContext, name: str) -> Callable:
    if name == "E":
        return ctx.E
    if name == "diamond":
        return ctx.diamond
    if name == "rho":
        return lambda a, b: ctx.rho(ctx.s_omega, a, b)
    raise UsageError(f"unknown pairing {name!r}")


def cmd_goldman(args):
    ctx = _gt(args)
    a, b = _grouplike(ctx, args.exprs[0]), _grouplike(ctx, args.exprs[1])
    pairing = _pairing(ctx, args.pairing)
    ab = ctx.goldman(pairing, a, b)
    ba = ctx.goldman(pairing, b, a)
    failures = [] if not (ab + ba) else [{"relator": "antisymmetry", "witness": None,
                                           "residue": (ab + ba).to_json()}]
    return {"bracket": ab.to_json(), "exact_up_to_weight": ctx.D - 2}, failures


def cmd_turaev(args):
    ctx = _gt(args)
    a = _grouplike(ctx, args.expr)
    delta = CyclicPair.project(ctx.cobracket(a))
    return {"cobracket": delta.to_json(), "exact_up_to_weight": ctx.D - 2}, []


def cmd_fox_eval(args):
    ctx = _gt(args)
    a = evaluate(parse_expr(args.exprs[0]), ctx.alphabet, ctx.D)
    b = evaluate(parse_expr(args.exprs[1]), ctx.alphabet, ctx.D)
    val = _pairing(ctx, args.pairing)(a, b)
    return {"value": val.to_json(), "trace": trace_project(val).to_json(),
            "exact_up_to_weight": ctx.D - 2}, []


def cmd_kv_check(args):
    with open(args.input, encoding="utf-8") as fh:
        data = json.load(fh)
    check_degree(int(data["D"]))

    def parse(text, ctx):
        return evaluate(parse_expr(text), ctx.alphabet, ctx.D)

    G = automorphism_from_json(data, parse)
    ctx = G.ctx
    fr = FramingData.parse(args.framing or "", ctx.g, ctx.n)
    checks = {"KV": check_KV, "KRV": check_KRV, "SolKV": check_SolKV}
    wanted = list(checks) if args.check == "all" else [args.check]
    result: Dict = {"framing": fr.to_json(), "j_fr": j_fr(fr, G).to_json(), "j_fr_gr": j_fr_gr(fr, G).to_json()}
    failures = []
    verdicts = {}
    for name in wanted:
        rep = checks[name](G, fr)
        js = rep.to_json()
        verdicts[name] = js
        for f in js["failures"]:
            failures.append({"relator": name, "witness": f["check"], "residue": f})
    result["checks"] = verdicts
    if args.check == "all":
        # membership in one set is not a failure of the others
        failures = []
        result["members"] = [k for k, v in verdicts.items() if v["ok"]]
    return result, failures


def cmd_framing_eqs(args):
    sysm = expand_reduced_Dg(args.genus, args.handle, args.generator)
    result = sysm.to_json()
    result["framing"] = poly_str(framing_value())
    failures = []
    if sysm.mismatches():
        failures.append({"relator": "reference families", "witness": None,
                         "residue": [str(k) for k in sysm.mismatches()]})
    if sysm.extra:
        failures.append({"relator": "extra equations", "witness": None, "residue": result["extra_equations"]})
    if not sysm.pi_free():
        failures.append({"relator": "pi coefficients", "witness": None, "residue": "present"})
    if args.genus == 1:
        g1 = solve_genus1(args.generator)
        result["genus1_solution"] = g1.to_json()
        if not g1.ok:
            failures.append({"relator": "genus one", "witness": None, "residue": g1.to_json()})
    return result, failures


def cmd_series(args):
    check_degree(args.max_degree)
    s = named_series(args.name, args.max_degree)
    return s.to_json(), []


# --- parser ----------------------------------------------------------------------------

def _add_degree(p, default=None):
    p.add_argument("--max-degree", "-D", type=int, default=default, required=default is None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="framedkv", description="Exact computations in framed Drinfeld-Kohno "
                                                   "algebras and Goldman-Turaev / KV structures.")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--no-timing", action="store_true", help="report timing_ms as 0")
    # the global flags are also accepted after the verb
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)
    sub.required = True
    add = sub.add_parser

    def sub_parser(name):
        return add(name, parents=[common])

    def strand_opts(p, genus_required=False):
        p.add_argument("--genus", "-g", type=int, required=genus_required)
        p.add_argument("--strands", "-n", type=int, default=0)
        p.add_argument("--labels", help="comma-separated strand labels (overrides --strands)")

    p = sub_parser("dims")
    strand_opts(p)
    p.add_argument("--framed", dest="framed", action="store_true", default=True)
    p.add_argument("--unframed", dest="framed", action="store_false")
    p.add_argument("--tower", action="store_true", help="also compute the split-tower dimensions")
    p.add_argument("--input", help="presentation JSON document")
    _add_degree(p)
    p.set_defaults(func=cmd_dims)

    p = sub_parser("nf")
    strand_opts(p)
    p.add_argument("expr")
    _add_degree(p)
    p.set_defaults(func=cmd_nf)

    p = sub_parser("bch")
    p.add_argument("exprs", nargs="+")
    _add_degree(p)
    p.set_defaults(func=cmd_bch)

    p = sub_parser("insert")
    strand_opts(p)
    p.add_argument("--k", required=True)
    p.add_argument("--J", required=True, help="comma-separated new labels")
    p.add_argument("expr")
    _add_degree(p, 4)
    p.set_defaults(func=cmd_insert)

    for verb, func in (("verify-action", cmd_verify_action), ("verify-split", cmd_verify_split)):
        p = sub_parser(verb)
        p.add_argument("--genus", "-g", type=int, required=True)
        p.add_argument("--punctures", "-n", type=int, default=0)
        p.add_argument("--mutate", action="store_true", help="use the altered last relation")
        _add_degree(p, 4 if verb == "verify-action" else 5)
        p.set_defaults(func=func)

    def gt_opts(p):
        p.add_argument("--genus", "-g", type=int, required=True)
        p.add_argument("--punctures", "-n", type=int, default=0)
        _add_degree(p, 6)

    p = sub_parser("goldman")
    gt_opts(p)
    p.add_argument("--pairing", default="E", choices=["E", "diamond", "rho"])
    p.add_argument("exprs", nargs=2)
    p.set_defaults(func=cmd_goldman)

    p = sub_parser("turaev")
    gt_opts(p)
    p.add_argument("expr")
    p.set_defaults(func=cmd_turaev)

    p = sub_parser("fox-eval")
    gt_opts(p)
    p.add_argument("--pairing", default="diamond", choices=["E", "diamond", "rho"])
    p.add_argument("exprs", nargs=2)
    p.set_defaults(func=cmd_fox_eval)

    p = sub_parser("kv-check")
    p.add_argument("--input", required=True)
    p.add_argument("--framing", default="")
    p.add_argument("--check", default="all", choices=["all", "KV", "KRV", "SolKV"])
    p.set_defaults(func=cmd_kv_check)

    p = sub_parser("framing-eqs")
    p.add_argument("--genus", "-g", type=int, required=True)
    p.add_argument("--handle", "-a", type=int, default=1)
    p.add_argument("--generator", default="A", choices=["A", "B"])
    p.set_defaults(func=cmd_framing_eqs)

    p = sub_parser("series")
    p.add_argument("--name", default="s", choices=["s", "r", "exp"])
    _add_degree(p, 6)
    p.set_defaults(func=cmd_series)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> Tuple[dict, int]:
    parser = build_parser()
    verb = None
    no_timing = "--no-timing" in (argv or [])
    t0 = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        verb, no_timing = args.verb, args.no_timing
        random.seed(args.seed)
        result, failures = args.func(args)
        doc = {"ok": not failures, "verb": verb, "result": result, "failures": failures}
    except (KernelError, ValueError, KeyError, OSError) as exc:
        kind = getattr(exc, "kind", type(exc).__name__)
        doc = {"ok": False, "verb": verb, "error": {"kind": kind, "message": str(exc)}}
        doc["timing_ms"] = 0 if no_timing else round((time.perf_counter() - t0) * 1000)
        return doc, 2
    doc["timing_ms"] = 0 if no_timing else round((time.perf_counter() - t0) * 1000)
    return doc, 0 if doc["ok"] else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    doc, status = run(argv if argv is not None else sys.argv[1:])
    sys.stdout.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
