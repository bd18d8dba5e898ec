"""Command-line entry point.

Every command builds one JSON-able payload; ``--json`` prints it as JSON and
the default text mode prints the same payload as indented ``key: value``
lines. Exit codes: 0 when the checks pass (or the requested witness is
found), 1 on a violation, 2 on parse, capacity or usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as cons
from . import corpus, dual, residuation
from .lattice import FinLattice, FinPoset
from .report import CheckReport, ResiduumError, override_limits
from .textio import parse_file, product_lines, serialize


def _labelled(alg, witness):
    if witness is None:
        return None
    return [alg.label(w) if isinstance(w, int) and not isinstance(w, bool) else w for w in witness]


def _check(alg, rep: CheckReport) -> dict:
    out = {"ok": rep.ok}
    if rep.witness is not None:
        out["witness"] = _labelled(alg, rep.witness)
    if rep.detail:
        out["detail"] = rep.detail
    return out


def _verdict(alg, v: dual.FunctionalityVerdict) -> dict:
    out = {"functional": v.functional, "total": v.total, "zero_divisor_free": v.zero_divisor_free}
    for flag, (y, z, p) in v.witnesses.items():
        out[f"{flag}_witness"] = f"{alg.label(y)} . {alg.label(z)} = {alg.label(p)}"
    return out


def _algebra(path):
    return parse_file(path, "resalg")


def cmd_verify(args):
    alg = _algebra(args.file)
    rep = residuation.verify_axioms(alg)
    payload = {"size": alg.size, "verify_axioms": _check(alg, rep), "distributive": rep.info["distributive"]}
    if "warning" in rep.info:
        payload["warning"] = rep.info["warning"]
    return payload, 0 if rep.ok else 1


def cmd_dual(args):
    alg = _algebra(args.file)
    d = dual.build_dual(alg)
    if args.json:
        o = {x: i for i, x in enumerate(d.points)}
        payload = {"points": [{"ordinal": i, "carrier": x, "label": alg.label(x)} for i, x in enumerate(d.points)],
                   "ge": sorted([o[x], o[y]] for x, y in d.ge),
                   "rel": sorted([o[x], o[y], o[z]] for x, y, z in d.rel)}
        return payload, 0
    return serialize(d), 0


def cmd_functionality(args):
    alg = _algebra(args.file)
    v = dual.functionality(alg)
    return _verdict(alg, v), 0 if v.functional else 1


def cmd_prop316(args):
    alg = _algebra(args.file)
    rep = dual.check_prop_316_equivalence(alg)
    info = rep.info
    payload = {"functional": info["functional"], "condition_2": info["condition_2"],
               "condition_3": info["condition_3"], "agree": rep.ok}
    if info["condition_2_witness"]:
        payload["condition_2_witness (a,b,c,x)"] = _labelled(alg, info["condition_2_witness"])
    if info["condition_3_witness"]:
        payload["condition_3_witness (x,o1,o2)"] = _labelled(alg, info["condition_3_witness"])
    return payload, 0 if rep.ok else 1


def cmd_inequality(args):
    alg = _algebra(args.file)
    reps = [residuation.check_left_inequality(alg), residuation.check_converse_inequality(alg),
            residuation.check_mirror_inequality(alg)]
    payload = {r.name: _check(alg, r) for r in reps}
    return payload, 0 if all(r.ok for r in reps) else 1


def _emit_algebra(alg):
    return serialize(alg) + "\n".join(product_lines(alg)) + "\n"


def cmd_complex(args):
    m = parse_file(args.file, "magma")
    alg = cons.complex_algebra(m)
    if args.json:
        return {"size": alg.size, "unit": alg.unit, "resalg": serialize(alg)}, 0
    return _emit_algebra(alg), 0


def cmd_heyting(args):
    obj = parse_file(args.file)
    if isinstance(obj, FinPoset):
        alg = cons.heyting_from_poset(obj)
    elif isinstance(obj, FinLattice):
        alg = cons.heyting_from_dl(obj)
    else:
        raise ResiduumError(f"{args.file}: expected a poset or lattice file")
    if args.json:
        return {"size": alg.size, "resalg": serialize(alg)}, 0
    return _emit_algebra(alg), 0


def cmd_subalgebras(args):
    alg = _algebra(args.file)
    sig = cons.Signature.parse(args.sig)
    subs = cons.enumerate_subalgebras(alg, sig)
    rows = []
    for s in subs:
        row = {"universe": "{" + ", ".join(alg.label(i) for i in s.embedding) + "}", "size": len(s.embedding)}
        if s.algebra.lat.distributive.ok:
            row["functional"] = dual.functionality(s.algebra).functional
        rows.append(row)
    return {"signature": sig.value, "count": len(subs), "subalgebras": rows}, 0


def cmd_falsify(args):
    alg = _algebra(args.file)
    sig = cons.Signature.parse(args.sig)
    w = corpus.find_non_universality_witness(alg, sig)
    if w is None:
        return {"signature": sig.value, "witness": None}, 1
    sub = w.sub_verdict
    payload = {"signature": sig.value,
               "parent_functional": w.parent_verdict.functional,
               "subuniverse": "{" + ", ".join(alg.label(i) for i in w.subuniverse) + "}",
               "sub_functional": sub.functional}
    y, z, p = sub.witnesses["functional"]
    lab = cons.restrict(alg, w.subuniverse, sig).algebra.label
    payload["sub_witness"] = f"{lab(y)} . {lab(z)} = {lab(p)}"
    return payload, 0


def cmd_sweep(args):
    spec = corpus.CorpusSpec.from_json(Path(args.file).read_text())
    rep = corpus.run_property_sweep(spec)
    payload = {"generator": rep.info["generator"], "seed": spec.seed, "items": rep.info["items"],
               "checks": rep.info["checks"], "failures": [r.as_dict() for r in rep.info["failures"]]}
    if args.json or args.records:
        payload["records"] = [r.as_dict() for r in rep.info["records"]]
    return payload, 0 if rep.ok else 1


def demo_z3() -> tuple[dict, bool]:
    """The Z3 complex algebra and its four-element subalgebra, end to end."""
    alg = cons.complex_algebra(cons.cyclic_group(3), "Z3")
    ax = residuation.verify_axioms(alg)
    v = dual.functionality(alg)
    pair = alg.index("{1,2}")
    target = (alg.index("{}"), alg.index("{0}"), pair, alg.index("{0,1,2}"))
    subs = {sig: cons.subalgebra_closure(alg, [pair], sig) for sig in cons.Signature}
    p = int(alg.prod[pair, pair])
    sub = subs[cons.Signature.RESIDUATION].algebra
    sv = dual.functionality(sub)
    found = {sig: corpus.find_non_universality_witness(alg, sig) for sig in cons.Signature}
    payload = {
        "algebra": f"complex algebra of Z3 ({alg.size} elements)",
        "verify_axioms": ax.ok,
        "functional": v.functional,
        "total": v.total,
        "product {1,2}.{1,2}": alg.label(p),
        "product join-irreducible": p in alg.lat.join_irreducibles,
    }
    for sig, s in subs.items():
        payload[f"closure of {{{{1,2}}}} ({sig.value})"] = "{" + ", ".join(alg.label(i) for i in s.embedding) + "}"
    payload["subalgebra dual"] = _verdict(sub, sv)
    for sig, w in found.items():
        payload[f"non-universality witness ({sig.value})"] = (
            None if w is None else "{" + ", ".join(alg.label(i) for i in w.subuniverse) + "}")
    ok = (alg.size == 8 and ax.ok and v.functional and v.total
          and all(s.embedding == target for s in subs.values())
          and p == alg.lat.top and not payload["product join-irreducible"]
          and not sv.functional and sv.witnesses["functional"][:2] == (2, 2)
          and all(w is not None for w in found.values()))
    payload["ok"] = ok
    return payload, ok


def cmd_demo(args):
    payload, ok = demo_z3()
    return payload, 0 if ok else 1


def _text(payload, indent=0) -> list[str]:
    pad = "  " * indent
    out = []
    for k, v in payload.items():
        if isinstance(v, dict):
            out.append(f"{pad}{k}:")
            out += _text(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            out.append(f"{pad}{k}:")
            for row in v:
                out.append(f"{pad}  - " + ", ".join(f"{a}={_fmt(b)}" for a, b in row.items()))
        else:
            out.append(f"{pad}{k}: {_fmt(v)}")
    return out


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


COMMANDS = {
    "verify": (cmd_verify, "check the residuation axioms of an algebra file"),
    "dual": (cmd_dual, "export the dual structure of an algebra file"),
    "functionality": (cmd_functionality, "decide functionality and totality of the dual"),
    "prop316": (cmd_prop316, "functionality, condition 2 and condition 3 side by side"),
    "inequality": (cmd_inequality, "the distribution inequality, its converse and mirror"),
    "complex": (cmd_complex, "complex algebra of a magma file"),
    "heyting": (cmd_heyting, "Heyting algebra of a lattice or poset file"),
    "subalgebras": (cmd_subalgebras, "enumerate subalgebras"),
    "falsify": (cmd_falsify, "find a subalgebra whose dual is not functional"),
    "sweep": (cmd_sweep, "run the theorem checks over a corpus spec (JSON)"),
    "demo-z3": (cmd_demo, "reproduce the Z3 counterexample"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-carrier", type=int, help="cap for exhaustive triple scans (default 512)")
    common.add_argument("--max-enum", type=int, help="cap for subalgebra enumeration (default 16)")
    common.add_argument("--max-magma", type=int, help="cap on magma size for complex algebras (default 9)")
    common.add_argument("--max-poset", type=int, help="cap on poset size for downset lattices (default 16)")
    parser = argparse.ArgumentParser(prog="residuum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, parents=[common])
        if name != "demo-z3":
            p.add_argument("file")
        if name in ("subalgebras", "falsify"):
            p.add_argument("--sig", default="residuation", help="residuation or rl")
        if name == "sweep":
            p.add_argument("--records", action="store_true", help="list every record, not only failures")
        p.set_defaults(func=func)
    return parser


def run(argv=None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    caps = {k: getattr(args, k) for k in ("max_carrier", "max_enum", "max_magma", "max_poset")
            if getattr(args, k) is not None}
    with override_limits(**caps):
        payload, code = args.func(args)
    if isinstance(payload, str):
        return payload, code
    if args.json:
        return json.dumps({"command": args.command, **payload}, indent=2) + "\n", code
    return "\n".join([f"command: {args.command}", *_text(payload)]) + "\n", code


def main(argv=None) -> int:
    try:
        out, code = run(argv)
    except (ResiduumError, ValueError, OSError) as exc:
        print(f"residuum: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
