"""Command line interface: ``weylgroupoid <command> FILE ...``.

Exit codes: 0 success, 1 validation or property failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .cartan import CartanScheme, SchemeError, validate_scheme
from .checks import run_checks
from .complex import arrangement, coxeter_complex, geometric_faces
from .groupoid import Morphism, WeylGroupoid
from .order import NotComparable, poset
from .roots import check_axioms, generate_roots
from .schemefile import SchemeFileError, parse_scheme_file


class UsageError(Exception):
    pass


class Failure(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


# loading -------------------------------------------------------------------

def load_scheme(path: str) -> CartanScheme:
    raw = parse_scheme_file(path)
    try:
        return CartanScheme.from_raw(raw)
    except SchemeError as e:
        raise Failure(f"not a Cartan scheme: {e}") from None


def load_groupoid(args) -> WeylGroupoid:
    scheme = load_scheme(args.file)
    roots = generate_roots(scheme, args.cap)
    if not roots.finite:
        raise Failure(f"root system is not finite: {roots}")
    return WeylGroupoid(scheme, roots)


def _object(G: WeylGroupoid, a: str) -> str:
    if a not in G.scheme.objects:
        raise UsageError(f"unknown object {a!r} (objects: {', '.join(G.scheme.objects)})")
    return a


def parse_word(G: WeylGroupoid, text: str) -> list[int]:
    """Comma-separated index labels, left to right; '' or 'id' for the empty word."""
    text = text.strip()
    if text in ("", "id"):
        return []
    out = []
    for tok in text.split(","):
        try:
            out.append(G.scheme.index_of(int(tok)))
        except (ValueError, KeyError):
            raise UsageError(f"bad index {tok!r} in word {text!r}") from None
    return out


def _morphism(G: WeylGroupoid, word: str, source: str, target: str) -> Morphism:
    w = G.from_word(parse_word(G, word), _object(G, source))
    if w.target != target:
        raise UsageError(f"word {word!r} from {source} ends at {w.target}, not at {target}")
    return w


def describe(G: WeylGroupoid, w: Morphism) -> dict:
    return {"source": w.source, "target": w.target,
            "word": ",".join(str(G.scheme.labels[i]) for i in G.word(w)),
            "length": w.length, "label": G.label(w)}


# commands -------------------------------------------------------------------

def cmd_validate(args) -> int:
    raw = parse_scheme_file(args.file)
    report = validate_scheme(raw)
    for v in report.violations:
        print(v.describe())
    if not report.ok:
        print("cartan scheme: false")
        return 1
    print("cartan scheme: true")
    scheme = CartanScheme.from_raw(raw)
    roots = generate_roots(scheme, args.cap)
    if not roots.finite:
        print(f"finite root system: false ({roots})")
        return 1
    print("finite root system: true")
    axioms = check_axioms(scheme, roots)
    for ax in ("R1", "R2", "R3", "R4"):
        print(f"{ax}: {'pass' if axioms.passed(ax) else 'fail'}")
    for f in axioms.failures:
        print(f"  {f.axiom} at {f.obj}: {f.detail}")
    for a in scheme.objects:
        print(f"|R^{a}_+| = {roots.count(a)}")
    return 0 if axioms.ok else 1


def cmd_roots(args) -> int:
    scheme = load_scheme(args.file)
    roots = generate_roots(scheme, args.cap)
    if not roots.finite:
        print(f"not finite: {roots}", file=sys.stderr)
        return 1
    if args.object not in scheme.objects:
        raise UsageError(f"unknown object {args.object!r}")
    for v in roots.positive[args.object]:
        print(_dump(list(v)))
    return 0


def cmd_hom(args) -> int:
    G = load_groupoid(args)
    for w in G.hom_to(_object(G, args.target)):
        print(_dump(describe(G, w)))
    return 0


def cmd_poset(args) -> int:
    G = load_groupoid(args)
    P = poset(G, _object(G, args.target))
    labels = [P.label(k) for k in range(len(P))]
    if args.format == "json":
        doc = {"target": P.target,
               "elements": [describe(G, w) for w in P.elements],
               "covers": [{"lower": labels[k], "upper": labels[m], "index": G.scheme.labels[i]}
                          for k, m, i in P.covers]}
        print(json.dumps(doc, indent=2))
    else:
        print(f'digraph "Hom(->{P.target})" {{')
        print("  rankdir=BT;")
        for k, lab in enumerate(labels):
            print(f'  n{k} [label="{lab}"];')
        for k, m, i in P.covers:
            print(f'  n{k} -> n{m} [label="{G.scheme.labels[i]}"];')
        print("}")
    return 0


def cmd_poincare(args) -> int:
    G = load_groupoid(args)
    data = poset(G, _object(G, args.target)).poincare_polynomial()
    print(",".join(map(str, data.coefficients)))
    print(f"unimodal: {'true' if data.unimodal else 'false'}")
    print(f"factorization: {data.factor_string()}")
    return 0


def _pair(G: WeylGroupoid, args) -> tuple[Morphism, Morphism]:
    a = _object(G, args.target)
    return _morphism(G, args.u, args.su, a), _morphism(G, args.v, args.sv, a)


def cmd_meet(args) -> int:
    G = load_groupoid(args)
    u, v = _pair(G, args)
    print(_dump(describe(G, poset(G, args.target).meet(u, v))))
    return 0


def cmd_join(args) -> int:
    G = load_groupoid(args)
    u, v = _pair(G, args)
    print(_dump(describe(G, poset(G, args.target).join(u, v))))
    return 0


def cmd_interval(args) -> int:
    G = load_groupoid(args)
    u, v = _pair(G, args)
    P = poset(G, args.target)
    try:
        report = P.interval_report(u, v, chain_limit=args.chain_limit)
    except NotComparable as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(str(e)) from None
    doc = {"u": P.label(u), "v": P.label(v),
           "classification": str(report.classification),
           "J": sorted(G.scheme.labels[j] for j in report.classification.J),
           "open_interval_size": report.size,
           "chains": report.chains,
           "reduced_euler": report.reduced_euler,
           "reduced_betti": None if report.reduced_betti is None else list(report.reduced_betti),
           "consistent": report.consistent}
    print(json.dumps(doc, indent=2))
    return 0 if report.consistent else 1


def cmd_complex(args) -> int:
    G = load_groupoid(args)
    a = _object(G, args.object)
    if G.rank < 2:
        raise UsageError("the Coxeter complex needs rank >= 2")
    cx = coxeter_complex(G, a)
    K = cx.complex
    names = [f"{G.label(c.rep)}W_{{{','.join(str(G.scheme.labels[j]) for j in c.J)}}}"
             for c in cx.vertices]
    if args.format == "json":
        report = K.pseudomanifold_report()
        doc = {"object": a,
               "vertices": names,
               "f_vector": list(K.f_vector),
               "facets": [{"morphism": G.label(w), "vertices": sorted(f)}
                          for w, f in zip(G.hom_to(a), cx.facets)],
               "euler_characteristic": K.euler_characteristic(),
               "betti_gf2": list(K.betti_gf2()),
               "pure": report.pure,
               "pseudomanifold": report.pseudomanifold,
               "closed": report.closed}
        print(json.dumps(doc, indent=2))
    else:
        print(f'graph "coxeter complex at {a}" {{')
        for k, name in enumerate(names):
            print(f'  v{k} [label="{name}"];')
        edges = sorted(tuple(sorted(f)) for f in K.faces if len(f) == 2)
        for x, y in edges:
            print(f"  v{x} -- v{y};")
        print("}")
    return 0


def cmd_arrangement(args) -> int:
    G = load_groupoid(args)
    a = _object(G, args.object)
    faces = geometric_faces(G, a)
    ar = arrangement(G, a, faces)
    sym = {1: "+", 0: "0", -1: "-"}
    doc = {"object": a,
           "normals": [list(v) for v in ar.normals],
           "chambers": [{"morphism": G.label(ch.coset.rep),
                         "signs": "".join(sym[s] for s in ch.signs),
                         "walls": len(w), "rays": len(r)}
                        for ch, w, r in zip(ar.chambers, ar.walls, ar.rays)],
           "chamber_count": len(ar.chambers),
           "regions_by_formula": ar.regions_by_formula,
           "simplicial": ar.simplicial}
    print(json.dumps(doc, indent=2))
    return 0 if ar.simplicial else 1


def cmd_check(args) -> int:
    scheme = load_scheme(args.file)
    objects = None
    if args.object is not None:
        if args.object not in scheme.objects:
            raise UsageError(f"unknown object {args.object!r}")
        objects = [args.object]
    results = run_checks(scheme, objects)
    failed = [r for r in results if not r.passed]
    summary = {"total": len(results), "passed": len(results) - len(failed), "failed": len(failed)}
    if args.json:
        print(json.dumps({"results": [r.as_dict() for r in results], "summary": summary}, indent=2))
    else:
        for r in results:
            print(r.line())
        print("summary: " + _dump(summary))
    return 1 if failed else 0


# parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylgroupoid",
                                description="Weyl groupoids of Cartan schemes, their weak order and Coxeter complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", metavar="FILE", help="scheme file, or a bundled name such as bruhat")
        sp.add_argument("--cap", type=int, default=None, help="coordinate-sum cap for root generation")
        sp.set_defaults(fn=fn)
        return sp

    def pair(sp):
        sp.add_argument("--target", required=True)
        for w in ("u", "v"):
            sp.add_argument(f"--{w}", required=True, metavar="WORD", help="comma-separated indices, or id")
            sp.add_argument(f"--s{w}", required=True, metavar="OBJ", help=f"source object of {w}")

    command("validate", cmd_validate, "check the axioms and finiteness")
    command("roots", cmd_roots, "positive roots at an object").add_argument("--object", required=True)
    command("hom", cmd_hom, "all morphisms into an object").add_argument("--target", required=True)
    sp = command("poset", cmd_poset, "Hasse diagram of weak order")
    sp.add_argument("--target", required=True)
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    command("poincare", cmd_poincare, "rank generating function").add_argument("--target", required=True)
    pair(command("meet", cmd_meet, "meet in weak order"))
    pair(command("join", cmd_join, "join in weak order"))
    sp = command("interval", cmd_interval, "topology of an open interval")
    pair(sp)
    sp.add_argument("--chain-limit", type=int, default=5000)
    sp = command("complex", cmd_complex, "Coxeter complex at an object")
    sp.add_argument("--object", required=True)
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    command("arrangement", cmd_arrangement, "root hyperplane arrangement").add_argument("--object", required=True)
    sp = command("check", cmd_check, "run the full property suite")
    sp.add_argument("--object", default=None)
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SchemeFileError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Failure as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
