"""Command-line surface: parse inputs, run checks, emit deterministic reports.

Exit codes: 0 = everything passed, 1 = some check came back false or a
search came back empty, 2 = input or hypothesis error.
"""

import argparse
import json
import random
import sys
import time

from . import algebra as alg
from . import cocycles as coc
from . import dynamics as dyn
from . import weyl as weylmod
from .errors import GrweylError, GraphFormatError, PreconditionError
from .exprparse import parse_expression, parse_labeling
from .graphs import (check_condition_L, check_no_sinks, check_no_sources,
                     check_pair_sync, check_topological_transitivity, parse_graph,
                     tilde_classes)
from .groups import symmetric_group
from .pathspace import flip_obstruction_search
from .scalars import RootOfUnity


ROSE2 = "vertices: v\nedge a v v\nedge b v v\n"


def _load_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _load_labeling(graph, path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_labeling(graph, fh.read())


class Report:
    def __init__(self, command, seed=None):
        self.data = {"schema": 1, "command": command, "results": []}
        if seed is not None:
            self.data["seed"] = seed
        self.failed = False

    def add(self, name, ok, **details):
        entry = {"check": name, "ok": bool(ok)}
        entry.update(details)
        self.data["results"].append(entry)
        if not ok:
            self.failed = True

    def note(self, name, **details):
        entry = {"note": name}
        entry.update(details)
        self.data["results"].append(entry)

    def emit(self, as_json):
        if as_json:
            print(json.dumps(self.data, indent=2, default=str))
            return
        for entry in self.data["results"]:
            if "note" in entry:
                extra = {k: v for k, v in entry.items() if k != "note"}
                print(f"note  {entry['note']}" + (f"  {extra}" if extra else ""))
                continue
            mark = "ok " if entry["ok"] else "FAIL"
            extra = {k: v for k, v in entry.items() if k not in ("check", "ok")}
            print(f"{mark}  {entry['check']}" + (f"  {extra}" if extra else ""))

    def exit_code(self):
        return 1 if self.failed else 0


def cmd_graph_check(args):
    g = _load_graph(args.graph)
    rep = Report("graph check")
    ok, sinks = check_no_sinks(g)
    rep.add("no-sinks", ok, witness=sinks)
    ok2, sources = check_no_sources(g)
    rep.add("no-sources", ok2, witness=sources)
    ok3, cyc = check_condition_L(g)
    rep.add("condition-L", ok3, witness=None if cyc is None else cyc.text())
    ok4, pair = check_pair_sync(g)
    rep.add("pair-sync", ok4, witness=pair)
    if ok:
        rep.add("topological-transitivity", check_topological_transitivity(g))
    classes, proj = tilde_classes(g)
    rep.note("tilde-classes", classes=[list(c) for c in classes],
             central_candidate=None if proj is None else proj.text())
    return rep


def cmd_algebra_eval(args):
    g = _load_graph(args.graph)
    with open(args.expr, "r", encoding="utf-8") as fh:
        text = fh.read()
    value = parse_expression(g, text)
    rep = Report("algebra eval")
    rep.note("normal-form", text=value.text(), terms=value.to_json())
    return rep


def cmd_algebra_verify_relations(args):
    g = _load_graph(args.graph)
    rep = Report("algebra verify-relations")
    t0 = time.time()
    rep.add("cuntz-krieger-relations", alg.check_cuntz_relations(g),
            seconds=round(time.time() - t0, 3))
    return rep


def cmd_algebra_oracle_test(args):
    rng = random.Random(args.seed)
    rep = Report("algebra oracle-test", seed=args.seed)
    graphs = [alg.random_graph(rng) for _ in range(args.graphs)]
    per_graph = max(1, args.count // len(graphs))
    total = 0
    t0 = time.time()
    for gi, g in enumerate(graphs):
        for _ in range(per_graph):
            a = alg.random_element(g, rng)
            b = alg.random_element(g, rng)
            gam = alg.random_groupoid_element(g, rng)
            lhs = alg.evaluate(alg.multiply(a, b), gam)
            rhs = alg.convolve_pointwise_oracle(a, b, gam)
            if lhs != rhs:
                rep.add("oracle-equivalence", False, graph=gi,
                        a=a.text(), b=b.text())
                return rep
            total += 1
    rep.add("oracle-equivalence", True, triples=total,
            graphs=len(graphs), seconds=round(time.time() - t0, 3))
    return rep


def cmd_watatani(args):
    g = _load_graph(args.graph)
    labeling = _load_labeling(g, args.labels)
    rng = random.Random(args.seed)
    rep = Report("watatani", seed=args.seed)
    if labeling.is_integer_valued():
        raise PreconditionError("the index computation needs a finite group",
                                hypothesis="finite-group")
    rep.add("kernel-minimality-sufficient",
            coc.kernel_minimality_sufficient(g, labeling))
    qb = alg.quasi_basis(g, labeling, max_depth=args.max_depth)
    listing = [{"u": u.text(), "v": v.text()} for u, v in qb]
    index = alg.watatani_index(qb, labeling, samples=args.samples, rng=rng)
    order = labeling.group.order()
    expected = alg.AlgebraElement.unit(g).scale(order)
    rep.add("index-equals-group-order", index == expected,
            index=index.text(), group_order=order)
    rep.note("quasi-basis", pairs=listing,
             identity_samples=args.samples)
    if labeling.group.name.startswith("S"):
        rep.note("index-convention",
                 text=("the index of the kernel expectation equals the full group "
                       f"order |Gamma| = {order}; for the symmetric group on k letters "
                       "that is k!, not (k-1)! - a common off-by-one slip"))
    return rep


def _character_cocycles(g, labeling):
    ab, q = labeling.group.abelianization()
    chars = ab.characters()
    return ab, q, chars


def cmd_cocycle_factor(args):
    g = _load_graph(args.graph)
    labeling = _load_labeling(g, args.labels)
    rng = random.Random(args.seed)
    rep = Report("cocycle factor", seed=args.seed)
    ab, q, chars = _character_cocycles(g, labeling)
    rep.note("abelianization", order=ab.order(),
             characters=len(chars))
    if args.cocycle == "all":
        indices = list(range(len(chars)))
    elif args.cocycle == "trivial":
        indices = [0]
    elif args.cocycle.startswith("char:"):
        indices = [int(args.cocycle.split(":", 1)[1])]
    else:
        raise GraphFormatError(f"unknown cocycle spec {args.cocycle!r}; "
                               "use 'trivial', 'char:<k>' or 'all'")
    for idx in indices:
        c = coc.labeled_with_character(labeling, ab, q, chars[idx])
        ab2, q2, table = coc.factor_through_abelianization(c, labeling, rng=rng)
        back = coc.match_character(ab2, table)
        rep.add(f"round-trip-char-{idx}", back == idx, factored_to=back)
    return rep


def cmd_cocycle_transitivity(args):
    g = _load_graph(args.graph)
    labeling = _load_labeling(g, args.labels)
    rep = Report("cocycle transitivity")
    ok, pair = coc.kernel_transitivity(g, labeling)
    rep.add("kernel-transitivity", ok,
            witness=None if pair is None else [pair[0].text(), pair[1].text()])
    if not labeling.is_integer_valued():
        rep.add("kernel-minimality-sufficient",
                coc.kernel_minimality_sufficient(g, labeling))
        img = coc.image_subgroup(g, labeling)
        rep.add("cocycle-surjective", len(img) == labeling.group.order(),
                image_order=len(img))
    else:
        d = coc.image_subgroup(g, labeling)
        rep.add("cocycle-surjective", d == 1,
                image="full" if d == 1 else f"{d}Z")
    return rep


def cmd_conjugacy_search(args):
    g1 = _load_graph(args.graph1)
    g2 = _load_graph(args.graph2)
    rep = Report("conjugacy search")
    result = dyn.eventual_conjugacy_search(g1, g2, args.w, args.m,
                                           allow_flip=args.flip)
    for p in result.prunes:
        rep.note("prune", **p)
    if result.hit is None:
        rep.add("conjugacy-found", False, bounds={"w": args.w, "m": args.m},
                meaning="no conjugacy within bounds; not a proof of non-conjugacy")
    else:
        h, sign = result.hit
        ok = dyn.replay_certificate(g1, g2, result.certificate)
        rep.add("conjugacy-found", True, sign=sign, m=h.m)
        rep.add("certificate-replay", ok)
        rep.note("certificate", **result.certificate)
    return rep


def cmd_flip_check(args):
    g = _load_graph(args.graph)
    rep = Report("flip check")
    u = flip_obstruction_search(g, args.L)
    if u is None:
        rep.add("obstruction-found", False, L=args.L)
        return rep
    image = u.shift_image()
    rep.add("obstruction-found", True,
            cylinders=[p.text() for p in u.paths])
    rep.add("image-covers-space", image.covers_all())
    rep.add("shift-injective-on-U", u.shift_injective())
    rep.add("U-is-proper", u.is_proper())
    return rep


def cmd_weyl_enumerate(args):
    g = _load_graph(args.graph)
    rep = Report("weyl enumerate")
    autos, table, transcript = weylmod.enumerate_restricted_weyl(g, args.w, args.m)
    for name, ok, witness in transcript:
        rep.add(f"hypothesis-{name}", ok, witness=witness)
    rep.note("automorphisms", count=len(autos),
             presentations=[h.to_json() for h in autos])
    rep.note("composition-table",
             table={f"{i},{j}": table[(i, j)] for (i, j) in sorted(table)})
    return rep


def cmd_weyl_semidirect(args):
    if args.graph is None:
        g = parse_graph(ROSE2)
    else:
        g = _load_graph(args.graph)
    rng = random.Random(args.seed)
    rep = Report("weyl semidirect-test", seed=args.seed)
    autos = dyn.enumerate_eventual_automorphisms(g, 1, 1)
    from .groups import cyclic_group
    lab8 = coc.EdgeLabeling.length_mod(g, 8)
    chars = cyclic_group(8).characters()

    def random_cocycle():
        if rng.random() < 0.5:
            table = {}
            for w in g.paths_of_length(2):
                table[w] = RootOfUnity.of_order(4, rng.randrange(4))
            return coc.CoboundaryCocycle(coc.WindowFunction(g, 2, table))
        return coc.LabeledCocycle(lab8, character=chars[rng.randrange(len(chars))])

    checked = 0
    for _ in range(args.count):
        a1 = weylmod.AlgebraAutomorphism(
            dyn.GroupoidAutomorphism(autos[rng.randrange(len(autos))]), random_cocycle())
        a2 = weylmod.AlgebraAutomorphism(
            dyn.GroupoidAutomorphism(autos[rng.randrange(len(autos))]), random_cocycle())
        ok, ce = weylmod.check_semidirect_law([a1, a2], depth=args.depth)
        if not ok:
            rep.add("semidirect-law", False, counterexample=str(ce))
            return rep
        checked += 1
    rep.add("semidirect-law", True, pairs=checked, depth=args.depth)
    return rep


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    common.add_argument("--max-depth", type=int, default=64, dest="max_depth",
                        help="bound for internal searches")
    common.add_argument("--threads", type=int, default=1,
                        help="reserved; evaluation is deterministic and single-threaded")

    top = argparse.ArgumentParser(prog="grweyl",
                                  description="exact graph-groupoid algebra toolkit")
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("graph", parents=[])
    gsub = p.add_subparsers(dest="sub", required=True)
    pc = gsub.add_parser("check", parents=[common])
    pc.add_argument("graph")
    pc.set_defaults(func=cmd_graph_check)

    p = sub.add_parser("algebra")
    asub = p.add_subparsers(dest="sub", required=True)
    pe = asub.add_parser("eval", parents=[common])
    pe.add_argument("graph")
    pe.add_argument("expr")
    pe.set_defaults(func=cmd_algebra_eval)
    pv = asub.add_parser("verify-relations", parents=[common])
    pv.add_argument("graph")
    pv.set_defaults(func=cmd_algebra_verify_relations)
    po = asub.add_parser("oracle-test", parents=[common])
    po.add_argument("--count", type=int, default=1000)
    po.add_argument("--graphs", type=int, default=5)
    po.set_defaults(func=cmd_algebra_oracle_test)

    pw = sub.add_parser("watatani", parents=[common])
    pw.add_argument("graph")
    pw.add_argument("labels")
    pw.add_argument("--samples", type=int, default=32)
    pw.set_defaults(func=cmd_watatani)

    p = sub.add_parser("cocycle")
    csub = p.add_subparsers(dest="sub", required=True)
    pf = csub.add_parser("factor", parents=[common])
    pf.add_argument("graph")
    pf.add_argument("labels")
    pf.add_argument("cocycle", help="'trivial', 'char:<k>' or 'all'")
    pf.set_defaults(func=cmd_cocycle_factor)
    pt = csub.add_parser("transitivity", parents=[common])
    pt.add_argument("graph")
    pt.add_argument("labels")
    pt.set_defaults(func=cmd_cocycle_transitivity)

    p = sub.add_parser("conjugacy")
    csub2 = p.add_subparsers(dest="sub", required=True)
    ps = csub2.add_parser("search", parents=[common])
    ps.add_argument("graph1")
    ps.add_argument("graph2")
    ps.add_argument("--w", type=int, default=1)
    ps.add_argument("--m", type=int, default=1)
    ps.add_argument("--flip", action="store_true")
    ps.set_defaults(func=cmd_conjugacy_search)

    p = sub.add_parser("flip")
    fsub = p.add_subparsers(dest="sub", required=True)
    pfc = fsub.add_parser("check", parents=[common])
    pfc.add_argument("graph")
    pfc.add_argument("--L", type=int, default=1)
    pfc.set_defaults(func=cmd_flip_check)

    p = sub.add_parser("weyl")
    wsub = p.add_subparsers(dest="sub", required=True)
    pwe = wsub.add_parser("enumerate", parents=[common])
    pwe.add_argument("graph")
    pwe.add_argument("--w", type=int, default=1)
    pwe.add_argument("--m", type=int, default=1)
    pwe.set_defaults(func=cmd_weyl_enumerate)
    pws = wsub.add_parser("semidirect-test", parents=[common])
    pws.add_argument("graph", nargs="?", default=None,
                     help="graph file (defaults to the 2-rose)")
    pws.add_argument("--count", type=int, default=20)
    pws.add_argument("--depth", type=int, default=3)
    pws.set_defaults(func=cmd_weyl_semidirect)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
    except (GraphFormatError, PreconditionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GrweylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep.emit(args.json)
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
