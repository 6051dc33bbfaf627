"""Command-line front end.

Every command prints a report and exits 0 exactly when all of its checks pass.
Objects are named built-ins or files; ``--load`` registers files under their
stem so later flags can refer to them by name.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import corpus
from .fincat import (
    FinCategory, bicompleteness, classify_morphism, colimit, coproduct, initial_object, limit,
    preorder_reflection, product, pullback, pushout, terminal_object, validate_category, Diagram,
)
from .graphs import graph as gmod
from .graphs.core import bauslaugh_profile, core
from .graphs.graph import Graph
from .graphs.hom import GraphHom, find_hom, hom_equivalent, is_isomorphic
from .graphs.model import (
    acof_retraction, classify_cocore_morphism, classify_core_morphism, factor_acof_fib,
    factor_cof_afib, find_section, is_component_inclusion,
)
from .io import LoadError, Report, dump_structure, load_category, load_graph, load_sss, load_structure, text_hash
from .lifting import MorphismClass
from .modelstruct import (
    Cut, DoubleCut, ModelStructureSpec, build_cocore_structure, build_core_structure,
    build_cut_structure, build_double_cut_structure, check_properness, cuts, trivial_structure,
    verify_model_structure,
)
from . import semisimp as ss


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# workspace


@dataclass
class Workspace:
    categories: dict[str, FinCategory] = field(default_factory=dict)
    graphs: dict[str, Graph] = field(default_factory=dict)
    sss: dict[str, ss.SemiSimplicialSet] = field(default_factory=dict)
    classes: dict[str, MorphismClass] = field(default_factory=dict)
    hashes: dict[str, str] = field(default_factory=dict)

    def category(self, ref: str) -> FinCategory:
        if ref in self.categories:
            return self.categories[ref]
        try:
            C = corpus.named(ref)
        except KeyError:
            C = self._load_file(ref, "category")
        self.hashes[f"category {ref}"] = C.content_hash
        return C

    def graph(self, ref: str) -> Graph:
        if ref in self.graphs:
            return self.graphs[ref]
        try:
            G = gmod.named_graph(ref)
        except KeyError:
            G = self._load_file(ref, "graph")
        self.hashes[f"graph {ref}"] = text_hash(G.to_text())
        return G

    def semisimplicial(self, ref: str, N: int) -> ss.SemiSimplicialSet:
        if ref in self.sss:
            return self.sss[ref]
        if ref.startswith("D") and ref[1:].isdigit():
            X = ss.standard_D(int(ref[1:]), N)
        elif ref == "empty":
            X = ss.empty_sss(N)
        elif ref == "boundary":
            X = ss.boundary_triangle(N)
        elif ref == "triangle":
            X = ss.triangle(N)
        else:
            X = self._load_file(ref, "sss")
        self.hashes[f"sss {ref}"] = text_hash(X.to_text())
        return X

    def _load_file(self, ref: str, kind: str):
        path = Path(ref)
        if not path.exists():
            raise UsageError(f"unknown {kind} {ref!r}")
        text = path.read_text()
        loader = {"category": load_category, "graph": load_graph, "sss": load_sss}[kind]
        return loader(text, str(path))


def load_workspace(paths: Sequence[str]) -> Workspace:
    """Register each file under its stem: ``.json`` categories, ``.graph``
    graphs and ``.sss`` semi-simplicial sets."""
    ws = Workspace()
    for p in paths:
        path = Path(p)
        text = path.read_text()
        name = path.stem
        if path.suffix == ".json":
            ws.categories[name] = C = load_category(text, str(path))
            ws.hashes[f"category {name}"] = C.content_hash
        elif path.suffix == ".graph":
            ws.graphs[name] = load_graph(text, str(path))
            ws.hashes[f"graph {name}"] = text_hash(text)
        elif path.suffix == ".sss":
            ws.sss[name] = load_sss(text, str(path))
            ws.hashes[f"sss {name}"] = text_hash(text)
        else:
            raise LoadError(f"unknown file type {path.suffix!r}", None, str(path))
    return ws


# ---------------------------------------------------------------------------
# structure specs


_VARIANTS = {"bF": "balanced", "rF": "right", "lF": "left",
             "balanced": "balanced", "right": "right", "left": "left"}


def resolve_structure(ws: Workspace, spec: str, category: str | None) -> tuple[FinCategory, ModelStructureSpec]:
    """Forms: ``bF:SQ`` (distinguished cut of a built-in), ``balanced:cut1``
    (first nontrivial cut of ``--category``), ``right:cut=∅,A``,
    ``double:0,1,2``, ``trivial``, ``core``, ``cocore``, or a structure file."""
    head, _, rest = spec.partition(":")
    if head in _VARIANTS and rest in corpus.PAPER_CUTS:
        C = ws.category(rest)
        return C, build_cut_structure(C, Cut.from_small(C, corpus.PAPER_CUTS[rest]), _VARIANTS[head])
    if category is None:
        raise UsageError("this structure needs --category")
    C = ws.category(category)
    if head in _VARIANTS:
        if rest.startswith("cut="):
            F = Cut.from_small(C, [x for x in rest[4:].split(",") if x])
        elif rest.startswith("cut") and rest[3:].isdigit():
            options = cuts(C, include_trivial=False)
            k = int(rest[3:])
            if not 1 <= k <= len(options):
                raise UsageError(f"{C.name or category} has {len(options)} nontrivial cuts")
            F = options[k - 1]
        else:
            raise UsageError(f"cannot read cut {rest!r}")
        return C, build_cut_structure(C, F, _VARIANTS[head])
    if head == "double":
        return C, build_double_cut_structure(C, DoubleCut(tuple(int(x) for x in rest.split(","))))
    if spec == "trivial":
        return C, trivial_structure(C)
    if spec == "core":
        return C, build_core_structure(C)
    if spec == "cocore":
        return C, build_cocore_structure(C)
    path = Path(spec)
    if path.exists():
        return C, load_structure(path.read_text(), C, str(path))
    raise UsageError(f"unknown structure {spec!r}")


# ---------------------------------------------------------------------------
# commands


def _names(C: FinCategory, ms) -> str:
    return "{" + ", ".join(C.describe(m) for m in sorted(ms)) + "}"


def cmd_validate(ws: Workspace, a) -> Report:
    r = Report("validate")
    if a.category:
        C = ws.category(a.category)
        rep = validate_category(C)
        r.details.append(f"{C.n_objects} objects, {C.n_morphisms} morphisms")
        r.check("category axioms", rep.ok)
        r.witness += [str(v) for v in rep.violations[:5]]
        if a.bicomplete:
            b = bicompleteness(C)
            r.check("finite limits and colimits", b.ok)
    for g in a.graph or []:
        G = ws.graph(g)
        r.details.append(f"graph {g}: {G.n} vertices, {len(G.edges)} edges")
        r.check(f"graph {g}", True)
    for s in a.sss or []:
        X = ws.semisimplicial(s, a.truncation)
        bad = ss.validate_sss(X)
        r.check(f"face identities of {s}", not bad)
        r.witness += bad[:5]
    if not r.checks:
        raise UsageError("validate needs --category, --graph or --sss")
    return r


def _morphism(C: FinCategory, ref: str) -> int:
    if ref not in C.morphism_names and ref.isdigit():
        return C.morphism_id(int(ref))
    return C.morphism_id(ref)


def cmd_classify(ws: Workspace, a) -> Report:
    r = Report("classify")
    if a.category:
        C = ws.category(a.category)
        for ref in a.morphism or []:
            m = _morphism(C, ref)
            fl = classify_morphism(C, m)
            r.details.append(f"{C.describe(m)}: mono={fl.mono} epi={fl.epi} iso={fl.iso} "
                             f"retraction={fl.retraction} section={fl.section}")
            if a.structure:
                _, M = resolve_structure(ws, a.structure, a.category)
                r.details.append(f"  we={m in M.we} cof={m in M.cof} fib={m in M.fib}")
        r.check("classification", True)
        return r
    f = _graph_map(ws, a)
    if a.cocore:
        c = classify_cocore_morphism(f, a.bound)
        r.details.append(f"we={c.we} acyclic_cof={c.acyclic_cof} cof={c.cof} "
                         f"acyclic_fib={c.acyclic_fib_status.kind}")
        if c.acyclic_fib_status.witness:
            r.witness.append(_square_text(c.acyclic_fib_status.witness))
    else:
        c = classify_core_morphism(f, a.bound)
        r.details.append(f"we={c.we} cof={c.cof} acyclic_fib={c.acyclic_fib} "
                         f"acyclic_cof={c.acyclic_cof} fib={c.fib_status.kind}")
        if c.fib_status.witness:
            r.witness.append(_square_text(c.fib_status.witness))
    r.check("classification", True)
    return r


def _square_text(w) -> str:
    return (f"left {list(w.left.map)} ({w.left.source.n}→{w.left.target.n} vertices), "
            f"top {list(w.top.map)}, bottom {list(w.bottom.map)}: no diagonal")


def _graph_map(ws: Workspace, a) -> GraphHom:
    if not a.graph or len(a.graph) != 2:
        raise UsageError("give exactly two --graph arguments (source, target)")
    G, H = ws.graph(a.graph[0]), ws.graph(a.graph[1])
    if a.map is None:
        f = find_hom(G, H)
        if f is None:
            raise UsageError("no homomorphism between these graphs")
        return f
    return GraphHom(G, H, tuple(int(x) for x in a.map.split(",") if x != ""))


def cmd_limit(ws: Workspace, a, co: bool) -> Report:
    C = ws.category(a.category)
    name = "colimit" if co else "limit"
    r = Report(name)
    items = a.of or []
    kind = a.kind
    if kind in ("pullback", "pushout"):
        if len(items) != 2:
            raise UsageError(f"{kind} needs two morphisms")
        f, g = (_morphism(C, x) for x in items)
        cone = (pushout if co else pullback)(C, f, g)
    elif kind in ("product", "coproduct"):
        if len(items) != 2:
            raise UsageError(f"{kind} needs two objects")
        x, y = (C.object_id(o) for o in items)
        cone = (coproduct if co else product)(C, x, y)
    elif kind in ("terminal", "initial"):
        obj = initial_object(C) if kind == "initial" else terminal_object(C)
        r.details.append(f"{kind}: {C.object_names[obj] if obj is not None else 'none'}")
        r.check(f"{kind} object exists", obj is not None)
        return r
    else:
        objs = [C.object_id(o) for o in items]
        cone = (colimit if co else limit)(C, Diagram.discrete(objs))
    if cone is None:
        r.check(f"{name} exists", False)
        return r
    r.details.append(f"apex: {C.object_names[cone.apex]}")
    r.details += [f"leg: {C.describe(m)}" for m in cone.legs]
    r.check(f"{name} exists", True)
    return r


def cmd_reflect(ws: Workspace, a) -> Report:
    C = ws.category(a.category)
    P = preorder_reflection(C)
    r = Report("reflect")
    for cls in P.classes:
        r.details.append("class: " + ", ".join(C.object_names[x] for x in cls))
    q = P.quotient
    for m in q.morphisms:
        if not q.is_identity(m):
            r.details.append(f"order: {q.describe(m)}")
    r.check("reflection is a preorder", True)
    return r


def cmd_cut_build(ws: Workspace, a) -> Report:
    C, M = resolve_structure(ws, a.structure, a.category)
    r = Report("cut-build")
    r.details.append(f"we = {_names(C, M.we)}")
    r.details.append(f"cof = {_names(C, M.cof)}")
    r.details.append(f"fib = {_names(C, M.fib)}")
    if a.output:
        Path(a.output).write_text(dump_structure(M))
        r.details.append(f"written: {a.output}")
    r.check("model structure axioms", verify_model_structure(C, M).verdict)
    return r


def cmd_verify(ws: Workspace, a) -> Report:
    C, M = resolve_structure(ws, a.structure, a.category)
    rep = verify_model_structure(C, M)
    r = Report("verify")
    for label, w in (("(cof, fib∩we)", rep.cof_afib), ("(cof∩we, fib)", rep.acof_fib)):
        r.check(f"{label} lifting", w.lifting_ok)
        r.check(f"{label} factorization", w.factorization_ok)
        r.check(f"{label} retract closure", w.retract_closed_ok)
        r.details.append(f"{label} maximal: {w.maximal}")
        if w.failing_square:
            sq = w.failing_square
            r.witness.append(f"{label}: {C.describe(sq.f)} vs {C.describe(sq.g)} "
                             f"top {C.describe(sq.top)} bottom {C.describe(sq.bottom)}")
        if w.unfactorable is not None:
            r.witness.append(f"{label}: {C.describe(w.unfactorable)} does not factor")
    r.check("two out of three", rep.two_of_three_ok)
    if rep.two_of_three_witness:
        g, f = rep.two_of_three_witness
        r.witness.append(f"2-of-3 fails on {C.describe(g)} ∘ {C.describe(f)}")
    r.check("weak equivalences closed under retracts", rep.tierney_ok)
    return r


def cmd_properness(ws: Workspace, a) -> Report:
    C, M = resolve_structure(ws, a.structure, a.category)
    r = Report("properness")
    sides = ["left", "right"] if a.side == "both" else [a.side]
    for side in sides:
        p = check_properness(C, M, side)
        r.details.append(f"{side}: {p.checked} squares checked, {len(p.missing)} missing (co)limits")
        r.check(f"{side} proper", p.ok)
        if p.witness:
            w, c, base = p.witness
            kind = "pushout" if side == "left" else "pullback"
            r.witness.append(f"{kind} of we {C.describe(w)} along {C.describe(c)} "
                             f"gives {C.describe(base)}, not a weak equivalence")
    return r


def cmd_hom(ws: Workspace, a) -> Report:
    if not a.graph or len(a.graph) != 2:
        raise UsageError("give exactly two --graph arguments")
    G, H = ws.graph(a.graph[0]), ws.graph(a.graph[1])
    f = find_hom(G, H)
    r = Report("hom")
    r.details.append(f"hom: {list(f.map) if f else 'none'}")
    r.details.append(f"hom-equivalent: {hom_equivalent(G, H)}")
    r.check("homomorphism exists", f is not None)
    return r


def _known_name(G: Graph) -> str | None:
    named = [gmod.looped_point(), gmod.empty(0)] + gmod.graph_corpus()
    return next((H.name for H in named if H.n == G.n and is_isomorphic(H, G)), None)


def cmd_core(ws: Workspace, a) -> Report:
    r = Report("core")
    for g in a.graph or []:
        G = ws.graph(g)
        c = core(G)
        known = _known_name(c.core)
        r.details.append(f"core of {g}: {c.core.n} vertices {c.core.sorted_edges()} at {list(c.vertices)}"
                         + (f" (≅ {known})" if known else ""))
        r.details.append(f"retraction: {list(c.retraction.map)}")
        r.check(f"certificate for {g}", c.replay())
    if not r.checks:
        raise UsageError("core needs --graph")
    return r


def cmd_factor(ws: Workspace, a) -> Report:
    f = _graph_map(ws, a)
    r = Report("factor")
    i1, p = factor_cof_afib(f)
    r.details.append(f"cof/afib through {i1.target.n} vertices")
    r.check("cof/afib composite", i1.then(p).map == f.map)
    r.check("left leg is a cofibration", is_component_inclusion(i1))
    r.check("right leg has a section", find_section(p) is not None)
    j1, q = factor_acof_fib(f)
    r.details.append(f"acof/fib through {j1.target.n} vertices")
    r.check("acof/fib composite", j1.then(q).map == f.map)
    c = classify_core_morphism(j1, a.bound)
    r.check("left leg is an acyclic cofibration", c.acyclic_cof)
    r.check("left leg is a section", j1.then(acof_retraction(f)).map == tuple(range(f.source.n)))
    st = classify_core_morphism(q, a.bound).fib_status
    r.details.append(f"right leg fibration: {st.kind}")
    r.check("right leg lifts up to bound", st.holds)
    return r


def cmd_bauslaugh(ws: Workspace, a) -> Report:
    r = Report("bauslaugh")
    for g in a.graph or []:
        p = bauslaugh_profile(ws.graph(g))
        r.details.append(f"{g}: s={p.s_core} r={p.r_core} a={p.a_core} i={p.i_core} e={p.e_core}")
        r.check(f"predicates agree on {g}", p.agree())
    if not r.checks:
        raise UsageError("bauslaugh needs --graph")
    return r


def _sss_map(ws: Workspace, a) -> ss.SssMap:
    if not a.sss or len(a.sss) != 2:
        raise UsageError("give exactly two --sss arguments (source, target)")
    X, Y = ws.semisimplicial(a.sss[0], a.truncation), ws.semisimplicial(a.sss[1], a.truncation)
    if a.map is None:
        f = ss.find_map(X, Y)
        if f is None:
            raise UsageError("no map between these semi-simplicial sets")
        return f
    levels = tuple(tuple(int(x) for x in lv.split(",") if x != "") for lv in a.map.split(";"))
    return ss.SssMap(X, Y, levels).check()


def _dim_text(d: float, N: int) -> str:
    if d == ss.TOP:
        return f"top (level {N} inhabited; {N} and infinity look alike at this truncation)"
    return "-1 (empty)" if d == ss.EMPTY_DIM else str(int(d))


def cmd_sss(ws: Workspace, a, sub: str) -> Report:
    r = Report(f"sss-{sub}")
    if sub == "dim":
        for s in a.sss or []:
            X = ws.semisimplicial(s, a.truncation)
            r.details.append(f"dim {s} = {_dim_text(ss.dimension(X), X.N)}")
            r.check(f"face identities of {s}", not ss.validate_sss(X))
        return r
    f = _sss_map(ws, a)
    if sub == "factor":
        fa = ss.adjoint_factorize(f)
        r.details.append(f"middle level sizes: {list(fa.mid.sizes)}")
        r.details.append(f"dim source = {_dim_text(fa.dim_source, f.source.N)}, "
                         f"dim middle = {_dim_text(fa.dim_mid, f.source.N)}")
        r.check("composite equals f", fa.i.then(fa.p).levels == f.levels)
        r.check("F(i) is an identity", fa.f_of_i_is_identity)
        return r
    if sub == "classify":
        fl = ss.classify_dim_cut(f, a.n, a.variant)
        r.details.append(f"we={fl.we} cof={fl.cof} fib={fl.fib}")
        r.check("classification", True)
        return r
    raise UsageError(f"unknown command sss-{sub}")


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modelkit", description=__doc__.splitlines()[0])
    p.add_argument("--load", action="append", default=[], help="register a file by its stem")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--category")
        sp.add_argument("--graph", action="append")
        sp.add_argument("--sss", action="append")
        sp.add_argument("--structure")
        sp.add_argument("--truncation", type=int, default=3)
        sp.add_argument("--format", choices=["text", "structured"], default="text")
        return sp

    sp = common(sub.add_parser("validate", help="check category axioms, graphs or face identities"))
    sp.add_argument("--bicomplete", action="store_true")
    sp = common(sub.add_parser("classify", help="flags of a morphism"))
    sp.add_argument("--morphism", action="append")
    sp.add_argument("--map", help="graph map as comma-separated images")
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--cocore", action="store_true")
    for name in ("limit", "colimit"):
        sp = common(sub.add_parser(name, help=f"compute a {name} in a finite category"))
        sp.add_argument("--kind", default="product" if name == "limit" else "coproduct",
                        choices=["pullback", "pushout", "product", "coproduct", "terminal",
                                 "initial", "discrete"])
        sp.add_argument("--of", nargs="*")
    common(sub.add_parser("reflect", help="preorder reflection"))
    sp = common(sub.add_parser("cut-build", help="build a cut structure"))
    sp.add_argument("--output")
    common(sub.add_parser("verify", help="verify model structure axioms"))
    sp = common(sub.add_parser("properness", help="left/right properness"))
    sp.add_argument("--side", choices=["left", "right", "both"], default="both")
    common(sub.add_parser("hom", help="find a graph homomorphism"))
    common(sub.add_parser("core", help="core of a graph"))
    sp = common(sub.add_parser("factor", help="both factorizations of a graph map"))
    sp.add_argument("--map")
    sp.add_argument("--bound", type=int, default=4)
    common(sub.add_parser("bauslaugh", help="endomorphism core predicates"))
    common(sub.add_parser("sss-dim", help="dimension of semi-simplicial sets"))
    sp = common(sub.add_parser("sss-factor", help="factorization through the dimension adjunction"))
    sp.add_argument("--map", help="levels separated by ';', images by ','")
    sp = common(sub.add_parser("sss-classify", help="flags in a dimension-cut structure"))
    sp.add_argument("--map")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--variant", choices=["balanced", "right", "left"], default="balanced")
    return p


def run_command(ws: Workspace, a) -> Report:
    c = a.command
    if c == "validate":
        r = cmd_validate(ws, a)
    elif c == "classify":
        r = cmd_classify(ws, a)
    elif c in ("limit", "colimit"):
        if not a.category:
            raise UsageError(f"{c} needs --category")
        r = cmd_limit(ws, a, co=c == "colimit")
    elif c == "reflect":
        r = cmd_reflect(ws, a)
    elif c == "cut-build":
        r = cmd_cut_build(ws, a)
    elif c == "verify":
        r = cmd_verify(ws, a)
    elif c == "properness":
        r = cmd_properness(ws, a)
    elif c == "hom":
        r = cmd_hom(ws, a)
    elif c == "core":
        r = cmd_core(ws, a)
    elif c == "factor":
        r = cmd_factor(ws, a)
    elif c == "bauslaugh":
        r = cmd_bauslaugh(ws, a)
    elif c.startswith("sss-"):
        r = cmd_sss(ws, a, c[4:])
    else:
        raise UsageError(f"unknown command {c!r}")
    r.inputs.update(ws.hashes)
    return r


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        ws = load_workspace(a.load)
        report = run_command(ws, a)
    except (UsageError, LoadError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render(a.format))
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
