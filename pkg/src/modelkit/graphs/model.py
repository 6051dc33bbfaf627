"""The generalized core and cocore model structures on graphs.

Weak equivalences are homomorphisms between hom-equivalent graphs.  In the
core structure acyclic fibrations are the retractions and cofibrations are the
inclusions of unions of connected components; in the cocore structure acyclic
cofibrations are the sections.  Fibrations have no finite criterion, so they
are tested against a bounded family of generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, all_graphs_upto, disjoint_union, tensor_product
from .hom import GraphHom, find_hom_within, hom_equivalent, iter_homs
from .limits import GraphDiagram, graph_limit


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class LiftingFailure:
    """A square ``left`` vs ``f`` with no diagonal; ``top: A → X``, ``bottom: B → Y``."""

    left: GraphHom
    top: GraphHom
    bottom: GraphHom


@dataclass(frozen=True)
class FibStatus:
    holds: bool
    bound: int
    witness: LiftingFailure | None = None

    @property
    def kind(self) -> str:
        return f"yes_up_to_bound({self.bound})" if self.holds else "no_with_witness"


@dataclass(frozen=True)
class CoreClassification:
    we: bool
    cof: bool
    acyclic_fib: bool
    acyclic_cof: bool
    fib_status: FibStatus
    section: GraphHom | None = None


@dataclass(frozen=True)
class CocoreClassification:
    we: bool
    acyclic_cof: bool
    cof: bool
    acyclic_fib_status: FibStatus
    retraction: GraphHom | None = None


# ---------------------------------------------------------------------------
# basic predicates


def find_section(f: GraphHom) -> GraphHom | None:
    """Smallest ``s: Y → X`` with ``f∘s = id_Y``."""
    X, Y = f.source, f.target
    fibres = [[x for x in range(X.n) if f.map[x] == y] for y in range(Y.n)]
    return find_hom_within(Y, X, fibres)


def find_retraction(f: GraphHom) -> GraphHom | None:
    """Smallest ``r: Y → X`` with ``r∘f = id_X``."""
    if not f.is_injective():
        return None
    X, Y = f.source, f.target
    inv = {y: x for x, y in enumerate(f.map)}
    allowed = [[inv[y]] if y in inv else range(X.n) for y in range(Y.n)]
    return find_hom_within(Y, X, allowed)


def is_component_inclusion(f: GraphHom) -> bool:
    """Injective, an isomorphism onto its induced image, and the image is a
    union of connected components of the target."""
    if not f.is_embedding():
        return False
    image = set(f.map)
    return all(u in image for y in image for u in f.target.neighbors(y))


def _component_closure(f: GraphHom) -> list[int]:
    """Vertices of the target components that meet the image of ``f``."""
    hit = set(f.map)
    return sorted(v for comp in f.target.components() if hit & set(comp) for v in comp)


@lru_cache(maxsize=None)
def connected_graphs_upto(k: int) -> tuple[Graph, ...]:
    return tuple(G for G in all_graphs_upto(k) if G.n and G.is_connected())


def _factor_through(f: GraphHom, c: GraphHom) -> GraphHom | None:
    """``h`` with ``f∘h = c``."""
    X = f.source
    fibres = {}
    for x in range(X.n):
        fibres.setdefault(f.map[x], []).append(x)
    return find_hom_within(c.source, X, [fibres.get(y, []) for y in c.map])


def _component_lifting(f: GraphHom, k: int, need_map_to_source: bool) -> LiftingFailure | None:
    """Lift ``f`` against ``K → K ⊔ L`` for connected ``L`` with ``|L| <= k``.

    Only ``L`` matters: a square exists iff ``K`` maps to the source, and a
    diagonal restricted to ``L`` is a factorization of ``L → Y`` through ``f``.
    With ``need_map_to_source`` the generator is acyclic (``L → K``), so we
    take ``K = L``; otherwise ``K`` is empty.
    """
    X, Y = f.source, f.target
    for L in connected_graphs_upto(k):
        if need_map_to_source:
            top0 = next(iter_homs(L, X), None)
            if top0 is None:
                continue
        for c in iter_homs(L, Y):
            if _factor_through(f, c) is None:
                if need_map_to_source:
                    K = L
                    left = GraphHom(K, disjoint_union(K, L), tuple(range(K.n)))
                    bottom = GraphHom(left.target, Y,
                                      tuple(f.map[x] for x in top0.map) + c.map)
                    return LiftingFailure(left, top0, bottom)
                E = Graph.make(0)
                return LiftingFailure(GraphHom(E, L, ()), GraphHom(E, X, ()), c)
    return None


def lifts_against_cofibrations(f: GraphHom, k: int) -> bool:
    """Right lifting against every core cofibration between graphs with at most
    ``k`` vertices (reduced to connected added components)."""
    return _component_lifting(f, k, need_map_to_source=False) is None


def fibration_status(f: GraphHom, k: int = 4) -> FibStatus:
    if k < 1:
        raise BoundError("the fibration bound must be at least 1")
    w = _component_lifting(f, k, need_map_to_source=True)
    return FibStatus(w is None, k, w)


# ---------------------------------------------------------------------------
# classification


def classify_core_morphism(f: GraphHom, k: int = 4) -> CoreClassification:
    if k < 1:
        raise BoundError("the fibration bound must be at least 1")
    we = hom_equivalent(f.source, f.target)
    s = find_section(f)
    cof = is_component_inclusion(f)
    status = fibration_status(f, k)
    return CoreClassification(we, cof, s is not None, cof and we, status, s)


@lru_cache(maxsize=None)
def _small_sections(k: int) -> tuple[GraphHom, ...]:
    out = []
    graphs = all_graphs_upto(k)
    for A in graphs:
        for B in graphs:
            if A.n > B.n:
                continue
            for s in iter_homs(A, B):
                if s.is_injective() and find_retraction(s) is not None:
                    out.append(s)
    return tuple(out)


def _section_lifting(f: GraphHom, k: int) -> LiftingFailure | None:
    X, Y = f.source, f.target
    for s in _small_sections(k):
        A, B = s.source, s.target
        for a in iter_homs(A, X):
            fa = [f.map[x] for x in a.map]
            constraints = {s.map[u]: fa[u] for u in range(A.n)}
            for b in iter_homs(B, Y, constraints):
                allowed = []
                pre = {s.map[u]: a.map[u] for u in range(A.n)}
                for v in range(B.n):
                    fib = [x for x in range(X.n) if f.map[x] == b.map[v]]
                    allowed.append([pre[v]] if v in pre else fib)
                if find_hom_within(B, X, allowed) is None:
                    return LiftingFailure(s, a, b)
    return None


def classify_cocore_morphism(f: GraphHom, k: int = 3) -> CocoreClassification:
    if k < 1:
        raise BoundError("the fibration bound must be at least 1")
    we = hom_equivalent(f.source, f.target)
    r = find_retraction(f)
    cof = r is not None or _is_section_then_inclusion(f)
    w = _component_lifting(f, k, need_map_to_source=False) or _section_lifting(f, k)
    return CocoreClassification(we, r is not None, cof, FibStatus(w is None, k, w), r)


def _is_section_then_inclusion(f: GraphHom) -> bool:
    """Restrict the target to the components met by ``f`` and look for a
    retraction there."""
    if not f.is_injective():
        return False
    U = _component_closure(f)
    pos = {v: i for i, v in enumerate(U)}
    g = GraphHom(f.source, f.target.induced(U), tuple(pos[y] for y in f.map))
    return find_retraction(g) is not None


# ---------------------------------------------------------------------------
# factorizations


def factor_cof_afib(f: GraphHom) -> tuple[GraphHom, GraphHom]:
    """``G → G ⊔ H → H`` as the first injection then ``f ⊔ 1``."""
    G, H = f.source, f.target
    M = disjoint_union(G, H)
    i1 = GraphHom(G, M, tuple(range(G.n)))
    p = GraphHom(M, H, f.map + tuple(range(H.n)))
    return i1, p


def factor_acof_fib(f: GraphHom) -> tuple[GraphHom, GraphHom]:
    """``G → G ⊔ (G × H) → H`` as the first injection then ``f ⊔ p2``."""
    G, H = f.source, f.target
    M = disjoint_union(G, tensor_product(G, H))
    i1 = GraphHom(G, M, tuple(range(G.n)))
    p = GraphHom(M, H, f.map + tuple(x for _ in range(G.n) for x in range(H.n)))
    return i1, p


def acof_retraction(f: GraphHom) -> GraphHom:
    """The retraction ``1 ⊔ p1`` of the left leg of :func:`factor_acof_fib`."""
    G, H = f.source, f.target
    M = disjoint_union(G, tensor_product(G, H))
    return GraphHom(M, G, tuple(range(G.n)) + tuple(u for u in range(G.n) for _ in range(H.n)))


# ---------------------------------------------------------------------------
# the component functor and its right adjoint


def component_labels(G: Graph) -> list[int]:
    lab = [0] * G.n
    for k, comp in enumerate(G.components()):
        for v in comp:
            lab[v] = k
    return lab


def looped_discrete(n: int) -> Graph:
    return Graph.make(n, [(i, i) for i in range(n)])


def unit_pi0(G: Graph) -> GraphHom:
    """``G → GF(G)``: each vertex to its component, a looped vertex."""
    lab = component_labels(G)
    return GraphHom(G, looped_discrete(len(G.components())), tuple(lab))


def gf_pi0(f: GraphHom) -> GraphHom:
    ls, lt = component_labels(f.source), component_labels(f.target)
    comp_map = {}
    for x in range(f.source.n):
        comp_map[ls[x]] = lt[f.map[x]]
    ns = len(f.source.components())
    return GraphHom(looped_discrete(ns), looped_discrete(len(f.target.components())),
                    tuple(comp_map[c] for c in range(ns)))


def check_condition_b_pi0(f: GraphHom) -> bool:
    """The comparison ``A → B ×_{GF(B)} GF(A)`` induces a bijection on components."""
    eta_b, gff = unit_pi0(f.target), gf_pi0(f)
    P = graph_limit(GraphDiagram.cospan(eta_b, gff))
    eta_a = unit_pi0(f.source)
    pairs = list(zip(P.legs[0].map, P.legs[1].map))
    index = {p: i for i, p in enumerate(pairs)}
    comparison = GraphHom(f.source, P.apex,
                          tuple(index[(f.map[x], eta_a.map[x])] for x in range(f.source.n)))
    lab = component_labels(P.apex)
    images = [lab[comparison.map[x]] for x in range(f.source.n)]
    src_lab = component_labels(f.source)
    induced = {}
    for x in range(f.source.n):
        if induced.setdefault(src_lab[x], images[x]) != images[x]:
            return False
    return sorted(induced.values()) == list(range(len(P.apex.components())))

