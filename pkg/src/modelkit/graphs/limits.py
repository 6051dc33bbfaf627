"""Finite limits and colimits of graphs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Graph, GraphError
from .hom import GraphHom


@dataclass(frozen=True)
class GraphDiagram:
    objects: tuple[Graph, ...]
    arrows: tuple[tuple[int, int, GraphHom], ...] = field(default=())

    def __post_init__(self):
        for i, j, h in self.arrows:
            if h.source != self.objects[i] or h.target != self.objects[j]:
                raise GraphError(f"arrow {i}→{j} has the wrong endpoints")

    @classmethod
    def span(cls, f: GraphHom, g: GraphHom) -> GraphDiagram:
        """``B ← A → C`` as objects ``(B, C, A)``."""
        if f.source != g.source:
            raise GraphError("span legs need a common source")
        return cls((f.target, g.target, f.source), ((2, 0, f), (2, 1, g)))

    @classmethod
    def cospan(cls, f: GraphHom, g: GraphHom) -> GraphDiagram:
        """``A → Z ← B`` as objects ``(A, B, Z)``."""
        if f.target != g.target:
            raise GraphError("cospan legs need a common target")
        return cls((f.source, g.source, f.target), ((0, 2, f), (1, 2, g)))


@dataclass(frozen=True)
class GraphCone:
    apex: Graph
    legs: tuple[GraphHom, ...]


def graph_colimit(D: GraphDiagram) -> GraphCone:
    """Disjoint union of the objects modulo ``v ~ h(v)`` for every arrow ``h``;
    an edge of any object becomes an edge between the classes of its ends."""
    offsets = list(itertools.accumulate((G.n for G in D.objects), initial=0))
    parent = list(range(offsets[-1]))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, h in D.arrows:
        for v, x in enumerate(h.map):
            a, b = find(offsets[i] + v), find(offsets[j] + x)
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in range(offsets[-1])})
    cls = {r: k for k, r in enumerate(roots)}
    label = [cls[find(x)] for x in range(offsets[-1])]
    edges = [(label[offsets[i] + u], label[offsets[i] + v])
             for i, G in enumerate(D.objects) for u, v in G.edges]
    apex = Graph.make(len(roots), edges)
    legs = tuple(GraphHom(G, apex, tuple(label[offsets[i] + v] for v in range(G.n)))
                 for i, G in enumerate(D.objects))
    return GraphCone(apex, legs)


def graph_limit(D: GraphDiagram) -> GraphCone:
    """Compatible families ``(x_i)`` with ``h(x_i) = x_j`` for each arrow;
    two families are adjacent when they are adjacent in every coordinate.
    The empty diagram gives the looped point."""
    k = len(D.objects)
    families = []
    for fam in itertools.product(*(range(G.n) for G in D.objects)):
        if all(h.map[fam[i]] == fam[j] for i, j, h in D.arrows):
            families.append(fam)
    edges = []
    adjs = [G.adj for G in D.objects]
    for a, fa in enumerate(families):
        for b in range(a, len(families)):
            fb = families[b]
            if all(adjs[i][fa[i]] >> fb[i] & 1 for i in range(k)):
                edges.append((a, b))
    apex = Graph.make(len(families), edges)
    legs = tuple(GraphHom(apex, G, tuple(f[i] for f in families))
                 for i, G in enumerate(D.objects))
    return GraphCone(apex, legs)


def coproduct(*graphs: Graph) -> GraphCone:
    return graph_colimit(GraphDiagram(tuple(graphs)))


def product(*graphs: Graph) -> GraphCone:
    return graph_limit(GraphDiagram(tuple(graphs)))


def pushout(f: GraphHom, g: GraphHom) -> GraphCone:
    """Legs ``(B → P, C → P, A → P)`` for the span ``B ←f A →g C``."""
    return graph_colimit(GraphDiagram.span(f, g))


def pullback(f: GraphHom, g: GraphHom) -> GraphCone:
    """Legs ``(P → A, P → B, P → Z)`` for the cospan ``A →f Z ←g B``."""
    return graph_limit(GraphDiagram.cospan(f, g))



# ---------------------------------------------------------------------------
# coproduct properties


@dataclass(frozen=True)
class CoproductSplit:
    """``f: X → B ⊔ C`` as ``f_B ⊔ f_C`` along ``X ≅ X_B ⊔ X_C``."""

    parts: tuple[GraphHom, GraphHom]      # X_B → B, X_C → C
    inclusions: tuple[GraphHom, GraphHom]  # X_B → X, X_C → X


def split_over_coproduct(f: GraphHom, B: Graph, C: Graph) -> CoproductSplit | None:
    """Decompose a map into ``B ⊔ C`` (``B`` first) by preimages; ``None`` if
    the preimages are joined by an edge of ``X``, which a homomorphism into a
    coproduct cannot produce."""
    X = f.source
    if f.target != coproduct(B, C).apex:
        raise GraphError("target is not the coproduct of the given graphs")
    left = [x for x in range(X.n) if f.map[x] < B.n]
    right = [x for x in range(X.n) if f.map[x] >= B.n]
    if any((u in left) != (v in left) for u, v in X.edges):
        return None
    XB, XC = X.induced(left), X.induced(right)
    parts = (GraphHom(XB, B, tuple(f.map[x] for x in left)),
             GraphHom(XC, C, tuple(f.map[x] - B.n for x in right)))
    incs = (GraphHom(XB, X, tuple(left)), GraphHom(XC, X, tuple(right)))
    return CoproductSplit(parts, incs)


def coproduct_is_disjoint(B: Graph, C: Graph) -> bool:
    """Injections are monic (injective) and their pullback is the empty graph."""
    cp = coproduct(B, C)
    i, j = cp.legs
    if not (i.is_injective() and j.is_injective()):
        return False
    return pullback(i, j).apex.n == 0
