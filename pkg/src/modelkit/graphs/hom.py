"""Graph homomorphisms: backtracking search with forward checking, and isomorphism."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .graph import Graph, GraphError


@dataclass(frozen=True)
class GraphHom:
    source: Graph
    target: Graph
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.n:
            raise GraphError("vertex map has the wrong length")
        for x in self.map:
            if not 0 <= x < self.target.n:
                raise GraphError(f"image vertex {x} out of range")
        adj = self.target.adj
        for u, v in self.source.edges:
            if not adj[self.map[u]] >> self.map[v] & 1:
                raise GraphError(f"edge ({u}, {v}) is not preserved")

    def __call__(self, v: int) -> int:
        return self.map[v]

    def then(self, g: GraphHom) -> GraphHom:
        """``g ∘ self``."""
        if g.source != self.target:
            raise GraphError("homomorphisms are not composable")
        return GraphHom(self.source, g.target, tuple(g.map[x] for x in self.map))

    @classmethod
    def identity(cls, G: Graph) -> GraphHom:
        return cls(G, G, tuple(range(G.n)))

    def image(self) -> list[int]:
        return sorted(set(self.map))

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.n

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective() and \
            len(self.source.edges) == len(self.target.edges)

    def is_embedding(self) -> bool:
        """Injective and reflects edges, i.e. an isomorphism onto an induced subgraph."""
        if not self.is_injective():
            return False
        n = self.source.n
        adj_s, adj_t = self.source.adj, self.target.adj
        return all((adj_s[u] >> v & 1) == (adj_t[self.map[u]] >> self.map[v] & 1)
                   for u in range(n) for v in range(u, n))


# ---------------------------------------------------------------------------
# search


def _initial_domains(G: Graph, H: Graph, constraints: Mapping[int, int] | None) -> list[int] | None:
    full = (1 << H.n) - 1
    loops = H.loop_mask
    # a vertex with a neighbour needs an image with a neighbour
    nonisolated = sum(1 << x for x in range(H.n) if H.adj[x])
    doms = []
    for v in range(G.n):
        d = loops if G.has_loop(v) else (nonisolated if G.adj[v] else full)
        doms.append(d)
    for v, x in (constraints or {}).items():
        if not (0 <= v < G.n and 0 <= x < H.n):
            raise GraphError("constraint references a missing vertex")
        doms[v] &= 1 << x
    if any(d == 0 for d in doms):
        return None
    return doms


def _search(G: Graph, H: Graph, order: Sequence[int], doms: list[int]) -> Iterator[list[int]]:
    """Yield homomorphisms assigning vertices in ``order``, each domain tried in
    increasing vertex order; neighbours' domains are pruned on assignment."""
    n = G.n
    adjG, adjH = G.adj, H.adj
    assign = [-1] * n

    def rec(k: int, doms: list[int]):
        if k == n:
            yield list(assign)
            return
        v = order[k]
        d = doms[v]
        nbrs = [u for u in order[k + 1:] if adjG[v] >> u & 1]
        while d:
            low = d & -d
            x = low.bit_length() - 1
            d ^= low
            assign[v] = x
            new = doms
            ok = True
            if nbrs:
                new = list(doms)
                for u in nbrs:
                    new[u] &= adjH[x]
                    if not new[u]:
                        ok = False
                        break
            if ok:
                yield from rec(k + 1, new)
        assign[v] = -1

    yield from rec(0, doms)


def _degree_order(G: Graph) -> list[int]:
    return sorted(range(G.n), key=lambda v: (-G.degree(v), v))


def has_hom(G: Graph, H: Graph, constraints: Mapping[int, int] | None = None) -> bool:
    if H.loops and not constraints:
        return True  # constant map onto a looped vertex
    doms = _initial_domains(G, H, constraints)
    if doms is None:
        return False
    return next(_search(G, H, _degree_order(G), doms), None) is not None


def find_hom(G: Graph, H: Graph, constraints: Mapping[int, int] | None = None) -> GraphHom | None:
    """Lexicographically smallest homomorphism extending ``constraints``.

    Existence is settled with the descending-degree order first; the canonical
    witness is then read off a natural-order search, which always succeeds.
    """
    if not has_hom(G, H, constraints):
        return None
    doms = _initial_domains(G, H, constraints)
    m = next(_search(G, H, list(range(G.n)), doms))
    return GraphHom(G, H, tuple(m))


def iter_homs(G: Graph, H: Graph, constraints: Mapping[int, int] | None = None) -> Iterator[GraphHom]:
    """All homomorphisms in lexicographic order."""
    doms = _initial_domains(G, H, constraints)
    if doms is None:
        return
    for m in _search(G, H, list(range(G.n)), doms):
        yield GraphHom(G, H, tuple(m))


def find_hom_within(G: Graph, H: Graph, allowed: Sequence[Sequence[int]]) -> GraphHom | None:
    """Smallest homomorphism sending each ``v`` into ``allowed[v]``."""
    doms = _initial_domains(G, H, None)
    if doms is None:
        return None
    for v, xs in enumerate(allowed):
        doms[v] &= sum(1 << x for x in set(xs))
        if not doms[v]:
            return None
    m = next(_search(G, H, list(range(G.n)), doms), None)
    return None if m is None else GraphHom(G, H, tuple(m))


def count_homs(G: Graph, H: Graph) -> int:
    doms = _initial_domains(G, H, None)
    if doms is None:
        return 0
    return sum(1 for _ in _search(G, H, _degree_order(G), doms))


def hom_equivalent(G: Graph, H: Graph) -> bool:
    return has_hom(G, H) and has_hom(H, G)


# ---------------------------------------------------------------------------
# isomorphism


def _refine(G: Graph) -> list[int]:
    """Colour refinement seeded by (loop, degree); returns stable colour ids."""
    colors = [(G.has_loop(v), G.degree(v)) for v in range(G.n)]
    ids = _relabel(colors)
    while True:
        sig = [(ids[v], tuple(sorted(ids[u] for u in G.neighbors(v)))) for v in range(G.n)]
        new = _relabel(sig)
        if len(set(new)) == len(set(ids)):
            return new
        ids = new


def _relabel(keys: list) -> list[int]:
    table = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _signature(G: Graph):
    return (G.n, len(G.edges), len(G.loops), sorted(G.degree(v) for v in range(G.n)))


def find_isomorphism(G: Graph, H: Graph) -> GraphHom | None:
    if _signature(G) != _signature(H):
        return None
    # refine jointly so colour ids are comparable across the two graphs
    U = _joint(G, H)
    col = _refine(U)
    cg, ch = col[:G.n], col[G.n:]
    if sorted(cg) != sorted(ch):
        return None
    order = sorted(range(G.n), key=lambda v: (cg.count(cg[v]), -G.degree(v), v))
    adjG, adjH = G.adj, H.adj
    assign: dict[int, int] = {}
    used = 0

    def rec(k: int) -> bool:
        nonlocal used
        if k == G.n:
            return True
        v = order[k]
        for x in range(H.n):
            if used >> x & 1 or ch[x] != cg[v]:
                continue
            if (adjG[v] >> v & 1) != (adjH[x] >> x & 1):
                continue
            if any((adjG[v] >> u & 1) != (adjH[x] >> y & 1) for u, y in assign.items()):
                continue
            assign[v] = x
            used |= 1 << x
            if rec(k + 1):
                return True
            del assign[v]
            used ^= 1 << x
        return False

    if not rec(0):
        return None
    return GraphHom(G, H, tuple(assign[v] for v in range(G.n)))


def _joint(G: Graph, H: Graph) -> Graph:
    from .graph import disjoint_union
    return disjoint_union(G, H)


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return find_isomorphism(G, H) is not None
