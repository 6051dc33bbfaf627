"""Cores by retraction iteration, and the endomorphism-based core predicates."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .graph import Graph
from .hom import GraphHom, find_hom, is_isomorphic, iter_homs


@dataclass(frozen=True)
class CoreResult:
    core: Graph
    vertices: tuple[int, ...]          # core vertices inside the original graph
    retraction: GraphHom               # G → core
    inclusion: GraphHom                # core → G
    certificate: tuple[int, ...]       # every core vertex v: no hom core → core − v

    def replay(self) -> bool:
        """Recheck the retraction identity and every certificate entry."""
        if self.inclusion.then(self.retraction).map != tuple(range(self.core.n)):
            return False
        if sorted(self.certificate) != list(range(self.core.n)):
            return False
        return not any(_shrinking_endomorphism(self.core, v) for v in self.certificate)


def _shrinking_endomorphism(H: Graph, v: int) -> tuple[int, ...] | None:
    """An endomorphism of ``H`` missing ``v``, via a hom into ``H − v``."""
    rest = [u for u in range(H.n) if u != v]
    g = find_hom(H, H.induced(rest))
    return None if g is None else tuple(rest[x] for x in g.map)


def idempotent_power(e: tuple[int, ...]) -> tuple[int, ...]:
    """The unique idempotent among the powers of a self-map."""
    n = len(e)
    stable = set(range(n))
    for _ in range(n):
        stable = {e[x] for x in stable}
    # e permutes its eventual image; kill the permutation and pass the index
    order = 1
    for x in stable:
        k, y = 1, e[x]
        while y != x:
            y, k = e[y], k + 1
        order = math.lcm(order, k)
    m = order * max(1, math.ceil(n / order))
    p = tuple(range(n))
    base, k = e, m
    while k:
        if k & 1:
            p = tuple(base[x] for x in p)
        base = tuple(base[x] for x in base)
        k >>= 1
    return p


def core(G: Graph, seed: int | None = None) -> CoreResult:
    """Repeatedly retract onto the image of an idempotent non-surjective
    endomorphism until every endomorphism is surjective.

    ``seed`` shuffles the order in which vertices are tried for removal.
    """
    rng = random.Random(seed) if seed is not None else None
    verts = list(range(G.n))      # current retract, as vertices of G
    r = list(range(G.n))          # retraction G → current retract (values in G)
    while True:
        H = G.induced(verts)
        candidates = list(range(H.n))
        if rng is not None:
            rng.shuffle(candidates)
        step = None
        for v in candidates:
            step = _shrinking_endomorphism(H, v)
            if step is not None:
                break
        if step is None:
            break
        e = idempotent_power(step)
        image = sorted(set(e))
        r = [verts[e[verts.index(x)]] for x in r]
        verts = [verts[i] for i in image]
    C = G.induced(verts)
    pos = {v: i for i, v in enumerate(verts)}
    retraction = GraphHom(G, C, tuple(pos[x] for x in r))
    inclusion = GraphHom(C, G, tuple(verts))
    return CoreResult(C, tuple(verts), retraction, inclusion, tuple(range(C.n)))


def is_core(G: Graph) -> bool:
    return not any(_shrinking_endomorphism(G, v) for v in range(G.n))


def core_restart_stable(G: Graph, restarts: int = 3, seed: int = 0) -> bool:
    """Cores from shuffled removal orders are all isomorphic to the default one."""
    base = core(G).core
    rng = random.Random(seed)
    return all(is_isomorphic(base, core(G, seed=rng.randrange(1 << 30)).core)
               for _ in range(restarts))


def same_core(G: Graph, H: Graph) -> bool:
    return is_isomorphic(core(G).core, core(H).core)


# ---------------------------------------------------------------------------
# core predicates


@dataclass(frozen=True)
class BauslaughProfile:
    s_core: bool   # every endomorphism surjective
    r_core: bool   # no proper retraction
    a_core: bool   # every endomorphism an automorphism
    i_core: bool   # every endomorphism injective
    e_core: bool   # every endomorphism an embedding (reflects adjacency)

    def flags(self) -> tuple[bool, ...]:
        return (self.s_core, self.r_core, self.a_core, self.i_core, self.e_core)

    def agree(self) -> bool:
        return len(set(self.flags())) == 1


def bauslaugh_profile(G: Graph) -> BauslaughProfile:
    """All five predicates, decided by enumerating every endomorphism."""
    s = r = a = i = e = True
    ident = tuple(range(G.n))
    for f in iter_homs(G, G):
        s &= f.is_surjective()
        i &= f.is_injective()
        a &= f.is_iso()
        e &= f.is_embedding()
        if f.map != ident and tuple(f.map[x] for x in f.map) == f.map:
            r = False
    return BauslaughProfile(s, r, a, i, e)

