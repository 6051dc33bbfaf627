"""Finite undirected graphs with loops allowed and no multi-edges."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Vertices ``0..n-1``; edges are pairs ``(u, v)`` with ``u <= v``; ``(v, v)`` is a loop."""

    n: int
    edges: frozenset[tuple[int, int]]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u <= v < self.n):
                raise GraphError(f"bad edge ({u}, {v}) for {self.n} vertices")
        object.__setattr__(self, "_hash", hash((self.n, self.edges)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self._hash == other._hash and self.n == other.n and self.edges == other.edges

    @classmethod
    def make(cls, n: int, edges: Iterable[Sequence[int]] = (), name: str = "") -> Graph:
        norm = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) references a missing vertex")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm), name)

    # -- adjacency -------------------------------------------------------
    @property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmasks; bit ``v`` of ``adj[v]`` marks a loop."""
        return _adjacency(self.n, self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def has_loop(self, v: int) -> bool:
        return self.has_edge(v, v)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.has_loop(v))

    @property
    def loop_mask(self) -> int:
        return sum(1 << v for v in self.loops)

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.n) if self.adj[v] >> u & 1]

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    # -- structure -------------------------------------------------------
    def components(self) -> list[list[int]]:
        seen, out = set(), []
        for s in range(self.n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.neighbors(v):
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled ``0..k-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph.make(len(vertices), [(pos[u], pos[v]) for u, v in self.edges
                                          if u in pos and v in pos])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.make(self.n, [(perm[u], perm[v]) for u, v in self.edges], self.name)

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> Graph:
        rows = [(i + 1, line.split("#")[0].strip()) for i, line in enumerate(text.splitlines())]
        rows = [(i, r) for i, r in rows if r]
        if not rows:
            raise GraphError("empty graph file")
        try:
            n = int(rows[0][1])
        except ValueError:
            raise GraphError(f"line {rows[0][0]}: expected the vertex count") from None
        edges = []
        for lineno, r in rows[1:]:
            parts = r.strip("()").replace(",", " ").split()
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: expected 'u v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: vertices must be integers") from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"line {lineno}: vertex out of range")
            edges.append((u, v))
        return cls.make(n, edges, name)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"Graph({label}n={self.n}, edges={self.sorted_edges()})"


@lru_cache(maxsize=65536)
def _adjacency(n: int, edges: frozenset) -> tuple[int, ...]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(adj)


# ---------------------------------------------------------------------------
# constructions


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for G in graphs:
        edges += [(u + off, v + off) for u, v in G.edges]
        off += G.n
    return Graph.make(off, edges)


def tensor_product(G: Graph, H: Graph) -> Graph:
    """Categorical product: ``(u, x) ~ (v, y)`` iff ``u ~ v`` and ``x ~ y``.
    Vertex ``(u, x)`` is numbered ``u * H.n + x``."""
    edges = []
    for u, v in G.edges:
        for x, y in H.edges:
            edges.append((u * H.n + x, v * H.n + y))
            edges.append((u * H.n + y, v * H.n + x))
    return Graph.make(G.n * H.n, edges)


# ---------------------------------------------------------------------------
# named graphs


def empty(n: int = 0) -> Graph:
    return Graph.make(n, [], name=f"E{n}" if n else "empty")


def complete(n: int) -> Graph:
    return Graph.make(n, itertools.combinations(range(n), 2), name=f"K{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph.make(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def path(n: int) -> Graph:
    """Path on ``n`` vertices."""
    return Graph.make(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def looped_point() -> Graph:
    return Graph.make(1, [(0, 0)], name="L1")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.make(10, outer + spokes + inner, name="Petersen")


def gnp(n: int, p: float, seed: int, loops: bool = False) -> Graph:
    """Erdős–Rényi graph from a seeded generator; loops included with
    probability ``p`` when ``loops`` is set."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    return Graph.make(n, [e for e in pairs if rng.random() < p], name=f"G({n},{p},{seed})")


def named_graph(name: str) -> Graph:
    if name == "L1":
        return looped_point()
    if name == "Petersen":
        return petersen()
    if name == "empty":
        return empty(0)
    kind, num = name[0], name[1:]
    if num.isdigit():
        k = int(num)
        if kind == "K":
            return complete(k)
        if kind == "C":
            return cycle(k)
        if kind == "P":
            return path(k)
        if kind == "E":
            return empty(k)
    raise KeyError(f"unknown named graph {name!r}")


def graph_corpus() -> list[Graph]:
    """K1..K5, C3..C7, P2..P5, L1 and Petersen."""
    return ([complete(k) for k in range(1, 6)] + [cycle(k) for k in range(3, 8)]
            + [path(k) for k in range(2, 6)] + [looped_point(), petersen()])


# ---------------------------------------------------------------------------
# exhaustive enumeration up to isomorphism


def _simple_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def _simple_reps(n: int) -> tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]:
    """Loopless graphs on ``n`` vertices up to isomorphism, as ``(code, automorphisms)``.

    ``code`` is the minimal edge bitmask over all relabellings.
    """
    import numpy as np

    pairs = _simple_pairs(n)
    m = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    codes = np.arange(1 << m, dtype=np.int64)
    canon = codes.copy()
    perm_bits = []
    for p in perms:
        target = [index[tuple(sorted((p[u], p[v])))] for u, v in pairs]
        perm_bits.append(target)
        img = np.zeros_like(codes)
        for k, t in enumerate(target):
            img |= ((codes >> k) & 1) << t
        np.minimum(canon, img, out=canon)
    out = []
    for c in np.unique(canon):
        c = int(c)
        autos = []
        for p, target in zip(perms, perm_bits):
            img = 0
            for k, t in enumerate(target):
                img |= ((c >> k) & 1) << t
            if img == c:
                autos.append(p)
        out.append((c, tuple(autos)))
    return tuple(out)


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    pairs = _simple_pairs(n)
    out = []
    for code, autos in _simple_reps(n):
        base = [pairs[k] for k in range(len(pairs)) if code >> k & 1]
        seen = set()
        for mask in range(1 << n):
            if mask in seen:
                continue
            orbit = {sum(1 << p[v] for v in range(n) if mask >> v & 1) for p in autos}
            seen |= orbit
            loops = [(v, v) for v in range(n) if mask >> v & 1]
            out.append(Graph.make(n, base + loops))
    return tuple(out)


def all_graphs(n: int, loops: bool = True) -> list[Graph]:
    """Every graph on exactly ``n`` vertices, one per isomorphism class."""
    gs = _all_graphs(n)
    return list(gs) if loops else [G for G in gs if not G.loops]


def all_graphs_upto(n: int, loops: bool = True) -> list[Graph]:
    return [G for k in range(n + 1) for G in all_graphs(k, loops)]
