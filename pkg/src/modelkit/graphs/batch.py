"""Vectorized exhaustive checks over every homomorphism between small graphs.

Homomorphisms ``X → Y`` are rows of an ``int8`` array in lexicographic order;
maps are compared through base-``n`` integer codes.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .graph import Graph, all_graphs_upto, disjoint_union, tensor_product
from .hom import GraphHom, has_hom
from .model import check_condition_b_pi0, connected_graphs_upto, is_component_inclusion


def threads() -> int:
    """Worker cap from ``MODELKIT_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("MODELKIT_THREADS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=4096)
def adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n), dtype=bool)
    for u, v in G.edges:
        A[u, v] = A[v, u] = True
    return A


def hom_array(X: Graph, Y: Graph) -> np.ndarray:
    """All homomorphisms ``X → Y``, one per row, lexicographically sorted."""
    AX, AY = adjacency_matrix(X), adjacency_matrix(Y)
    cur = np.zeros((1, 0), dtype=np.int8)
    for v in range(X.n):
        k = cur.shape[0]
        new = np.empty((k * Y.n, v + 1), dtype=np.int8)
        new[:, :v] = np.repeat(cur, Y.n, axis=0)
        new[:, v] = np.tile(np.arange(Y.n, dtype=np.int8), k)
        ok = np.ones(len(new), dtype=bool)
        for u in range(v + 1):
            if AX[u, v]:
                ok &= AY[new[:, u], new[:, v]]
        cur = new[ok]
    return cur


_small_cache: dict[tuple[Graph, Graph], np.ndarray] = {}


def cached_hom_array(X: Graph, Y: Graph) -> np.ndarray:
    key = (X, Y)
    if key not in _small_cache:
        _small_cache[key] = hom_array(X, Y)
    return _small_cache[key]


def codes(maps: np.ndarray, base: int) -> np.ndarray:
    """Integer code of each row (last column least significant)."""
    out = np.zeros(maps.shape[:-1], dtype=np.int64)
    for j in range(maps.shape[-1]):
        out = out * base + maps[..., j]
    return out


def is_hom_rows(maps: np.ndarray, X: Graph, Y: Graph) -> np.ndarray:
    """Which rows of ``maps`` are homomorphisms ``X → Y``."""
    AY = adjacency_matrix(Y)
    ok = np.ones(len(maps), dtype=bool)
    for u, v in X.edges:
        ok &= AY[maps[:, u], maps[:, v]]
    return ok


def injective_rows(maps: np.ndarray) -> np.ndarray:
    n = maps.shape[1]
    ok = np.ones(len(maps), dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        ok &= maps[:, i] != maps[:, j]
    return ok


def section_flags(F: np.ndarray, X: Graph, Y: Graph) -> np.ndarray:
    """Row ``i``: does some ``s: Y → X`` satisfy ``F[i]∘s = id``?"""
    out = np.zeros(len(F), dtype=bool)
    if not len(F):
        return out
    S = hom_array(Y, X)
    S = S[injective_rows(S)]
    ident = np.arange(Y.n)
    for s in S:
        out |= (F[:, s] == ident).all(axis=1)
    return out


def factoring_oracle(F: np.ndarray, X: Graph, Y: Graph, k: int,
                     candidates: np.ndarray | None = None) -> np.ndarray:
    """Row ``i``: every homomorphism ``L → Y`` from a connected ``L`` with at
    most ``k`` vertices factors through ``F[i]``.

    Equivalent to right lifting against every cofibration ``K → K ⊔ L`` with
    ``|K ⊔ L| <= k``; smaller ``L`` run first so most rows drop out early.
    """
    alive = np.ones(len(F), dtype=bool) if candidates is None else candidates.copy()
    for L in sorted(connected_graphs_upto(k), key=lambda G: (G.n, len(G.edges), G.sorted_edges())):
        idx = np.flatnonzero(alive)
        if not len(idx):
            break
        HLY = cached_hom_array(L, Y)
        if not len(HLY):
            continue
        HLX = cached_hom_array(L, X)
        if not len(HLX):
            alive[idx] = False
            break
        width = Y.n ** L.n
        target = codes(HLY, Y.n)
        for chunk in np.array_split(idx, max(1, len(idx) * len(HLX) // 400_000 + 1)):
            comp = codes(F[chunk][:, HLX], Y.n)          # (rows, homs L→X)
            table = np.zeros((len(chunk), width), dtype=bool)
            table[np.arange(len(chunk))[:, None], comp] = True
            alive[chunk] = table[:, target].all(axis=1)
    return alive


# ---------------------------------------------------------------------------
# criterion-sized sweeps


@dataclass
class PairCheck:
    homs: int = 0
    sections: int = 0
    mismatches: list = field(default_factory=list)


def core_pair_check(X: Graph, Y: Graph, we: bool, k: int = 4) -> PairCheck:
    """Acyclic-fibration flag against the lifting oracle, and both explicit
    factorizations, for every homomorphism ``X → Y``."""
    F = hom_array(X, Y)
    out = PairCheck(homs=len(F))
    if not len(F):
        return out
    sec = section_flags(F, X, Y)
    out.sections = int(sec.sum())
    if we:
        oracle = factoring_oracle(F, X, Y, k)
    else:
        oracle = np.zeros(len(F), dtype=bool)
    bad = np.flatnonzero(sec != (oracle & we))
    for i in bad[:3]:
        out.mismatches.append(("acyclic_fib", tuple(int(x) for x in F[i])))

    # G → G ⊔ H → H
    M1 = disjoint_union(X, Y)
    i1 = GraphHom(X, M1, tuple(range(X.n)))
    R1 = np.concatenate([F, np.broadcast_to(np.arange(Y.n, dtype=np.int8), (len(F), Y.n))], axis=1)
    if not is_component_inclusion(i1):
        out.mismatches.append(("cof leg", ()))
    ok = is_hom_rows(R1, M1, Y) & (R1[:, :X.n] == F).all(1) & (R1[:, X.n:] == np.arange(Y.n)).all(1)
    if not ok.all():
        out.mismatches.append(("afib leg", tuple(int(x) for x in F[np.flatnonzero(~ok)[0]])))

    # G → G ⊔ (G × H) → H
    P = tensor_product(X, Y)
    M2 = disjoint_union(X, P)
    j1 = GraphHom(X, M2, tuple(range(X.n)))
    retr = GraphHom(M2, X, tuple(range(X.n)) + tuple(u for u in range(X.n) for _ in range(Y.n)))
    if not (is_component_inclusion(j1) and j1.then(retr).map == tuple(range(X.n))):
        out.mismatches.append(("acof leg", ()))
    p2 = np.tile(np.arange(Y.n, dtype=np.int8), X.n)
    R2 = np.concatenate([F, np.broadcast_to(p2, (len(F), len(p2)))], axis=1)
    ok = is_hom_rows(R2, M2, Y) & (R2[:, :X.n] == F).all(1)
    if not ok.all():
        out.mismatches.append(("fib leg", tuple(int(x) for x in F[np.flatnonzero(~ok)[0]])))
    if not fib_leg_lifts(X, Y):
        out.mismatches.append(("fib leg lifting", ()))
    return out


def fib_leg_lifts(X: Graph, Y: Graph) -> bool:
    """Bounded fibration test for every ``f ⊔ p2: X ⊔ (X × Y) → Y`` at once.

    A connected ``L`` maps into ``X ⊔ (X × Y)`` through one summand, so a
    square against ``K → K ⊔ L`` exists only when ``L → X``; a diagonal is then
    ``(h, c): L → X × Y`` for any ``h: L → X``, whatever ``f`` is.  That pair is
    a homomorphism exactly when the product's adjacency is the Kronecker
    product of the factors' adjacencies, which is what we check.
    """
    P = tensor_product(X, Y)
    return bool((adjacency_matrix(P) == np.kron(adjacency_matrix(X), adjacency_matrix(Y))).all())


def _core_row(args) -> tuple[int, list]:
    i, n, k, hom_row = args
    graphs = all_graphs_upto(n)
    X, total, bad = graphs[i], 0, []
    for j, Y in enumerate(graphs):
        r = core_pair_check(X, Y, bool(hom_row[j]), k)
        total += r.homs
        bad += [(X, Y, m) for m in r.mismatches]
    return total, bad


def all_core_checks(n: int = 5, k: int = 4) -> tuple[int, int, list]:
    """Run :func:`core_pair_check` over every ordered pair of graphs with at
    most ``n`` vertices; returns (pairs, homs, mismatches).  Rows are spread
    over ``threads()`` processes and merged in order."""
    graphs = all_graphs_upto(n)
    hom = hom_existence(graphs)
    we = hom & hom.T
    jobs = [(i, n, k, tuple(bool(x) for x in we[i])) for i in range(len(graphs))]
    workers = min(threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_core_row, jobs, chunksize=4))
    else:
        rows = [_core_row(job) for job in jobs]
    total = sum(t for t, _ in rows)
    bad = [b for _, bs in rows for b in bs]
    return len(graphs) ** 2, total, bad


def hom_existence(graphs: list[Graph]) -> np.ndarray:
    """``E[i, j]`` iff some homomorphism ``graphs[i] → graphs[j]``.

    A looped target receives every graph; a looped source maps only to looped
    targets; remaining pairs are searched.
    """
    m = len(graphs)
    loop = np.array([bool(G.loops) for G in graphs])
    E = np.zeros((m, m), dtype=bool)
    E[:, loop] = True
    plain = np.flatnonzero(~loop)
    for i in plain:
        for j in plain:
            E[i, j] = has_hom(graphs[i], graphs[j])
    return E


# ---------------------------------------------------------------------------
# cofibration normal form against lifting with retractions


@lru_cache(maxsize=None)
def automorphisms(G: Graph) -> tuple[tuple[int, ...], ...]:
    A = adjacency_matrix(G)
    return tuple(p for p in itertools.permutations(range(G.n))
                 if (A[np.ix_(p, p)] == A).all())


def _orbit_reps(F: np.ndarray, X: Graph, Y: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Representatives of ``F`` under ``f ↦ β∘f∘α`` and each row's orbit id."""
    base = codes(F, Y.n)
    best = base.copy()
    for a in automorphisms(X):
        for b in automorphisms(Y):
            b_arr = np.array(b, dtype=np.int8)
            np.minimum(best, codes(b_arr[F[:, list(a)]], Y.n), out=best)
    uniq, inverse = np.unique(best, return_inverse=True)
    first = {}
    for i, c in enumerate(base):
        first.setdefault(int(c), i)
    reps = np.array([first[int(c)] for c in uniq])
    return reps, inverse


@dataclass(frozen=True)
class Retraction:
    A: Graph
    B: Graph
    p: np.ndarray


def small_retractions(k: int) -> list[Retraction]:
    """Retractions between graphs with at most ``k`` vertices, one per
    isomorphism class of arrows, smallest first."""
    out = []
    graphs = all_graphs_upto(k)
    for A in graphs:
        for B in graphs:
            P = hom_array(A, B)
            if not len(P):
                continue
            has = section_flags(P, A, B)
            P = P[has]
            if not len(P):
                continue
            reps, _ = _orbit_reps(P, A, B)
            out += [Retraction(A, B, P[r]) for r in reps]
    out.sort(key=lambda r: (r.A.n + r.B.n, r.A.n, len(r.A.edges)))
    return out


def lifts_against(f: np.ndarray, X: Graph, Y: Graph, r: Retraction) -> bool:
    """Does ``f`` have the left lifting property against ``r.p``?"""
    A, B, p = r.A, r.B, r.p
    HXA = cached_hom_array(X, A)
    HYB = cached_hom_array(Y, B)
    if not len(HXA) or not len(HYB):
        return True
    HYA = cached_hom_array(Y, A)
    # squares: p∘a == b∘f
    pa = codes(p[HXA], B.n)
    bf = codes(HYB[:, f], B.n)
    ia, ib = np.nonzero(pa[:, None] == bf[None, :])
    if not len(ia):
        return True
    if not len(HYA):
        return False
    scale = B.n ** Y.n
    need = codes(HXA, A.n)[ia] * scale + codes(HYB, B.n)[ib]
    have = codes(HYA[:, f], A.n) * scale + codes(p[HYA], B.n)
    return bool(np.isin(need, have).all())


def cofibration_sweep(k: int = 4) -> tuple[int, int, list]:
    """Compare the component-inclusion test with left lifting against every
    retraction, over every homomorphism between graphs with at most ``k``
    vertices.  Returns (homs, cofibrations, mismatches)."""
    graphs = all_graphs_upto(k)
    retr = small_retractions(k)
    total = cofs = 0
    bad = []
    for X in graphs:
        for Y in graphs:
            F = hom_array(X, Y)
            if not len(F):
                continue
            total += len(F)
            reps, inverse = _orbit_reps(F, X, Y)
            oracle = np.array([all(lifts_against(F[i], X, Y, r) for r in retr) for i in reps])
            for i, f in enumerate(F):
                nf = is_component_inclusion(GraphHom(X, Y, tuple(int(x) for x in f)))
                cofs += nf
                if nf != oracle[inverse[i]]:
                    bad.append((X, Y, tuple(int(x) for x in f)))
    return total, cofs, bad


# ---------------------------------------------------------------------------
# condition (b) for the component adjunction


def pi0_condition_sweep(n: int = 5) -> tuple[int, int, list]:
    """Evaluate condition (b) on every homomorphism between graphs with at most
    ``n`` vertices.  The check depends on ``f`` only through its component
    map, so one representative per distinct component map is evaluated.
    Returns (homs, evaluations, failures)."""
    from .model import component_labels

    graphs = all_graphs_upto(n)
    total = evals = 0
    bad = []
    for X in graphs:
        lx = np.array(component_labels(X), dtype=np.int64)
        nx = len(X.components())
        firsts = [lx.tolist().index(c) for c in range(nx)]
        for Y in graphs:
            F = hom_array(X, Y)
            total += len(F)
            if not len(F):
                continue
            ly = np.array(component_labels(Y), dtype=np.int64)
            comp = ly[F[:, firsts]] if nx else np.zeros((len(F), 0), dtype=np.int64)
            _, reps = np.unique(codes(comp, max(1, Y.n)), return_index=True)
            for i in reps:
                evals += 1
                f = GraphHom(X, Y, tuple(int(x) for x in F[i]))
                if not check_condition_b_pi0(f):
                    bad.append(f)
    return total, evals, bad
