"""Semi-simplicial sets truncated at a fixed level ``N``.

A set ``X`` has simplices ``0..|X_k|-1`` at each level ``k <= N`` and face
tables ``faces[k][x] = (d_0 x, ..., d_k x)`` for ``k >= 1``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .fincat import FinCategory

TOP = math.inf  # dimension marker: nonempty at the truncation level
EMPTY_DIM = -1  # dimension of the empty set, below D_0


class SssError(ValueError):
    pass


@dataclass(frozen=True)
class SemiSimplicialSet:
    N: int
    sizes: tuple[int, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]  # faces[k] for k = 0..N; faces[0] is ()

    @classmethod
    def make(cls, N: int, sizes: Sequence[int], faces: dict[int, Sequence[Sequence[int]]] | None = None,
             check: bool = True) -> SemiSimplicialSet:
        if N < 0:
            raise SssError("truncation level must be nonnegative")
        if len(sizes) != N + 1:
            raise SssError(f"need {N + 1} level sizes, got {len(sizes)}")
        faces = faces or {}
        table = [()]
        for k in range(1, N + 1):
            rows = tuple(tuple(r) for r in faces.get(k, ()))
            table.append(rows)
        X = cls(N, tuple(sizes), tuple(table))
        if check:
            bad = validate_sss(X)
            if bad:
                raise SssError(bad[0])
        return X

    def face(self, k: int, i: int, x: int) -> int:
        return self.faces[k][x][i]

    def is_empty(self) -> bool:
        return not any(self.sizes)

    def to_text(self) -> str:
        lines = [str(self.N)]
        for k in range(self.N + 1):
            lines.append(f"{k} {self.sizes[k]}")
            if k:
                lines += [" ".join(map(str, row)) for row in self.faces[k]]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> SemiSimplicialSet:
        rows = [(i + 1, line.split("#")[0].strip()) for i, line in enumerate(text.splitlines())]
        rows = [(i, r) for i, r in rows if r]
        pos = 0

        def take() -> tuple[int, list[int]]:
            nonlocal pos
            if pos >= len(rows):
                raise SssError("unexpected end of file")
            lineno, r = rows[pos]
            pos += 1
            try:
                return lineno, [int(t) for t in r.split()]
            except ValueError:
                raise SssError(f"line {lineno}: expected integers") from None

        lineno, head = take()
        if len(head) != 1:
            raise SssError(f"line {lineno}: expected the truncation level")
        N = head[0]
        sizes, faces = [], {}
        for k in range(N + 1):
            lineno, hdr = take()
            if len(hdr) != 2 or hdr[0] != k:
                raise SssError(f"line {lineno}: expected '{k} <count>'")
            sizes.append(hdr[1])
            if k:
                rows_k = []
                for _ in range(hdr[1]):
                    lineno, fs = take()
                    if len(fs) != k + 1:
                        raise SssError(f"line {lineno}: a {k}-simplex needs {k + 1} faces")
                    rows_k.append(fs)
                faces[k] = rows_k
        if pos != len(rows):
            raise SssError(f"line {rows[pos][0]}: trailing content")
        return cls.make(N, sizes, faces)


def validate_sss(X: SemiSimplicialSet) -> list[str]:
    """Every violated shape constraint or face identity ``d_i d_j = d_{j-1} d_i``."""
    out = []
    if len(X.sizes) != X.N + 1 or len(X.faces) != X.N + 1:
        return ["level count does not match the truncation"]
    for k in range(1, X.N + 1):
        if len(X.faces[k]) != X.sizes[k]:
            out.append(f"level {k}: {len(X.faces[k])} face rows for {X.sizes[k]} simplices")
            continue
        for x, row in enumerate(X.faces[k]):
            if len(row) != k + 1:
                out.append(f"simplex {x} at level {k} has {len(row)} faces")
            elif any(not 0 <= y < X.sizes[k - 1] for y in row):
                out.append(f"simplex {x} at level {k} has a face out of range")
    if out:
        return out
    for k in range(2, X.N + 1):
        for x, row in enumerate(X.faces[k]):
            for i, j in itertools.combinations(range(k + 1), 2):
                if X.faces[k - 1][row[j]][i] != X.faces[k - 1][row[i]][j - 1]:
                    out.append(f"d_{i} d_{j} != d_{j - 1} d_{i} on simplex {x} at level {k}")
    return out


def dimension(X: SemiSimplicialSet) -> float:
    """Smallest ``n`` with ``X_k`` empty above ``n``; :data:`TOP` when the
    top level is inhabited (the truncation cannot see further)."""
    if X.sizes[X.N]:
        return TOP
    return max((k for k in range(X.N + 1) if X.sizes[k]), default=EMPTY_DIM)


def level_of(d: float, N: int) -> int:
    return N if d == TOP else int(d)


def standard_D(n: int, N: int) -> SemiSimplicialSet:
    """One simplex at each level ``<= n``, nothing above; ``n = -1`` is empty."""
    if not EMPTY_DIM <= n <= N:
        raise SssError(f"need -1 <= n <= N, got n={n}, N={N}")
    sizes = [1 if k <= n else 0 for k in range(N + 1)]
    faces = {k: [[0] * (k + 1)] for k in range(1, n + 1)}
    return SemiSimplicialSet.make(N, sizes, faces)


def empty_sss(N: int) -> SemiSimplicialSet:
    return SemiSimplicialSet.make(N, [0] * (N + 1))


def boundary_triangle(N: int = 2) -> SemiSimplicialSet:
    """Three vertices and three edges ``01, 12, 02`` (``d_0`` drops the first vertex)."""
    return SemiSimplicialSet.make(N, [3, 3] + [0] * (N - 1), {1: [[1, 0], [2, 1], [2, 0]]})


def triangle(N: int = 2) -> SemiSimplicialSet:
    if N < 2:
        raise SssError("a 2-simplex needs N >= 2")
    return SemiSimplicialSet.make(N, [3, 3, 1] + [0] * (N - 2),
                                  {1: [[1, 0], [2, 1], [2, 0]], 2: [[1, 2, 0]]})


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class SssMap:
    source: SemiSimplicialSet
    target: SemiSimplicialSet
    levels: tuple[tuple[int, ...], ...]

    def violations(self) -> list[str]:
        X, Y = self.source, self.target
        if X.N != Y.N:
            return ["source and target have different truncations"]
        out = []
        for k in range(X.N + 1):
            if len(self.levels[k]) != X.sizes[k] or any(not 0 <= y < Y.sizes[k] for y in self.levels[k]):
                out.append(f"level {k} has the wrong shape")
        if out:
            return out
        for k in range(1, X.N + 1):
            for x, row in enumerate(X.faces[k]):
                img = Y.faces[k][self.levels[k][x]]
                for i in range(k + 1):
                    if self.levels[k - 1][row[i]] != img[i]:
                        out.append(f"face d_{i} not preserved at simplex {x}, level {k}")
        return out

    def check(self) -> SssMap:
        bad = self.violations()
        if bad:
            raise SssError(bad[0])
        return self

    def then(self, g: SssMap) -> SssMap:
        """``g ∘ self``."""
        return SssMap(self.source, g.target,
                      tuple(tuple(g.levels[k][x] for x in lv) for k, lv in enumerate(self.levels)))

    def is_iso(self) -> bool:
        return all(sorted(lv) == list(range(self.target.sizes[k])) and len(lv) == self.target.sizes[k]
                   for k, lv in enumerate(self.levels))

    def is_levelwise_injective(self) -> bool:
        return all(len(set(lv)) == len(lv) for lv in self.levels)

    @classmethod
    def identity(cls, X: SemiSimplicialSet) -> SssMap:
        return cls(X, X, tuple(tuple(range(s)) for s in X.sizes))


def iter_maps(X: SemiSimplicialSet, Y: SemiSimplicialSet,
              rng: random.Random | None = None) -> Iterator[SssMap]:
    """All maps ``X → Y``, level by level; ``rng`` shuffles candidate order."""
    if X.N != Y.N:
        raise SssError("truncations differ")
    N = X.N

    def options(k: int, prev: tuple[int, ...]) -> list[list[int]]:
        opts = []
        for x in range(X.sizes[k]):
            if k == 0:
                cand = list(range(Y.sizes[0]))
            else:
                want = tuple(prev[z] for z in X.faces[k][x])
                cand = [y for y in range(Y.sizes[k]) if Y.faces[k][y] == want]
            if rng is not None:
                rng.shuffle(cand)
            opts.append(cand)
        return opts

    def rec(k: int, acc: list[tuple[int, ...]]):
        if k > N:
            yield SssMap(X, Y, tuple(acc))
            return
        opts = options(k, acc[-1] if acc else ())
        for choice in itertools.product(*opts):
            yield from rec(k + 1, acc + [tuple(choice)])

    yield from rec(0, [])


def find_map(X: SemiSimplicialSet, Y: SemiSimplicialSet, rng: random.Random | None = None) -> SssMap | None:
    return next(iter_maps(X, Y, rng), None)


def unit_map(X: SemiSimplicialSet) -> SssMap:
    """The map ``X → D_{dim X}``, constant at each level; asserted unique."""
    D = standard_D(level_of(dimension(X), X.N), X.N)
    f = SssMap(X, D, tuple(tuple([0] * s) for s in X.sizes)).check()
    return f


# ---------------------------------------------------------------------------
# limits and colimits


@dataclass(frozen=True)
class SssDiagram:
    objects: tuple[SemiSimplicialSet, ...]
    arrows: tuple[tuple[int, int, SssMap], ...] = ()

    @classmethod
    def cospan(cls, f: SssMap, g: SssMap) -> SssDiagram:
        return cls((f.source, g.source, f.target), ((0, 2, f), (1, 2, g)))

    @classmethod
    def span(cls, f: SssMap, g: SssMap) -> SssDiagram:
        return cls((f.target, g.target, f.source), ((2, 0, f), (2, 1, g)))


@dataclass(frozen=True)
class SssCone:
    apex: SemiSimplicialSet
    legs: tuple[SssMap, ...]


def _level_N(D: SssDiagram, N: int | None) -> int:
    if D.objects:
        Ns = {X.N for X in D.objects}
        if len(Ns) != 1:
            raise SssError("objects have different truncations")
        return Ns.pop()
    if N is None:
        raise SssError("an empty diagram needs an explicit truncation")
    return N


def sss_limit(D: SssDiagram, N: int | None = None) -> SssCone:
    """Levelwise compatible families with componentwise faces."""
    N = _level_N(D, N)
    fams: list[list[tuple[int, ...]]] = []
    for k in range(N + 1):
        fams.append([f for f in itertools.product(*(range(X.sizes[k]) for X in D.objects))
                     if all(h.levels[k][f[i]] == f[j] for i, j, h in D.arrows)])
    index = [{f: n for n, f in enumerate(lv)} for lv in fams]
    faces = {k: [[index[k - 1][tuple(X.faces[k][f[m]][i] for m, X in enumerate(D.objects))]
                  for i in range(k + 1)] for f in fams[k]] for k in range(1, N + 1)}
    apex = SemiSimplicialSet.make(N, [len(lv) for lv in fams], faces)
    legs = tuple(SssMap(apex, X, tuple(tuple(f[m] for f in fams[k]) for k in range(N + 1)))
                 for m, X in enumerate(D.objects))
    return SssCone(apex, legs)


def sss_colimit(D: SssDiagram, N: int | None = None) -> SssCone:
    """Levelwise disjoint unions modulo ``x ~ h(x)``; faces induced on classes."""
    N = _level_N(D, N)
    label_levels, sizes, faces = [], [], {}
    for k in range(N + 1):
        offs = list(itertools.accumulate((X.sizes[k] for X in D.objects), initial=0))
        parent = list(range(offs[-1]))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, h in D.arrows:
            for x, y in enumerate(h.levels[k]):
                a, b = find(offs[i] + x), find(offs[j] + y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots = sorted({find(x) for x in range(offs[-1])})
        cls = {r: n for n, r in enumerate(roots)}
        label = [cls[find(x)] for x in range(offs[-1])]
        label_levels.append((offs, label))
        sizes.append(len(roots))
        if k:
            prev_offs, prev_label = label_levels[k - 1]
            rows: list[list[int] | None] = [None] * len(roots)
            for m, X in enumerate(D.objects):
                for x, row in enumerate(X.faces[k]):
                    img = [prev_label[prev_offs[m] + z] for z in row]
                    c = label[offs[m] + x]
                    if rows[c] is None:
                        rows[c] = img
                    elif rows[c] != img:
                        raise SssError("faces are not well defined on the quotient")
            faces[k] = rows
    apex = SemiSimplicialSet.make(N, sizes, faces)
    legs = []
    for m, X in enumerate(D.objects):
        legs.append(SssMap(X, apex, tuple(
            tuple(label_levels[k][1][label_levels[k][0][m] + x] for x in range(X.sizes[k]))
            for k in range(N + 1))))
    return SssCone(apex, tuple(legs))


def sss_pullback(f: SssMap, g: SssMap) -> SssCone:
    return sss_limit(SssDiagram.cospan(f, g))


def sss_pushout(f: SssMap, g: SssMap) -> SssCone:
    return sss_colimit(SssDiagram.span(f, g))


def sss_coproduct(*objs: SemiSimplicialSet) -> SssCone:
    return sss_colimit(SssDiagram(tuple(objs)))


def sss_product(*objs: SemiSimplicialSet) -> SssCone:
    return sss_limit(SssDiagram(tuple(objs)))


# ---------------------------------------------------------------------------
# the dimension adjunction


@dataclass(frozen=True)
class AdjointFactorization:
    mid: SemiSimplicialSet
    i: SssMap
    p: SssMap
    dim_source: float
    dim_mid: float

    @property
    def f_of_i_is_identity(self) -> bool:
        """``F(i)`` is the identity of ``dim X`` in the dimension poset."""
        return self.dim_source == self.dim_mid


def adjoint_factorize(f: SssMap) -> AdjointFactorization:
    """``X → Y ×_{GF(Y)} GF(X) → Y`` through the levelwise pullback of the
    unit of ``Y`` along ``GF(f)``."""
    X, Y = f.source, f.target
    N = X.N
    eta_y = unit_map(Y)
    gfx = standard_D(level_of(dimension(X), N), N)
    gff = SssMap(gfx, eta_y.target, tuple(tuple([0] * s) for s in gfx.sizes)).check()
    P = sss_pullback(eta_y, gff)
    index = [{(fam_y, fam_d): n for n, (fam_y, fam_d) in enumerate(zip(P.legs[0].levels[k], P.legs[1].levels[k]))}
             for k in range(N + 1)]
    i = SssMap(X, P.apex, tuple(tuple(index[k][(f.levels[k][x], 0)] for x in range(X.sizes[k]))
                                for k in range(N + 1))).check()
    p = P.legs[0]
    return AdjointFactorization(P.apex, i, p, dimension(X), dimension(P.apex))


def truncate_above(Y: SemiSimplicialSet, n: int) -> SemiSimplicialSet:
    sizes = [s if k <= n else 0 for k, s in enumerate(Y.sizes)]
    faces = {k: Y.faces[k] for k in range(1, min(n, Y.N) + 1)}
    return SemiSimplicialSet.make(Y.N, sizes, faces)


@dataclass(frozen=True)
class DimCutFlags:
    we: bool
    cof: bool
    fib: bool


def classify_dim_cut(f: SssMap, n: int, variant: str) -> DimCutFlags:
    """Flags of ``f`` in the cut structure with ``I = {dim <= n}``, ``P = {dim > n}``."""
    iso = f.is_iso()
    src_P = dimension(f.source) > n
    tgt_P = dimension(f.target) > n
    if variant == "balanced":
        return DimCutFlags(iso or not tgt_P or src_P, iso or tgt_P, iso or not src_P)
    if variant == "right":
        return DimCutFlags(iso or src_P, True, iso or not src_P)
    if variant == "left":
        return DimCutFlags(iso or not tgt_P, iso or tgt_P, True)
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# random generation and small categories


def _random_simplex(X_faces_prev: Sequence[tuple[int, ...]], k: int, n_prev: int,
                    rng: random.Random) -> list[int] | None:
    """A random face tuple at level ``k`` satisfying the identities, by
    backtracking over shuffled candidates."""
    if k == 1:
        return [rng.randrange(n_prev), rng.randrange(n_prev)] if n_prev else None
    cands = list(range(n_prev))

    def rec(row: list[int]):
        j = len(row)
        if j == k + 1:
            return row
        order = cands[:]
        rng.shuffle(order)
        for z in order:
            if all(X_faces_prev[z][i] == X_faces_prev[row[i]][j - 1] for i in range(j)):
                out = rec(row + [z])
                if out:
                    return out
        return None

    return rec([])


def random_sss(N: int, max_per_level: int, rng: random.Random) -> SemiSimplicialSet:
    sizes = [rng.randint(0, max_per_level)]
    faces = {}
    for k in range(1, N + 1):
        want = rng.randint(0, max_per_level)
        rows = []
        for _ in range(want):
            row = _random_simplex(faces.get(k - 1, ()), k, sizes[-1], rng)
            if row is None:
                break
            rows.append(row)
        sizes.append(len(rows))
        faces[k] = rows
    return SemiSimplicialSet.make(N, sizes, faces)


def random_map(N: int, max_per_level: int, rng: random.Random, tries: int = 100) -> SssMap:
    """A random map between random semi-simplicial sets."""
    for _ in range(tries):
        X = random_sss(N, max_per_level, rng)
        Y = random_sss(N, max_per_level, rng)
        f = find_map(X, Y, rng)
        if f is not None:
            return f
    raise SssError("no map found")


def standard_chain_category(n: int) -> FinCategory:
    """The full subcategory on ``∅, D_0, ..., D_n`` (truncated at ``n``)."""
    objs = [empty_sss(n)] + [standard_D(k, n) for k in range(n + 1)]
    names = ["∅"] + [f"D{k}" for k in range(n + 1)]
    return FinCategory.from_concrete(
        list(range(len(objs))),
        lambda a, b: list(iter_maps(objs[a], objs[b])),
        compose=lambda g, f: f.then(g),
        identity=lambda a: SssMap.identity(objs[a]),
        key=lambda m: m.levels,
        object_names=names, name=f"S{n}")
