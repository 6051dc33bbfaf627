"""Built-in finite categories."""
from __future__ import annotations

import itertools
from functools import lru_cache

from .fincat import FinCategory


def poset(names, covers, name: str = "") -> FinCategory:
    """Thin category generated by the covering pairs ``(a, b)`` meaning ``a < b``."""
    names = list(names)
    idx = {n: i for i, n in enumerate(names)}
    n = len(names)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in covers:
        leq[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if leq[i][k] and leq[k][j]:
                    leq[i][j] = True
    return FinCategory.from_preorder(names, lambda a, b: leq[a][b], name=name)


def E() -> FinCategory:
    return poset(["∅", "*"], [("∅", "*")], name="E")


def E_prime() -> FinCategory:
    return poset(["∅", "E", "*"], [("∅", "E"), ("E", "*")], name="E'")


def LAT4() -> FinCategory:
    return poset(["∅", "X", "A", "B", "*"],
                 [("∅", "X"), ("X", "A"), ("X", "B"), ("A", "*"), ("B", "*")], name="LAT4")


def LAT5() -> FinCategory:
    return poset(["∅", "X", "A", "B", "C", "*"],
                 [("∅", "X"), ("X", "A"), ("X", "B"), ("X", "C"),
                  ("A", "*"), ("B", "*"), ("C", "*")], name="LAT5")


def SQ() -> FinCategory:
    """The commutative square used against right properness."""
    return poset(["∅", "A", "B", "*"], [("∅", "A"), ("∅", "B"), ("A", "*"), ("B", "*")], name="SQ")


def HEX() -> FinCategory:
    return poset(["∅", "A", "B", "C", "D", "*"],
                 [("∅", "A"), ("A", "B"), ("B", "*"), ("∅", "C"), ("C", "D"), ("D", "*")],
                 name="HEX")


def chain(n: int) -> FinCategory:
    """The total order ``0 < 1 < … < n``."""
    names = [str(i) for i in range(n + 1)]
    return poset(names, list(zip(names, names[1:])), name=f"chain{n}")


def one_object() -> FinCategory:
    return FinCategory([0], [0], [0], {(0, 0): 0}, ("*",), ("id_*",), name="1")


def retract_pair() -> FinCategory:
    """Free category on ``r: A → B``, ``s: B → A`` with ``r∘s = id_B``.

    Morphisms: ``id_A, id_B, r, s, e = s∘r``.
    """
    idA, idB, r, s, e = range(5)
    src = [0, 1, 0, 1, 0]
    tgt = [0, 1, 1, 0, 0]
    table = {
        (r, s): idB, (s, r): e, (e, e): e, (r, e): r, (e, s): s,
    }
    for m in range(5):
        table[(m, [idA, idB][src[m]])] = m
        table[([idA, idB][tgt[m]], m)] = m
    return FinCategory(src, tgt, [idA, idB], table, ("A", "B"),
                       ("id_A", "id_B", "r", "s", "e"), name="Retract")


def parallel_pair() -> FinCategory:
    """Two objects with two parallel arrows ``A ⇉ B``."""
    src, tgt = [0, 1, 0, 0], [0, 1, 1, 1]
    table = {}
    for m in range(4):
        table[(m, src[m])] = m
        table[(tgt[m], m)] = m
    return FinCategory(src, tgt, [0, 1], table, ("A", "B"), ("id_A", "id_B", "u", "v"),
                       name="Parallel")


def finite_sets(sizes=(0, 1, 2)) -> FinCategory:
    """Full subcategory of finite sets on the given cardinalities."""
    def homs(a, b):
        return itertools.product(range(b), repeat=a)

    return FinCategory.from_concrete(
        list(sizes), homs,
        compose=lambda g, f: tuple(g[x] for x in f),
        identity=lambda a: tuple(range(a)),
        object_names=[str(s) for s in sizes], name="FinSet" + "".join(map(str, sizes)))


@lru_cache(maxsize=None)
def _poset_relations(n: int) -> tuple[frozenset, ...]:
    """Strict orders on ``range(n)`` up to isomorphism, each naturally labelled."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen: set[frozenset] = set()
    reps = []
    perms = list(itertools.permutations(range(n)))
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        if rel in seen:
            continue
        reps.append(rel)
        for p in perms:
            img = frozenset((p[a], p[b]) for a, b in rel)
            if all(a < b for a, b in img):
                seen.add(img)
    return tuple(reps)


def all_posets(max_size: int = 5, min_size: int = 1) -> list[FinCategory]:
    """Every poset with ``min_size..max_size`` elements, one per isomorphism class."""
    out = []
    for n in range(min_size, max_size + 1):
        for k, rel in enumerate(_poset_relations(n)):
            out.append(FinCategory.from_preorder(
                [f"p{i}" for i in range(n)],
                lambda a, b, rel=rel: a == b or (a, b) in rel,
                name=f"poset{n}.{k}"))
    return out


NAMED = {
    "E": E,
    "E'": E_prime,
    "Eprime": E_prime,
    "LAT4": LAT4,
    "LAT5": LAT5,
    "SQ": SQ,
    "HEX": HEX,
    "Retract": retract_pair,
    "Parallel": parallel_pair,
    "1": one_object,
}

# distinguished cuts used in the worked examples: names of the ∅-side objects
PAPER_CUTS = {
    "E": ("∅",),
    "SQ": ("∅", "A"),
    "HEX": ("∅", "A", "B"),
}


def named(name: str) -> FinCategory:
    if name in NAMED:
        return NAMED[name]()
    if name.startswith("chain") and name[5:].isdigit():
        return chain(int(name[5:]))
    raise KeyError(f"unknown built-in category {name!r}")


def corpus() -> list[FinCategory]:
    """The named categories plus every poset on at most five elements."""
    return [E(), E_prime(), LAT4(), LAT5(), SQ(), HEX()] + all_posets(5)
