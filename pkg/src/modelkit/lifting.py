"""Lifting problems, lifting complements and weak factorization systems,
decided by exhaustive enumeration over a :class:`FinCategory`."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .fincat import FinCategory, CategoryError, isomorphisms, pullback, pushout


@dataclass(frozen=True)
class LiftingSquare:
    """``top: A → X``, ``f: A → B``, ``g: X → Y``, ``bottom: B → Y`` with
    ``g∘top == bottom∘f``."""

    f: int
    g: int
    top: int
    bottom: int

    @classmethod
    def make(cls, C: FinCategory, f: int, g: int, top: int, bottom: int) -> LiftingSquare:
        for m in (f, g, top, bottom):
            C.check_morphism(m)
        if (C.src[top], C.tgt[top]) != (C.src[f], C.src[g]) or \
                (C.src[bottom], C.tgt[bottom]) != (C.tgt[f], C.tgt[g]):
            raise CategoryError("square edges have mismatched endpoints")
        if C.compose(g, top) != C.compose(bottom, f):
            raise CategoryError("square does not commute")
        return cls(f, g, top, bottom)


def squares(C: FinCategory, f: int, g: int) -> Iterator[LiftingSquare]:
    """All commuting squares with ``f`` on the left and ``g`` on the right."""
    for top in C.hom(C.src[f], C.src[g]):
        gt = C.compose(g, top)
        for bottom in C.hom(C.tgt[f], C.tgt[g]):
            if C.compose(bottom, f) == gt:
                yield LiftingSquare(f, g, top, bottom)


def solve_lifting(C: FinCategory, sq: LiftingSquare) -> int | None:
    """Lowest-id diagonal ``h`` with ``h∘f == top`` and ``g∘h == bottom``."""
    for h in C.hom(C.tgt[sq.f], C.src[sq.g]):
        if C.compose(h, sq.f) == sq.top and C.compose(sq.g, h) == sq.bottom:
            return h
    return None


def _lift_table(C: FinCategory) -> dict[tuple[int, int], LiftingSquare | None]:
    return C._cache.setdefault("lift", {})


def lifting_obstruction(C: FinCategory, f: int, g: int) -> LiftingSquare | None:
    """First square ``f`` vs ``g`` without a diagonal, or ``None`` if ``f ⧄ g``."""
    table = _lift_table(C)
    key = (f, g)
    if key not in table:
        table[key] = next((sq for sq in squares(C, f, g) if solve_lifting(C, sq) is None), None)
    return table[key]


def has_llp(C: FinCategory, f: int, g: int) -> bool:
    return lifting_obstruction(C, f, g) is None


@dataclass(frozen=True)
class MorphismClass:
    """A set of morphisms of one category; ``category_hash`` pins the category."""

    members: frozenset[int]
    category_hash: str

    @classmethod
    def of(cls, C: FinCategory, members: Iterable[int]) -> MorphismClass:
        ms = frozenset(members)
        for m in ms:
            C.check_morphism(m)
        return cls(ms, C.content_hash)

    @classmethod
    def all(cls, C: FinCategory) -> MorphismClass:
        return cls(frozenset(C.morphisms), C.content_hash)

    @classmethod
    def isos(cls, C: FinCategory) -> MorphismClass:
        return cls(isomorphisms(C), C.content_hash)

    @classmethod
    def where(cls, C: FinCategory, pred) -> MorphismClass:
        return cls(frozenset(m for m in C.morphisms if pred(m)), C.content_hash)

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def _other(self, other: MorphismClass) -> frozenset[int]:
        if other.category_hash != self.category_hash:
            raise CategoryError("morphism classes live over different categories")
        return other.members

    def __and__(self, other: MorphismClass) -> MorphismClass:
        return MorphismClass(self.members & self._other(other), self.category_hash)

    def __or__(self, other: MorphismClass) -> MorphismClass:
        return MorphismClass(self.members | self._other(other), self.category_hash)

    def __sub__(self, other: MorphismClass) -> MorphismClass:
        return MorphismClass(self.members - self._other(other), self.category_hash)

    def __le__(self, other: MorphismClass) -> bool:
        return self.members <= self._other(other)

    def check(self, C: FinCategory) -> None:
        if self.category_hash != C.content_hash:
            raise CategoryError("stale morphism class: category hash mismatch")

    def to_dict(self) -> dict:
        return {"category_hash": self.category_hash, "members": sorted(self.members)}

    @classmethod
    def from_dict(cls, data: dict, C: FinCategory | None = None) -> MorphismClass:
        out = cls(frozenset(data["members"]), data["category_hash"])
        if C is not None:
            out.check(C)
        return out


def complement(C: FinCategory, S: MorphismClass, side: str) -> MorphismClass:
    """``S^⧄`` for ``side='right'`` and ``^⧄S`` for ``side='left'``."""
    S.check(C)
    if side == "right":
        return MorphismClass.where(C, lambda g: all(has_llp(C, f, g) for f in S.members))
    if side == "left":
        return MorphismClass.where(C, lambda f: all(has_llp(C, f, g) for g in S.members))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


# ---------------------------------------------------------------------------
# retracts


@dataclass(frozen=True)
class RetractWitness:
    """``f`` is a retract of ``g``: ``r∘i = id``, ``s∘j = id``, ``j∘f = g∘i``,
    ``s∘g = f∘r``."""

    f: int
    g: int
    i: int
    r: int
    j: int
    s: int


def _split_pairs(C: FinCategory, a: int, b: int) -> list[tuple[int, int]]:
    """Pairs ``(i: a → b, r: b → a)`` with ``r∘i = id_a``."""
    key = ("split", a, b)
    if key not in C._cache:
        ident = C.identities[a]
        C._cache[key] = [(i, r) for i in C.hom(a, b) for r in C.hom(b, a)
                         if C.compose(r, i) == ident]
    return C._cache[key]


def retract_witness(C: FinCategory, f: int, g: int) -> RetractWitness | None:
    """Exhibit ``f`` as a retract of ``g`` in the arrow category, if possible."""
    a, b = C.src[f], C.tgt[f]
    a2, b2 = C.src[g], C.tgt[g]
    for i, r in _split_pairs(C, a, a2):
        gi = C.compose(g, i)
        fr = C.compose(f, r)
        for j, s in _split_pairs(C, b, b2):
            if C.compose(j, f) == gi and C.compose(s, g) == fr:
                return RetractWitness(f, g, i, r, j, s)
    return None


def retracts_of(C: FinCategory, g: int) -> frozenset[int]:
    key = ("retracts", g)
    if key not in C._cache:
        C._cache[key] = frozenset(f for f in C.morphisms if retract_witness(C, f, g) is not None)
    return C._cache[key]


def is_retract_closed(C: FinCategory, S: MorphismClass) -> tuple[bool, RetractWitness | None]:
    for g in sorted(S.members):
        for f in sorted(retracts_of(C, g) - S.members):
            return False, retract_witness(C, f, g)
    return True, None


# ---------------------------------------------------------------------------
# factorization and WFS verification


def factorize_through(C: FinCategory, f: int, L: MorphismClass,
                      R: MorphismClass) -> tuple[int, int] | None:
    """First ``(l, r)`` with ``l ∈ L``, ``r ∈ R`` and ``r∘l == f``."""
    a, b = C.src[f], C.tgt[f]
    for mid in C.objects:
        for l in C.hom(a, mid):
            if l not in L:
                continue
            for r in C.hom(mid, b):
                if r in R and C.compose(r, l) == f:
                    return l, r
    return None


@dataclass(frozen=True)
class WfsReport:
    lifting_ok: bool
    factorization_ok: bool
    retract_closed_ok: bool
    maximal: bool
    failing_square: LiftingSquare | None = None
    unfactorable: int | None = None
    retract_witness: RetractWitness | None = None

    @property
    def ok(self) -> bool:
        return self.lifting_ok and self.factorization_ok and self.retract_closed_ok


def verify_wfs(C: FinCategory, L: MorphismClass, R: MorphismClass) -> WfsReport:
    """Check the three sufficient conditions (lifting, factorization, retract
    closure) and report separately whether ``L = ^⧄R`` and ``R = L^⧄``."""
    L.check(C)
    R.check(C)
    failing = None
    for f in sorted(L.members):
        for g in sorted(R.members):
            failing = lifting_obstruction(C, f, g)
            if failing is not None:
                break
        if failing is not None:
            break
    unfactorable = next((f for f in C.morphisms if factorize_through(C, f, L, R) is None), None)
    l_ok, l_wit = is_retract_closed(C, L)
    r_ok, r_wit = is_retract_closed(C, R)
    maximal = complement(C, R, "left") == L and complement(C, L, "right") == R
    return WfsReport(failing is None, unfactorable is None, l_ok and r_ok, maximal,
                     failing, unfactorable, l_wit or r_wit)


def composition_closed(C: FinCategory, S: MorphismClass) -> tuple[int, int] | None:
    """First composable pair in ``S`` whose composite leaves ``S``."""
    for f in sorted(S.members):
        for g in C.hom_from(C.tgt[f]):
            if g in S and C.compose(g, f) not in S:
                return g, f
    return None


@dataclass(frozen=True)
class ClosureReport:
    contains_isos: bool
    composition_closed: bool
    retract_closed: bool
    left_pushout_closed: bool
    right_pullback_closed: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (self.contains_isos and self.composition_closed and self.retract_closed
                and self.left_pushout_closed and self.right_pullback_closed)


def pushout_closed(C: FinCategory, S: MorphismClass) -> tuple[int, int] | None:
    """First ``(l, u)`` with ``l ∈ S`` whose existing pushout along ``u`` leaves ``S``."""
    for l in sorted(S.members):
        for u in C.hom_from(C.src[l]):
            po = pushout(C, l, u)
            if po is not None and po.legs[1] not in S:
                return l, u
    return None


def pullback_closed(C: FinCategory, S: MorphismClass) -> tuple[int, int] | None:
    for r in sorted(S.members):
        for u in C.hom_to(C.tgt[r]):
            pb = pullback(C, r, u)
            if pb is not None and pb.legs[1] not in S:
                return r, u
    return None


def wfs_closure_report(C: FinCategory, L: MorphismClass, R: MorphismClass) -> ClosureReport:
    """Closure properties every maximal lifting system must have."""
    isos = MorphismClass.isos(C)
    fails = []
    ci = isos <= L and isos <= R
    if not ci:
        fails.append("a class misses an isomorphism")
    cc = composition_closed(C, L) is None and composition_closed(C, R) is None
    if not cc:
        fails.append("a class is not closed under composition")
    rc = is_retract_closed(C, L)[0] and is_retract_closed(C, R)[0]
    if not rc:
        fails.append("a class is not closed under retracts")
    po = pushout_closed(C, L)
    if po is not None:
        fails.append(f"pushout of {C.describe(po[0])} along {C.describe(po[1])} leaves L")
    pb = pullback_closed(C, R)
    if pb is not None:
        fails.append(f"pullback of {C.describe(pb[0])} along {C.describe(pb[1])} leaves R")
    return ClosureReport(ci, cc, rc, po is None, pb is None, tuple(fails))
