"""Finite categories given by explicit composition tables.

Objects and morphisms are dense integer ids.  Names live in the ``object_names``
/ ``morphism_names`` sidecars and never influence any computation.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence


class CategoryError(ValueError):
    pass


@dataclass(eq=False)
class FinCategory:
    """A finite category.

    ``src[m]``/``tgt[m]`` give the endpoints of morphism ``m``; ``identities[x]``
    is the identity of object ``x``; ``table[(g, f)]`` is ``g∘f`` and must be
    present exactly for composable pairs (``tgt[f] == src[g]``).
    """

    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identities: tuple[int, ...]
    table: dict[tuple[int, int], int]
    object_names: tuple[str, ...] = ()
    morphism_names: tuple[str, ...] = ()
    name: str = ""
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.src = tuple(self.src)
        self.tgt = tuple(self.tgt)
        self.identities = tuple(self.identities)
        if len(self.src) != len(self.tgt):
            raise CategoryError("src and tgt must have the same length")
        if not self.object_names:
            self.object_names = tuple(str(x) for x in range(len(self.identities)))
        if not self.morphism_names:
            self.morphism_names = tuple(f"m{m}" for m in range(len(self.src)))

    # -- basic structure -------------------------------------------------
    @property
    def n_objects(self) -> int:
        return len(self.identities)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def morphisms(self) -> range:
        return range(self.n_morphisms)

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for m in self.morphisms:
            homs.setdefault((self.src[m], self.tgt[m]), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._homs.get((a, b), ())

    @cached_property
    def _out(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            out[self.src[m]].append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _in(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            inc[self.tgt[m]].append(m)
        return {k: tuple(v) for k, v in inc.items()}

    def hom_from(self, a: int) -> tuple[int, ...]:
        return self._out.get(a, ())

    def hom_to(self, b: int) -> tuple[int, ...]:
        return self._in.get(b, ())

    def compose(self, g: int, f: int) -> int:
        """Return ``g∘f``."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise CategoryError(
                f"morphisms {self.morphism_names[g]} and {self.morphism_names[f]} "
                "are not composable") from None

    def compose_path(self, *ms: int) -> int:
        """``compose_path(h, g, f) == h∘g∘f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def is_identity(self, m: int) -> bool:
        return self.identities[self.src[m]] == m

    def check_morphism(self, m: int) -> None:
        if not (isinstance(m, int) and 0 <= m < self.n_morphisms):
            raise CategoryError(f"unknown morphism id {m!r}")

    def check_object(self, x: int) -> None:
        if not (isinstance(x, int) and 0 <= x < self.n_objects):
            raise CategoryError(f"unknown object id {x!r}")

    def object_id(self, name: str | int) -> int:
        if isinstance(name, int):
            self.check_object(name)
            return name
        try:
            return self.object_names.index(name)
        except ValueError:
            raise CategoryError(f"unknown object {name!r}") from None

    def morphism_id(self, name: str | int) -> int:
        if isinstance(name, int):
            self.check_morphism(name)
            return name
        try:
            return self.morphism_names.index(name)
        except ValueError:
            raise CategoryError(f"unknown morphism {name!r}") from None

    def between(self, a: str | int, b: str | int) -> int:
        """The unique morphism ``a → b`` (preorders and thin parts only)."""
        ms = self.hom(self.object_id(a), self.object_id(b))
        if len(ms) != 1:
            raise CategoryError(f"expected exactly one morphism {a}→{b}, found {len(ms)}")
        return ms[0]

    def describe(self, m: int) -> str:
        return (f"{self.morphism_names[m]}: {self.object_names[self.src[m]]}"
                f"→{self.object_names[self.tgt[m]]}")

    # -- derived categories ----------------------------------------------
    def op(self) -> FinCategory:
        """The opposite category, sharing morphism and object ids."""
        if "op" not in self._cache:
            table = {(f, g): h for (g, f), h in self.table.items()}
            dual = FinCategory(self.tgt, self.src, self.identities, table,
                               self.object_names, self.morphism_names,
                               name=f"{self.name}^op" if self.name else "")
            dual._cache["op"] = self
            self._cache["op"] = dual
        return self._cache["op"]

    def full_subcategory(self, objects: Iterable[int], name: str = "") -> FinCategory:
        objs = sorted(set(objects))
        new_obj = {x: i for i, x in enumerate(objs)}
        mors = [m for m in self.morphisms if self.src[m] in new_obj and self.tgt[m] in new_obj]
        new_mor = {m: i for i, m in enumerate(mors)}
        table = {(new_mor[g], new_mor[f]): new_mor[h]
                 for (g, f), h in self.table.items() if g in new_mor and f in new_mor}
        return FinCategory(
            [new_obj[self.src[m]] for m in mors],
            [new_obj[self.tgt[m]] for m in mors],
            [new_mor[self.identities[x]] for x in objs],
            table,
            tuple(self.object_names[x] for x in objs),
            tuple(self.morphism_names[m] for m in mors),
            name=name,
        )

    # -- canonical serialization -------------------------------------------
    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "objects": list(self.object_names),
            "morphisms": [[self.morphism_names[m], self.src[m], self.tgt[m]] for m in self.morphisms],
            "identities": list(self.identities),
            "compose": sorted([g, f, h] for (g, f), h in self.table.items()),
        }

    @cached_property
    def content_hash(self) -> str:
        payload = self.to_dict()
        payload.pop("name")
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @classmethod
    def from_dict(cls, data: dict) -> FinCategory:
        objects = data["objects"]
        names, src, tgt = [], [], []
        for entry in data["morphisms"]:
            mid, s, t = entry
            names.append(str(mid))
            src.append(_resolve(objects, s))
            tgt.append(_resolve(objects, t))
        table = {}
        for g, f, h in data["compose"]:
            table[(_resolve(names, g), _resolve(names, f))] = _resolve(names, h)
        identities = data["identities"]
        if isinstance(identities, dict):
            identities = [identities[o] for o in objects]
        identities = [_resolve(names, m) for m in identities]
        return cls(src, tgt, identities, table, tuple(map(str, objects)), tuple(names),
                   name=data.get("name", ""))

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_preorder(cls, names: Sequence[str], leq: Callable[[int, int], bool],
                      name: str = "") -> FinCategory:
        """The thin category with a morphism ``a → b`` iff ``leq(a, b)``."""
        n = len(names)
        pairs = [(a, b) for a in range(n) for b in range(n) if leq(a, b)]
        index = {p: i for i, p in enumerate(pairs)}
        for a in range(n):
            if (a, a) not in index:
                raise CategoryError(f"relation is not reflexive at {names[a]}")
        table = {}
        for (b, c), g in index.items():
            for (a, b2), f in index.items():
                if b2 == b:
                    if (a, c) not in index:
                        raise CategoryError("relation is not transitive")
                    table[(g, f)] = index[(a, c)]
        mnames = tuple(f"{names[a]}->{names[b]}" if a != b else f"id_{names[a]}"
                       for a, b in pairs)
        return cls([a for a, _ in pairs], [b for _, b in pairs],
                   [index[(a, a)] for a in range(n)], table, tuple(names), mnames, name=name)

    @classmethod
    def from_concrete(cls, objects: Sequence, homs: Callable[[object, object], Iterable],
                      compose: Callable[[object, object], object],
                      identity: Callable[[object], object],
                      key: Callable[[object], Hashable] = lambda m: m,
                      object_names: Sequence[str] | None = None,
                      name: str = "") -> FinCategory:
        """Build the full subcategory of a concrete category on ``objects``.

        ``homs(a, b)`` enumerates morphisms, ``compose(g, f)`` composes them and
        ``key`` turns a morphism into a hashable value for identification.
        """
        src, tgt, concrete, ids = [], [], [], []
        lookup: dict[tuple[int, int, Hashable], int] = {}
        for a, A in enumerate(objects):
            for b, B in enumerate(objects):
                for m in homs(A, B):
                    lookup[(a, b, key(m))] = len(src)
                    src.append(a)
                    tgt.append(b)
                    concrete.append(m)
        for a, A in enumerate(objects):
            ids.append(lookup[(a, a, key(identity(A)))])
        table = {}
        by_src: dict[int, list[int]] = {}
        for m in range(len(src)):
            by_src.setdefault(src[m], []).append(m)
        for f in range(len(src)):
            for g in by_src.get(tgt[f], ()):
                table[(g, f)] = lookup[(src[f], tgt[g], key(compose(concrete[g], concrete[f])))]
        if object_names is None:
            object_names = [str(o) for o in range(len(objects))]
        cat = cls(src, tgt, ids, table, tuple(object_names), name=name)
        cat._cache["concrete"] = tuple(concrete)
        return cat

    def concrete(self, m: int):
        """Underlying concrete morphism when built with :meth:`from_concrete`."""
        return self._cache["concrete"][m]


def _resolve(names: Sequence, ref) -> int:
    if isinstance(ref, int) and not isinstance(ref, bool):
        if not 0 <= ref < len(names):
            raise CategoryError(f"id {ref} out of range")
        return ref
    try:
        return [str(n) for n in names].index(str(ref))
    except ValueError:
        raise CategoryError(f"unknown reference {ref!r}") from None


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    morphisms: tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_category(C: FinCategory) -> ValidationReport:
    """List every well-formedness, identity and associativity violation."""
    out: list[Violation] = []
    n, M = C.n_objects, C.n_morphisms
    for m in C.morphisms:
        if not (0 <= C.src[m] < n and 0 <= C.tgt[m] < n):
            out.append(Violation("endpoint", f"morphism {m} has an unknown endpoint", (m,)))
    if out:
        return ValidationReport(tuple(out))
    for x, i in enumerate(C.identities):
        if not (0 <= i < M) or C.src[i] != x or C.tgt[i] != x:
            out.append(Violation("identity", f"identity of object {x} is not an endomorphism of it", (i,)))
    for (g, f), h in C.table.items():
        if not all(0 <= k < M for k in (g, f, h)):
            out.append(Violation("table", f"entry ({g},{f})->{h} references an unknown morphism"))
            continue
        if C.tgt[f] != C.src[g]:
            out.append(Violation("table", f"entry for non-composable pair ({g},{f})", (g, f)))
        elif C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            out.append(Violation("endpoint", f"{g}∘{f} = {h} has the wrong endpoints", (g, f, h)))
    for f in C.morphisms:
        for g in C.morphisms:
            if C.tgt[f] == C.src[g] and (g, f) not in C.table:
                out.append(Violation("missing", f"no entry for {g}∘{f}", (g, f)))
    if out:
        return ValidationReport(tuple(out))
    for f in C.morphisms:
        if C.compose(f, C.identities[C.src[f]]) != f:
            out.append(Violation("identity", f"{f}∘id != {f}", (f,)))
        if C.compose(C.identities[C.tgt[f]], f) != f:
            out.append(Violation("identity", f"id∘{f} != {f}", (f,)))
    for f in C.morphisms:
        for g in C.hom_from(C.tgt[f]):
            gf = C.compose(g, f)
            for h in C.hom_from(C.tgt[g]):
                if C.compose(h, gf) != C.compose(C.compose(h, g), f):
                    out.append(Violation("associativity", f"({h}∘{g})∘{f} != {h}∘({g}∘{f})", (h, g, f)))
    return ValidationReport(tuple(out))




# ---------------------------------------------------------------------------
# morphism classification


@dataclass(frozen=True)
class MorphismFlags:
    mono: bool
    epi: bool
    iso: bool
    retraction: bool
    section: bool


def is_mono(C: FinCategory, f: int) -> bool:
    a = C.src[f]
    for x in C.objects:
        images: dict[int, int] = {}
        for g in C.hom(x, a):
            fg = C.compose(f, g)
            if fg in images:
                return False
            images[fg] = g
    return True


def is_epi(C: FinCategory, f: int) -> bool:
    return is_mono(C.op(), f)


def right_inverses(C: FinCategory, f: int) -> list[int]:
    """All ``s`` with ``f∘s = id``."""
    ident = C.identities[C.tgt[f]]
    return [s for s in C.hom(C.tgt[f], C.src[f]) if C.compose(f, s) == ident]


def left_inverses(C: FinCategory, f: int) -> list[int]:
    """All ``r`` with ``r∘f = id``."""
    ident = C.identities[C.src[f]]
    return [r for r in C.hom(C.tgt[f], C.src[f]) if C.compose(r, f) == ident]


def isomorphisms(C: FinCategory) -> frozenset[int]:
    if "isos" not in C._cache:
        C._cache["isos"] = frozenset(
            m for m in C.morphisms
            if any(C.compose(m, g) == C.identities[C.tgt[m]] for g in left_inverses(C, m)))
    return C._cache["isos"]


def is_iso(C: FinCategory, f: int) -> bool:
    return f in isomorphisms(C)


def classify_morphism(C: FinCategory, f: int) -> MorphismFlags:
    C.check_morphism(f)
    return MorphismFlags(
        mono=is_mono(C, f),
        epi=is_epi(C, f),
        iso=is_iso(C, f),
        retraction=bool(right_inverses(C, f)),
        section=bool(left_inverses(C, f)),
    )


def retractions(C: FinCategory) -> frozenset[int]:
    return frozenset(m for m in C.morphisms if right_inverses(C, m))


def sections(C: FinCategory) -> frozenset[int]:
    return frozenset(m for m in C.morphisms if left_inverses(C, m))


def are_isomorphic_objects(C: FinCategory, a: int, b: int) -> bool:
    return any(is_iso(C, m) for m in C.hom(a, b))


def is_preorder(C: FinCategory) -> bool:
    return all(len(ms) <= 1 for ms in C._homs.values())


# ---------------------------------------------------------------------------
# limits and colimits


@dataclass(frozen=True)
class Diagram:
    """A finite diagram: ``objects[i]`` are objects of the ambient category and
    each arrow ``(i, j, m)`` is a morphism ``objects[i] → objects[j]``."""

    objects: tuple[int, ...]
    arrows: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def discrete(cls, *objects: int) -> Diagram:
        return cls(tuple(objects))

    @classmethod
    def cospan(cls, C: FinCategory, f: int, g: int) -> Diagram:
        """``f: A → Z ← B :g``; the limit is the pullback."""
        if C.tgt[f] != C.tgt[g]:
            raise CategoryError("cospan legs must share a target")
        return cls((C.src[f], C.src[g], C.tgt[f]), ((0, 2, f), (1, 2, g)))

    @classmethod
    def span(cls, C: FinCategory, f: int, g: int) -> Diagram:
        """``f: A ← Z → B :g`` given as morphisms out of Z; the colimit is the pushout."""
        if C.src[f] != C.src[g]:
            raise CategoryError("span legs must share a source")
        return cls((C.tgt[f], C.tgt[g], C.src[f]), ((2, 0, f), (2, 1, g)))

    @classmethod
    def parallel(cls, C: FinCategory, f: int, g: int) -> Diagram:
        if (C.src[f], C.tgt[f]) != (C.src[g], C.tgt[g]):
            raise CategoryError("parallel pair must share endpoints")
        return cls((C.src[f], C.tgt[f]), ((0, 1, f), (0, 1, g)))

    def validate(self, C: FinCategory) -> None:
        for x in self.objects:
            C.check_object(x)
        for i, j, m in self.arrows:
            C.check_morphism(m)
            if not (0 <= i < len(self.objects) and 0 <= j < len(self.objects)):
                raise CategoryError(f"diagram arrow ({i},{j}) references an unknown vertex")
            if C.src[m] != self.objects[i] or C.tgt[m] != self.objects[j]:
                raise CategoryError(f"diagram arrow {C.describe(m)} has the wrong endpoints")


@dataclass(frozen=True)
class Cone:
    """A cone (or, read in the opposite category, a cocone) with the given apex."""

    apex: int
    legs: tuple[int, ...]


def cones(C: FinCategory, D: Diagram, apex: int) -> Iterator[Cone]:
    """Every cone over ``D`` with the given apex, in lexicographic leg order."""
    k = len(D.objects)
    legs: list[int] = [0] * k
    incoming: dict[int, list[tuple[int, int]]] = {}
    for i, j, m in D.arrows:
        incoming.setdefault(max(i, j), []).append((i, j, m))

    def rec(pos: int) -> Iterator[Cone]:
        if pos == k:
            yield Cone(apex, tuple(legs))
            return
        for leg in C.hom(apex, D.objects[pos]):
            legs[pos] = leg
            if all(C.compose(m, legs[i]) == legs[j] for i, j, m in incoming.get(pos, ())):
                yield from rec(pos + 1)

    yield from rec(0)


def factorizations(C: FinCategory, target: Cone, source: Cone) -> list[int]:
    """All ``u: source.apex → target.apex`` with ``target.legs[i]∘u == source.legs[i]``."""
    return [u for u in C.hom(source.apex, target.apex)
            if all(C.compose(l, u) == s for l, s in zip(target.legs, source.legs))]


def is_limit(C: FinCategory, D: Diagram, cone: Cone) -> bool:
    """Universal property checked against every competing cone."""
    for apex in C.objects:
        for other in cones(C, D, apex):
            if len(factorizations(C, cone, other)) != 1:
                return False
    return True


def limit(C: FinCategory, D: Diagram) -> Cone | None:
    """A limiting cone (lowest apex id, then lowest legs), or ``None`` if none exists."""
    D.validate(C)
    all_cones = {apex: list(cones(C, D, apex)) for apex in C.objects}
    for apex in C.objects:
        for candidate in all_cones[apex]:
            if all(len(factorizations(C, candidate, other)) == 1
                   for a in C.objects for other in all_cones[a]):
                return candidate
    return None


def colimit(C: FinCategory, D: Diagram) -> Cone | None:
    """A colimiting cocone: legs go from each diagram object to the apex."""
    D.validate(C)
    flipped = Diagram(D.objects, tuple((j, i, m) for i, j, m in D.arrows))
    return limit(C.op(), flipped)


def is_colimit(C: FinCategory, D: Diagram, cocone: Cone) -> bool:
    flipped = Diagram(D.objects, tuple((j, i, m) for i, j, m in D.arrows))
    return is_limit(C.op(), flipped, cocone)


def pullback(C: FinCategory, f: int, g: int) -> Cone | None:
    """Pullback of ``f: A → Z`` and ``g: B → Z``; legs are ``(to A, to B, to Z)``."""
    key = ("pullback", f, g)
    if key not in C._cache:
        C._cache[key] = limit(C, Diagram.cospan(C, f, g))
    return C._cache[key]


def pushout(C: FinCategory, f: int, g: int) -> Cone | None:
    """Pushout of ``f: Z → A`` and ``g: Z → B``; legs are ``(from A, from B, from Z)``."""
    key = ("pushout", f, g)
    if key not in C._cache:
        C._cache[key] = colimit(C, Diagram.span(C, f, g))
    return C._cache[key]


def product(C: FinCategory, a: int, b: int) -> Cone | None:
    return limit(C, Diagram.discrete(a, b))


def coproduct(C: FinCategory, a: int, b: int) -> Cone | None:
    key = ("coproduct", a, b)
    if key not in C._cache:
        C._cache[key] = colimit(C, Diagram.discrete(a, b))
    return C._cache[key]


def terminal_object(C: FinCategory) -> int | None:
    cone = limit(C, Diagram(()))
    return None if cone is None else cone.apex


def initial_object(C: FinCategory) -> int | None:
    cone = colimit(C, Diagram(()))
    return None if cone is None else cone.apex


@dataclass(frozen=True)
class BicompletenessReport:
    missing_limits: tuple[Diagram, ...]
    missing_colimits: tuple[Diagram, ...]

    @property
    def ok(self) -> bool:
        return not self.missing_limits and not self.missing_colimits


def _generating_diagrams(C: FinCategory) -> Iterator[Diagram]:
    yield Diagram(())
    for a, b in itertools.combinations_with_replacement(C.objects, 2):
        yield Diagram.discrete(a, b)
    for f in C.morphisms:
        for g in C.hom_to(C.tgt[f]):
            if g >= f:
                yield Diagram.cospan(C, f, g)
    for (a, b), ms in C._homs.items():
        for f, g in itertools.combinations(ms, 2):
            yield Diagram.parallel(C, f, g)


def bicompleteness(C: FinCategory) -> BicompletenessReport:
    """Check the terminal object, binary products, pullbacks and equalizers, and
    the dual colimits; together these generate all finite (co)limits."""
    missing = [D for D in _generating_diagrams(C) if limit(C, D) is None]
    Cop = C.op()
    missing_co = [D for D in _generating_diagrams(Cop) if limit(Cop, D) is None]
    return BicompletenessReport(tuple(missing), tuple(missing_co))


# ---------------------------------------------------------------------------
# preorder reflection


@dataclass(frozen=True)
class PreorderReflection:
    preorder: FinCategory
    object_map: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    quotient: FinCategory

    def morphism_map(self, C: FinCategory, m: int) -> int:
        return self.preorder.between(C.src[m], C.tgt[m])

    def equivalent(self, a: int, b: int) -> bool:
        return self.object_map[a] == self.object_map[b]


def reachability(C: FinCategory) -> list[list[bool]]:
    n = C.n_objects
    return [[bool(C.hom(a, b)) for b in range(n)] for a in range(n)]


def preorder_reflection(C: FinCategory) -> PreorderReflection:
    """``P(C)`` on the same objects, its ``~``-classes and the poset of classes."""
    reach = reachability(C)
    n = C.n_objects
    P = FinCategory.from_preorder(C.object_names, lambda a, b: reach[a][b],
                                  name=f"P({C.name})" if C.name else "")
    class_of: dict[int, int] = {}
    classes: list[list[int]] = []
    for a in range(n):
        for idx, cls in enumerate(classes):
            if reach[a][cls[0]] and reach[cls[0]][a]:
                class_of[a] = idx
                cls.append(a)
                break
        else:
            class_of[a] = len(classes)
            classes.append([a])
    reps = [cls[0] for cls in classes]
    names = ["{" + ",".join(C.object_names[x] for x in cls) + "}" for cls in classes]
    quotient = FinCategory.from_preorder(names, lambda i, j: reach[reps[i]][reps[j]])
    return PreorderReflection(P, tuple(class_of[a] for a in range(n)),
                              tuple(tuple(c) for c in classes), quotient)


# ---------------------------------------------------------------------------
# equivalence of finite categories


def skeleton(C: FinCategory) -> FinCategory:
    reps: list[int] = []
    for a in C.objects:
        if not any(are_isomorphic_objects(C, a, r) for r in reps):
            reps.append(a)
    return C.full_subcategory(reps, name=f"sk({C.name})" if C.name else "")


def find_isomorphism(C: FinCategory, D: FinCategory) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """An isomorphism of categories ``C → D`` as (object map, morphism map)."""
    if (C.n_objects, C.n_morphisms) != (D.n_objects, D.n_morphisms):
        return None

    def profile(K: FinCategory, x: int) -> tuple[int, int, int]:
        return (len(K.hom(x, x)), len(K.hom_from(x)), len(K.hom_to(x)))

    n = C.n_objects
    obj_map: list[int] = [-1] * n
    used: set[int] = set()

    def objects_ok(k: int) -> bool:
        a = k
        for b in range(k + 1):
            if len(C.hom(a, b)) != len(D.hom(obj_map[a], obj_map[b])):
                return False
            if len(C.hom(b, a)) != len(D.hom(obj_map[b], obj_map[a])):
                return False
        return True

    def match_morphisms() -> tuple[int, ...] | None:
        mor_map: dict[int, int] = {}
        mors = list(C.morphisms)
        for x in C.objects:
            mor_map[C.identities[x]] = D.identities[obj_map[x]]
        free = [m for m in mors if m not in mor_map]
        used_m = set(mor_map.values())

        def consistent(m: int) -> bool:
            for (g, f), h in C.table.items():
                if m in (g, f, h) and g in mor_map and f in mor_map and h in mor_map:
                    if D.compose(mor_map[g], mor_map[f]) != mor_map[h]:
                        return False
            return True

        def rec(i: int) -> bool:
            if i == len(free):
                return True
            m = free[i]
            for cand in D.hom(obj_map[C.src[m]], obj_map[C.tgt[m]]):
                if cand in used_m:
                    continue
                mor_map[m] = cand
                used_m.add(cand)
                if consistent(m) and rec(i + 1):
                    return True
                used_m.discard(cand)
                del mor_map[m]
            return False

        if rec(0):
            return tuple(mor_map[m] for m in mors)
        return None

    def rec(k: int):
        if k == n:
            return match_morphisms()
        for y in range(n):
            if y in used or profile(C, k) != profile(D, y):
                continue
            obj_map[k] = y
            used.add(y)
            if objects_ok(k):
                res = rec(k + 1)
                if res is not None:
                    return res
            used.discard(y)
        obj_map[k] = -1
        return None

    res = rec(0)
    if res is None:
        return None
    return tuple(obj_map), res


def are_equivalent(C: FinCategory, D: FinCategory) -> bool:
    """Equivalence of categories, decided as isomorphism of skeleta."""
    return find_isomorphism(skeleton(C), skeleton(D)) is not None


# ---------------------------------------------------------------------------
# monic length


def monic_length(C: FinCategory) -> int | None:
    """Longest chain of noninvertible monomorphisms ending at the terminal
    object, or ``None`` when ``C`` has no terminal object."""
    term = terminal_object(C)
    if term is None:
        return None
    step: dict[int, set[int]] = {x: set() for x in C.objects}
    for m in C.morphisms:
        if not is_iso(C, m) and is_mono(C, m):
            step[C.tgt[m]].add(C.src[m])
    # no cycles: a cycle of monos in a finite category consists of isomorphisms
    memo: dict[int, int] = {}

    def longest(x: int, trail: frozenset[int]) -> int:
        if x in memo:
            return memo[x]
        if x in trail:
            raise CategoryError("cycle of noninvertible monomorphisms")
        best = 0
        for y in step[x]:
            best = max(best, 1 + longest(y, trail | {x}))
        memo[x] = best
        return best

    return longest(term, frozenset())


# ---------------------------------------------------------------------------
# coproduct splitting and disjointness


@dataclass(frozen=True)
class SplittingWitness:
    morphism: int
    left: int  # X_L
    right: int  # X_R
    inj_left: int  # X_L → X
    inj_right: int  # X_R → X
    f_left: int  # X_L → A
    f_right: int  # X_R → B


@dataclass(frozen=True)
class CoproductReport:
    coproducts: dict[tuple[int, int], Cone]
    missing: tuple[tuple[int, int], ...]
    splitting: bool
    splitting_counterexample: tuple[tuple[int, int], int] | None
    disjoint: bool
    disjoint_failure: tuple[tuple[int, int], str, tuple[int, ...]] | None
    decompositions: dict[int, SplittingWitness] = field(default_factory=dict, repr=False)


def _coproduct_cocones(C: FinCategory, x: int) -> Iterator[tuple[int, int, int, int]]:
    """All ``(X_L, X_R, j1, j2)`` exhibiting ``x`` as a coproduct ``X_L ⊔ X_R``."""
    for xl in C.objects:
        for xr in C.objects:
            D = Diagram.discrete(xl, xr)
            for j1 in C.hom(xl, x):
                for j2 in C.hom(xr, x):
                    if is_colimit(C, D, Cone(x, (j1, j2))):
                        yield xl, xr, j1, j2


def coproduct_properties(C: FinCategory) -> CoproductReport:
    coprods: dict[tuple[int, int], Cone] = {}
    missing = []
    for a in C.objects:
        for b in C.objects:
            cp = coproduct(C, a, b)
            if cp is None:
                missing.append((a, b))
            else:
                coprods[(a, b)] = cp
    if missing:
        return CoproductReport(coprods, tuple(missing), False, None, False, None)

    cocones_at: dict[int, list[tuple[int, int, int, int]]] = {}
    splitting, split_cex = True, None
    decomps: dict[int, SplittingWitness] = {}
    for (a, b), cp in coprods.items():
        i1, i2 = cp.legs
        for f in C.hom_to(cp.apex):
            x = C.src[f]
            if x not in cocones_at:
                cocones_at[x] = list(_coproduct_cocones(C, x))
            found = None
            for xl, xr, j1, j2 in cocones_at[x]:
                fl = [g for g in C.hom(xl, a) if C.compose(i1, g) == C.compose(f, j1)]
                fr = [g for g in C.hom(xr, b) if C.compose(i2, g) == C.compose(f, j2)]
                if fl and fr:
                    found = SplittingWitness(f, xl, xr, j1, j2, fl[0], fr[0])
                    break
            if found is None:
                if splitting:
                    splitting, split_cex = False, ((a, b), f)
            else:
                decomps.setdefault(f, found)

    disjoint, disj_fail = True, None
    init = initial_object(C)
    # distinct pairs first: their failures are the informative ones
    ordered = sorted(coprods.items(), key=lambda kv: (kv[0][0] == kv[0][1], kv[0]))
    for (a, b), cp in ordered:
        i1, i2 = cp.legs
        for inj in (i1, i2):
            if not is_mono(C, inj):
                disjoint, disj_fail = False, ((a, b), "injection not monic", (inj,))
                break
        if not disjoint:
            break
        for f, g, expect in ((i1, i1, "self"), (i1, i2, "initial"), (i2, i2, "self")):
            pb = pullback(C, f, g)
            if pb is None:
                disjoint, disj_fail = False, ((a, b), "pullback missing", (f, g))
                break
            if expect == "initial":
                good = init is not None and are_isomorphic_objects(C, pb.apex, init)
            else:
                src = C.src[f]
                ident = C.identities[src]
                good = is_limit(C, Diagram.cospan(C, f, g), Cone(src, (ident, ident, f)))
            if not good:
                disjoint, disj_fail = False, ((a, b), f"pullback of ({C.describe(f)}, {C.describe(g)}) "
                                              f"is {C.object_names[pb.apex]}", (f, g))
                break
        if not disjoint:
            break
    return CoproductReport(coprods, (), splitting, split_cex, disjoint, disj_fail, decomps)
