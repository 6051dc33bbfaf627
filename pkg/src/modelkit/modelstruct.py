"""Model structures on finite categories: verification, cut constructions,
properness and the adjoint-section structure."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .fincat import (
    CategoryError, FinCategory, are_equivalent, is_iso, is_preorder, isomorphisms,
    pullback, pushout, retractions, sections, reachability,
)
from .lifting import (
    MorphismClass, RetractWitness, WfsReport, complement, is_retract_closed, verify_wfs,
)


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class ModelStructureSpec:
    we: MorphismClass
    cof: MorphismClass
    fib: MorphismClass
    provenance: dict = field(default_factory=dict, compare=False)

    @classmethod
    def make(cls, C: FinCategory, we, cof, fib, **provenance) -> ModelStructureSpec:
        classes = []
        for name, S in (("we", we), ("cof", cof), ("fib", fib)):
            if not isinstance(S, MorphismClass):
                S = MorphismClass.of(C, S)
            S.check(C)
            missing = [x for x in C.objects if C.identities[x] not in S]
            if missing:
                raise StructureError(f"{name} misses the identity of {C.object_names[missing[0]]}")
            classes.append(S)
        return cls(*classes, provenance=dict(provenance))

    @property
    def acyclic_cof(self) -> MorphismClass:
        return self.cof & self.we

    @property
    def acyclic_fib(self) -> MorphismClass:
        return self.fib & self.we

    def to_dict(self) -> dict:
        return {
            "category_hash": self.we.category_hash,
            "we": sorted(self.we.members),
            "cof": sorted(self.cof.members),
            "fib": sorted(self.fib.members),
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: dict, C: FinCategory) -> ModelStructureSpec:
        if data["category_hash"] != C.content_hash:
            raise StructureError("structure file was written for a different category")
        return cls.make(C, data["we"], data["cof"], data["fib"], **data.get("provenance", {}))


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class AxiomReport:
    cof_afib: WfsReport
    acof_fib: WfsReport
    two_of_three_ok: bool
    two_of_three_witness: tuple[int, int] | None
    tierney_ok: bool
    tierney_witness: RetractWitness | None

    @property
    def verdict(self) -> bool:
        return (self.cof_afib.ok and self.acof_fib.ok and self.two_of_three_ok
                and self.tierney_ok)

    def __bool__(self) -> bool:
        return self.verdict


def two_of_three_violation(C: FinCategory, we: MorphismClass) -> tuple[int, int] | None:
    """First composable ``(g, f)`` where exactly two of ``f, g, g∘f`` are in ``we``."""
    for f in C.morphisms:
        for g in C.hom_from(C.tgt[f]):
            if (f in we) + (g in we) + (C.compose(g, f) in we) == 2:
                return g, f
    return None


def verify_model_structure(C: FinCategory, M: ModelStructureSpec) -> AxiomReport:
    for S in (M.we, M.cof, M.fib):
        S.check(C)
    wfs1 = verify_wfs(C, M.cof, M.acyclic_fib)
    wfs2 = verify_wfs(C, M.acyclic_cof, M.fib)
    tot = two_of_three_violation(C, M.we)
    tierney_ok, tierney_wit = is_retract_closed(C, M.we)
    return AxiomReport(wfs1, wfs2, tot is None, tot, tierney_ok, tierney_wit)


# ---------------------------------------------------------------------------
# cuts


@dataclass(frozen=True)
class Cut:
    """Functor to ``∅ → *`` stored by its object part: 0 is the ∅-side, 1 the *-side."""

    labels: tuple[int, ...]

    def validate(self, C: FinCategory) -> None:
        if len(self.labels) != C.n_objects or set(self.labels) - {0, 1}:
            raise StructureError("a cut labels every object with 0 or 1")
        for m in C.morphisms:
            if self.labels[C.src[m]] > self.labels[C.tgt[m]]:
                raise StructureError(f"not a cut: {C.describe(m)} goes from the *-side to the ∅-side")

    @classmethod
    def from_small(cls, C: FinCategory, small: Sequence[str | int]) -> Cut:
        ids = {C.object_id(x) for x in small}
        cut = cls(tuple(0 if x in ids else 1 for x in C.objects))
        cut.validate(C)
        return cut

    def small(self) -> tuple[int, ...]:
        return tuple(x for x, l in enumerate(self.labels) if l == 0)

    def big(self) -> tuple[int, ...]:
        return tuple(x for x, l in enumerate(self.labels) if l == 1)

    def is_trivial(self) -> bool:
        return len(set(self.labels)) <= 1


@dataclass(frozen=True)
class DoubleCut:
    """Monotone labelling by ``∅ < E < *`` encoded as 0, 1, 2."""

    labels: tuple[int, ...]

    def validate(self, C: FinCategory) -> None:
        if len(self.labels) != C.n_objects or set(self.labels) - {0, 1, 2}:
            raise StructureError("a double cut labels every object with 0, 1 or 2")
        for m in C.morphisms:
            if self.labels[C.src[m]] > self.labels[C.tgt[m]]:
                raise StructureError(f"labelling decreases along {C.describe(m)}")


def _monotone_labelings(C: FinCategory, k: int) -> Iterator[tuple[int, ...]]:
    for labels in itertools.product(range(k), repeat=C.n_objects):
        if all(labels[C.src[m]] <= labels[C.tgt[m]] for m in C.morphisms):
            yield labels


def cuts(C: FinCategory, include_trivial: bool = True) -> list[Cut]:
    out = [Cut(l) for l in _monotone_labelings(C, 2)]
    return out if include_trivial else [c for c in out if not c.is_trivial()]


def double_cuts(C: FinCategory) -> list[DoubleCut]:
    return [DoubleCut(l) for l in _monotone_labelings(C, 3)]


def build_double_cut_structure(C: FinCategory, F: DoubleCut) -> ModelStructureSpec:
    F.validate(C)
    isos = isomorphisms(C)
    lab = F.labels
    cof = [m for m in C.morphisms if lab[C.tgt[m]] != 0 or m in isos]
    fib = [m for m in C.morphisms if lab[C.src[m]] != 2 or m in isos]
    we = [m for m in C.morphisms
          if (lab[C.src[m]] == lab[C.tgt[m]] and lab[C.src[m]] in (0, 2)) or m in isos]
    return ModelStructureSpec.make(C, we, cof, fib, constructor="double-cut", labels=list(lab))


_VARIANT_EMBEDDING = {"balanced": (0, 2), "right": (1, 2), "left": (0, 1)}


def build_cut_structure(C: FinCategory, F: Cut, variant: str) -> ModelStructureSpec:
    """Balanced, right or left structure of a cut.

    The balanced classes are written out directly; the right variant takes
    ``fib = we^⧄`` and the left variant ``cof = ^⧄we``, computed by lifting.
    """
    F.validate(C)
    isos = isomorphisms(C)
    small = {x for x in C.objects if F.labels[x] == 0}
    big = set(C.objects) - small
    prov = dict(constructor=f"cut-{variant}", labels=list(F.labels))
    if variant == "balanced":
        we = [m for m in C.morphisms if C.tgt[m] in small or C.src[m] in big or m in isos]
        cof = [m for m in C.morphisms if C.tgt[m] in big or m in isos]
        fib = [m for m in C.morphisms if C.src[m] in small or m in isos]
        return ModelStructureSpec.make(C, we, cof, fib, **prov)
    if variant == "right":
        we = MorphismClass.where(C, lambda m: C.src[m] in big or m in isos)
        return ModelStructureSpec.make(C, we, MorphismClass.all(C), complement(C, we, "right"), **prov)
    if variant == "left":
        we = MorphismClass.where(C, lambda m: C.tgt[m] in small or m in isos)
        return ModelStructureSpec.make(C, we, complement(C, we, "left"), MorphismClass.all(C), **prov)
    raise ValueError(f"unknown variant {variant!r}")


def cut_as_double_cut(F: Cut, variant: str) -> DoubleCut:
    """Compose a cut with the embedding ``E → E'`` that defines ``variant``."""
    emb = _VARIANT_EMBEDDING[variant]
    return DoubleCut(tuple(emb[l] for l in F.labels))


def trivial_structure(C: FinCategory) -> ModelStructureSpec:
    """Everything a weak equivalence and a cofibration, fibrations the isos."""
    return ModelStructureSpec.make(C, MorphismClass.all(C), MorphismClass.all(C),
                                   MorphismClass.isos(C), constructor="trivial")


def build_core_structure(C: FinCategory) -> ModelStructureSpec:
    """Weak equivalences ``A ~ B``, acyclic fibrations the retractions."""
    reach = reachability(C)
    we = MorphismClass.where(C, lambda m: reach[C.tgt[m]][C.src[m]])
    afib = MorphismClass.of(C, retractions(C))
    cof = complement(C, afib, "left")
    fib = complement(C, cof & we, "right")
    return ModelStructureSpec.make(C, we, cof, fib, constructor="core")


def build_cocore_structure(C: FinCategory) -> ModelStructureSpec:
    """Dual of :func:`build_core_structure`: acyclic cofibrations the sections."""
    reach = reachability(C)
    we = MorphismClass.where(C, lambda m: reach[C.tgt[m]][C.src[m]])
    acof = MorphismClass.of(C, sections(C))
    fib = complement(C, acof, "right")
    cof = complement(C, fib & we, "left")
    return ModelStructureSpec.make(C, we, cof, fib, constructor="cocore")


# ---------------------------------------------------------------------------
# properness


@dataclass(frozen=True)
class PropernessReport:
    side: str
    ok: bool
    witness: tuple[int, int, int] | None  # (we leg, (co)fibration leg, failing base change)
    missing: tuple[tuple[int, int], ...] = ()
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def check_properness(C: FinCategory, M: ModelStructureSpec, side: str) -> PropernessReport:
    """Left: pushouts of weak equivalences along cofibrations stay weak
    equivalences.  Right: pullbacks along fibrations."""
    missing, checked = [], 0
    if side == "left":
        for i in sorted(M.cof.members):
            for g in C.hom_from(C.src[i]):
                if g not in M.we:
                    continue
                po = pushout(C, i, g)
                if po is None:
                    missing.append((g, i))
                    continue
                checked += 1
                if po.legs[0] not in M.we:
                    return PropernessReport(side, False, (g, i, po.legs[0]), tuple(missing), checked)
    elif side == "right":
        for p in sorted(M.fib.members):
            for w in C.hom_to(C.tgt[p]):
                if w not in M.we:
                    continue
                pb = pullback(C, w, p)
                if pb is None:
                    missing.append((w, p))
                    continue
                checked += 1
                if pb.legs[1] not in M.we:
                    return PropernessReport(side, False, (w, p, pb.legs[1]), tuple(missing), checked)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return PropernessReport(side, True, None, tuple(missing), checked)


# ---------------------------------------------------------------------------
# functors and adjunctions


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __call__(self, m: int) -> int:
        return self.mor_map[m]

    def on_object(self, x: int) -> int:
        return self.obj_map[x]

    def violations(self) -> list[str]:
        C, D = self.source, self.target
        out = []
        if len(self.obj_map) != C.n_objects or len(self.mor_map) != C.n_morphisms:
            return ["object or morphism map has the wrong length"]
        for m in C.morphisms:
            fm = self.mor_map[m]
            if (D.src[fm], D.tgt[fm]) != (self.obj_map[C.src[m]], self.obj_map[C.tgt[m]]):
                out.append(f"endpoints of F({C.morphism_names[m]})")
        for x in C.objects:
            if self.mor_map[C.identities[x]] != D.identities[self.obj_map[x]]:
                out.append(f"F(id_{C.object_names[x]}) is not an identity")
        if out:
            return out
        for (g, f), h in C.table.items():
            if D.compose(self.mor_map[g], self.mor_map[f]) != self.mor_map[h]:
                out.append(f"F({C.morphism_names[g]}∘{C.morphism_names[f]})")
        return out

    @classmethod
    def from_object_map(cls, C: FinCategory, D: FinCategory, obj_map: Sequence[int]) -> Functor:
        """The unique functor with this object part into a preorder ``D``."""
        if not is_preorder(D):
            raise StructureError("object maps determine functors only into preorders")
        mor = []
        for m in C.morphisms:
            ms = D.hom(obj_map[C.src[m]], obj_map[C.tgt[m]])
            if not ms:
                raise StructureError(f"no image for {C.describe(m)}")
            mor.append(ms[0])
        F = cls(C, D, tuple(obj_map), tuple(mor))
        bad = F.violations()
        if bad:
            raise StructureError("; ".join(bad))
        return F

    @classmethod
    def identity(cls, C: FinCategory) -> Functor:
        return cls(C, C, tuple(C.objects), tuple(C.morphisms))


@dataclass(frozen=True)
class Adjunction:
    """``F ⊣ G`` with unit ``η_X: X → GFX`` and counit ``ε_Y: FGY → Y``."""

    F: Functor
    G: Functor
    unit: tuple[int, ...]
    counit: tuple[int, ...]

    def violations(self) -> list[str]:
        F, G = self.F, self.G
        C, D = F.source, F.target
        out = F.violations() + G.violations()
        if out:
            return out
        for x in C.objects:
            u = self.unit[x]
            if (C.src[u], C.tgt[u]) != (x, G.obj_map[F.obj_map[x]]):
                out.append(f"unit component at {C.object_names[x]} has wrong endpoints")
        for y in D.objects:
            c = self.counit[y]
            if (D.src[c], D.tgt[c]) != (F.obj_map[G.obj_map[y]], y):
                out.append(f"counit component at {D.object_names[y]} has wrong endpoints")
        if out:
            return out
        for f in C.morphisms:
            if C.compose(G(F(f)), self.unit[C.src[f]]) != C.compose(self.unit[C.tgt[f]], f):
                out.append(f"unit not natural at {C.morphism_names[f]}")
        for g in D.morphisms:
            if D.compose(g, self.counit[D.src[g]]) != D.compose(self.counit[D.tgt[g]], F(G(g))):
                out.append(f"counit not natural at {D.morphism_names[g]}")
        for x in C.objects:
            if D.compose(self.counit[F.obj_map[x]], F(self.unit[x])) != D.identities[F.obj_map[x]]:
                out.append(f"triangle identity fails at {C.object_names[x]}")
        for y in D.objects:
            if C.compose(G(self.counit[y]), self.unit[G.obj_map[y]]) != C.identities[G.obj_map[y]]:
                out.append(f"triangle identity fails at {D.object_names[y]}")
        return out

    @property
    def counit_is_iso(self) -> bool:
        return all(is_iso(self.F.target, c) for c in self.counit)


def right_adjoint(F: Functor) -> Adjunction | None:
    """Search for ``G`` with ``F ⊣ G`` by finding a terminal object of each
    comma category ``(F ↓ Y)``; ``None`` when some ``Y`` has none."""
    C, D = F.source, F.target
    G_obj, counit = [], []
    for y in D.objects:
        found = None
        for gy in C.objects:
            for eps in D.hom(F.obj_map[gy], y):
                if _is_universal_arrow(F, gy, eps, y):
                    found = (gy, eps)
                    break
            if found:
                break
        if found is None:
            return None
        G_obj.append(found[0])
        counit.append(found[1])
    G_mor = []
    for g in D.morphisms:
        a, b = D.src[g], D.tgt[g]
        target = D.compose(g, counit[a])
        G_mor.append(next(h for h in C.hom(G_obj[a], G_obj[b])
                          if D.compose(counit[b], F(h)) == target))
    G = Functor(D, C, tuple(G_obj), tuple(G_mor))
    unit = []
    for x in C.objects:
        fx = F.obj_map[x]
        unit.append(next(h for h in C.hom(x, G_obj[fx])
                         if D.compose(counit[fx], F(h)) == D.identities[fx]))
    return Adjunction(F, G, tuple(unit), tuple(counit))


def _is_universal_arrow(F: Functor, gy: int, eps: int, y: int) -> bool:
    C, D = F.source, F.target
    for x in C.objects:
        for g in D.hom(F.obj_map[x], y):
            if sum(1 for h in C.hom(x, gy) if D.compose(eps, F(h)) == g) != 1:
                return False
    return True


def left_adjoint(F: Functor) -> Functor | None:
    """``L`` with ``L ⊣ F``, found as a right adjoint of ``F^op``."""
    Fop = Functor(F.source.op(), F.target.op(), F.obj_map, F.mor_map)
    adj = right_adjoint(Fop)
    if adj is None:
        return None
    G = adj.G
    return Functor(F.target, F.source, G.obj_map, G.mor_map)


def preservation_failures(F: Functor) -> dict[str, list[tuple[int, int]]]:
    """Pullbacks/pushouts of ``C`` whose image is not a pullback/pushout in ``D``."""
    from .fincat import Diagram, Cone, is_limit, is_colimit

    C, D = F.source, F.target
    out: dict[str, list[tuple[int, int]]] = {"pullbacks": [], "pushouts": []}
    for f in C.morphisms:
        for g in C.hom_to(C.tgt[f]):
            pb = pullback(C, f, g)
            if pb is not None:
                cone = Cone(F.obj_map[pb.apex], tuple(F(l) for l in pb.legs))
                if not is_limit(D, Diagram.cospan(D, F(f), F(g)), cone):
                    out["pullbacks"].append((f, g))
        for g in C.hom_from(C.src[f]):
            po = pushout(C, f, g)
            if po is not None:
                cocone = Cone(F.obj_map[po.apex], tuple(F(l) for l in po.legs))
                if not is_colimit(D, Diagram.span(D, F(f), F(g)), cocone):
                    out["pushouts"].append((f, g))
    return out


# ---------------------------------------------------------------------------
# adjoint-section structure


@dataclass(frozen=True)
class AdjointSectionReport:
    structure: ModelStructureSpec
    condition_a: bool
    condition_b: bool
    target_is_preorder: bool
    a_failure: tuple[int, int] | None
    b_failure: int | None
    missing_pullbacks: tuple[tuple[int, int], ...]
    left_proper: PropernessReport
    right_proper: str = "unknown"

    @property
    def valid(self) -> bool:
        return self.condition_a or self.condition_b


def adjoint_section_structure(C: FinCategory, adj: Adjunction) -> AdjointSectionReport:
    """``we = F⁻¹(iso D)``, every morphism a cofibration, ``fib = we^⧄``."""
    bad = adj.violations()
    if bad:
        raise StructureError("not an adjunction: " + "; ".join(bad))
    if not adj.counit_is_iso:
        raise StructureError("counit is not a natural isomorphism")
    F, G = adj.F, adj.G
    D = F.target
    we = MorphismClass.where(C, lambda m: is_iso(D, F(m)))
    fib = complement(C, we, "right")
    M = ModelStructureSpec.make(C, we, MorphismClass.all(C), fib, constructor="adjoint-section")

    missing: list[tuple[int, int]] = []
    # (a): pullbacks of weak equivalences along morphisms in the image of G
    a_fail = None
    image_G = sorted(set(G.mor_map))
    for u in image_G:
        for w in C.hom_to(C.tgt[u]):
            if w not in we:
                continue
            pb = pullback(C, w, u)
            if pb is None:
                missing.append((w, u))
            elif pb.legs[1] not in we and a_fail is None:
                a_fail = (w, u)
    # (b): the comparison A → B ×_{GF(B)} GF(A) is a weak equivalence
    b_fail = None
    for f in C.morphisms:
        a, b = C.src[f], C.tgt[f]
        eta_b, gff = adj.unit[b], G(F(f))
        pb = pullback(C, eta_b, gff)
        if pb is None:
            missing.append((eta_b, gff))
            if b_fail is None:
                b_fail = f
            continue
        comparison = [i for i in C.hom(a, pb.apex)
                      if C.compose(pb.legs[0], i) == f and C.compose(pb.legs[1], i) == adj.unit[a]]
        if len(comparison) != 1 or comparison[0] not in we:
            if b_fail is None:
                b_fail = f
    left = check_properness(C, M, "left")
    return AdjointSectionReport(M, a_fail is None and not any(m[1] in image_G for m in missing),
                                b_fail is None, is_preorder(D), a_fail, b_fail,
                                tuple(missing), left)


# ---------------------------------------------------------------------------
# comparison


@dataclass(frozen=True)
class StructureComparison:
    we_equal: bool
    small_parts_equivalent: bool | None
    verdict: str


def compare_structures(C: FinCategory, M1: ModelStructureSpec,
                       M2: ModelStructureSpec) -> StructureComparison:
    """Conservative distinctness test: different weak equivalences, or cut
    structures whose ∅-side subcategories are inequivalent."""
    we_equal = M1.we == M2.we
    eq_small = None
    l1, l2 = M1.provenance.get("labels"), M2.provenance.get("labels")
    if l1 is not None and l2 is not None:
        I1 = C.full_subcategory([x for x, l in enumerate(l1) if l == min(l1)] if len(set(l1)) > 1
                                else [x for x, l in enumerate(l1) if l == 0])
        I2 = C.full_subcategory([x for x, l in enumerate(l2) if l == min(l2)] if len(set(l2)) > 1
                                else [x for x, l in enumerate(l2) if l == 0])
        eq_small = are_equivalent(I1, I2)
    distinct = (not we_equal) or eq_small is False
    return StructureComparison(we_equal, eq_small, "distinct" if distinct else "equal")
