from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from modelkit import corpus
from modelkit.fincat import FinCategory, is_iso, pullback, pushout
from modelkit.lifting import MorphismClass
from modelkit.modelstruct import (
    Cut, DoubleCut, Functor, ModelStructureSpec, StructureError, adjoint_section_structure,
    build_cocore_structure, build_core_structure, build_cut_structure, build_double_cut_structure,
    check_properness, compare_structures, cut_as_double_cut, cuts, double_cuts, left_adjoint,
    preservation_failures, right_adjoint, trivial_structure, two_of_three_violation,
    verify_model_structure,
)

SMALL_POSETS = corpus.all_posets(4)


def brute_llp(C, f, g):
    return all(any(C.compose(h, f) == top and C.compose(g, h) == bottom
                   for h in C.hom(C.tgt[f], C.src[g]))
               for top in C.hom(C.src[f], C.src[g]) for bottom in C.hom(C.tgt[f], C.tgt[g])
               if C.compose(g, top) == C.compose(bottom, f))


def brute_is_model(C: FinCategory, we, cof, fib) -> bool:
    """Direct reading of the axioms: 2-of-3, both lifting directions, both
    factorizations and closure of the three classes under retracts."""
    ms = list(C.morphisms)
    for f, g in itertools.product(ms, repeat=2):
        if C.tgt[f] != C.src[g]:
            continue
        h = C.compose(g, f)
        if sum(x in we for x in (f, g, h)) == 2:
            return False
    for i, p in itertools.product(ms, repeat=2):
        if i in cof and p in fib and (i in we or p in we) and not brute_llp(C, i, p):
            return False
    for f in ms:
        for L, R in ((cof, fib & we), (cof & we, fib)):
            if not any(l in L and r in R and C.compose(r, l) == f
                       for mid in C.objects for l in C.hom(C.src[f], mid)
                       for r in C.hom(mid, C.tgt[f])):
                return False
    # with lifting and factorization in place, retract closure of the two
    # lifting classes follows; weak equivalences need their own check
    for f, g in itertools.product(ms, repeat=2):
        if g in we and f not in we:
            a, b, a2, b2 = C.src[f], C.tgt[f], C.src[g], C.tgt[g]
            for i, r in itertools.product(C.hom(a, a2), C.hom(a2, a)):
                if C.compose(r, i) != C.identities[a]:
                    continue
                for j, s in itertools.product(C.hom(b, b2), C.hom(b2, b)):
                    if (C.compose(s, j) == C.identities[b] and C.compose(j, f) == C.compose(g, i)
                            and C.compose(s, g) == C.compose(f, r)):
                        return False
    return True


def test_cut_and_double_cut_counts_on_chains():
    # monotone maps from a chain of n+1 elements to a chain of k elements
    for n in range(4):
        C = corpus.chain(n)
        assert len(cuts(C)) == n + 2
        assert len(double_cuts(C)) == (n + 2) * (n + 3) // 2


def test_cut_validation():
    C = corpus.SQ()
    with pytest.raises(StructureError):
        Cut((1, 0, 0, 0)).validate(C)
    with pytest.raises(StructureError):
        DoubleCut((0, 3, 0, 0)).validate(C)
    F = Cut.from_small(C, ["∅", "A"])
    assert F.small() == (0, 1) and F.big() == (2, 3) and not F.is_trivial()


def test_structure_rejects_missing_identity():
    C = corpus.E()
    with pytest.raises(StructureError):
        ModelStructureSpec.make(C, [], C.morphisms, C.morphisms)


def test_structure_dict_round_trip():
    C = corpus.SQ()
    M = build_cut_structure(C, Cut.from_small(C, ["∅", "A"]), "right")
    assert ModelStructureSpec.from_dict(M.to_dict(), C) == M
    with pytest.raises(StructureError):
        ModelStructureSpec.from_dict(M.to_dict(), corpus.LAT4())


@pytest.mark.parametrize("C", SMALL_POSETS[:12], ids=lambda C: C.name)
def test_double_cut_structures_match_brute_force(C):
    for F in double_cuts(C):
        M = build_double_cut_structure(C, F)
        assert verify_model_structure(C, M).verdict
        assert brute_is_model(C, M.we, M.cof, M.fib)


@pytest.mark.parametrize("C", SMALL_POSETS, ids=lambda C: C.name)
def test_cut_variants_are_double_cuts(C):
    for F in cuts(C):
        for v in ("balanced", "right", "left"):
            M = build_cut_structure(C, F, v)
            assert M == build_double_cut_structure(C, cut_as_double_cut(F, v))


def test_verifier_rejects_broken_structures():
    C = corpus.SQ()
    every, isos = MorphismClass.all(C), MorphismClass.isos(C)
    bad = ModelStructureSpec.make(C, every, isos, isos)
    rep = verify_model_structure(C, bad)
    assert not rep.verdict and not rep.cof_afib.factorization_ok
    assert not brute_is_model(C, bad.we, bad.cof, bad.fib)
    # two weak equivalences with a non-equivalence composite
    A, B, T = (C.object_id(x) for x in ("A", "B", "*"))
    we = MorphismClass.of(C, list(C.identities) + [C.between("∅", "A"), C.between("A", "*")])
    assert two_of_three_violation(C, we) is not None


@given(st.sampled_from(SMALL_POSETS), st.data())
def test_random_class_triples_agree_with_brute_force(C, data):
    ms = list(C.morphisms)
    extra = st.sets(st.sampled_from(ms))
    ids = set(C.identities)
    we, cof, fib = (MorphismClass.of(C, ids | data.draw(extra)) for _ in range(3))
    M = ModelStructureSpec.make(C, we, cof, fib)
    assert verify_model_structure(C, M).verdict == brute_is_model(C, we, cof, fib)


def test_trivial_core_and_cocore_structures():
    for name in ("E", "SQ", "LAT4", "HEX"):
        C = corpus.named(name)
        for M in (trivial_structure(C), build_core_structure(C), build_cocore_structure(C)):
            assert verify_model_structure(C, M).verdict, (name, M.provenance)


def test_core_structure_needs_colimits():
    # the split idempotent has no room to factor e = s∘r
    C = corpus.retract_pair()
    assert verify_model_structure(C, trivial_structure(C)).verdict
    for M in (build_core_structure(C), build_cocore_structure(C)):
        rep = verify_model_structure(C, M)
        assert not rep.verdict
        assert rep.cof_afib.unfactorable == C.morphism_id("e")


def test_properness_pattern_on_square():
    C = corpus.SQ()
    F = Cut.from_small(C, corpus.PAPER_CUTS["SQ"])
    b, r, l = (build_cut_structure(C, F, v) for v in ("balanced", "right", "left"))
    assert check_properness(C, b, "left") and check_properness(C, b, "right")
    assert check_properness(C, r, "left") and not check_properness(C, r, "right")
    assert not check_properness(C, l, "left") and check_properness(C, l, "right")


def test_properness_witness_replays():
    C = corpus.SQ()
    F = Cut.from_small(C, corpus.PAPER_CUTS["SQ"])
    M = build_cut_structure(C, F, "right")
    w, p, leg = check_properness(C, M, "right").witness
    assert w in M.we and p in M.fib
    assert pullback(C, w, p).legs[1] == leg and leg not in M.we
    M = build_cut_structure(C, F, "left")
    g, i, leg = check_properness(C, M, "left").witness
    assert g in M.we and i in M.cof
    assert pushout(C, i, g).legs[0] == leg and leg not in M.we


def test_compare_structures():
    C = corpus.E_prime()
    F = Cut.from_small(C, ["∅", "E"])
    b = build_cut_structure(C, F, "balanced")
    r = build_cut_structure(C, F, "right")
    assert compare_structures(C, b, r).verdict == "distinct"
    assert compare_structures(C, b, b).verdict == "equal"
    # on the two-object category these two coincide
    E = corpus.E()
    F = Cut.from_small(E, ["∅"])
    assert compare_structures(E, build_cut_structure(E, F, "balanced"),
                              build_cut_structure(E, F, "right")).we_equal


def poset_right_adjoint(F: Functor) -> tuple[int, ...] | None:
    """G(y) = greatest x with F(x) <= y, if it exists."""
    C, D = F.source, F.target
    out = []
    for y in D.objects:
        below = [x for x in C.objects if D.hom(F.on_object(x), y)]
        top = [x for x in below if all(C.hom(z, x) for z in below)]
        if not top:
            return None
        out.append(top[0])
    return tuple(out)


@pytest.mark.parametrize("name", ["SQ", "HEX", "LAT4", "LAT5"])
def test_cut_functor_adjoints_against_poset_formula(name):
    C, E = corpus.named(name), corpus.E()
    for F in cuts(C):
        Fu = Functor.from_object_map(C, E, F.labels)
        adj = right_adjoint(Fu)
        expected = poset_right_adjoint(Fu)
        assert (adj is None) == (expected is None)
        if adj is not None:
            assert adj.violations() == []
            assert adj.G.obj_map == expected
            # a left adjoint preserves colimits
            assert preservation_failures(Fu)["pushouts"] == []
        if left_adjoint(Fu) is not None:
            assert preservation_failures(Fu)["pullbacks"] == []


def test_distinguished_cut_of_hexagon_has_both_adjoints():
    C, E = corpus.HEX(), corpus.E()
    Fu = Functor.from_object_map(C, E, Cut.from_small(C, corpus.PAPER_CUTS["HEX"]).labels)
    adj = right_adjoint(Fu)
    assert adj is not None and adj.G.obj_map == (2, 5)
    assert left_adjoint(Fu).obj_map == (0, 3)
    assert preservation_failures(Fu) == {"pullbacks": [], "pushouts": []}


def test_adjoint_section_structure_is_a_model_structure():
    C, E = corpus.LAT4(), corpus.E()
    for F in cuts(C, include_trivial=False):
        adj = right_adjoint(Functor.from_object_map(C, E, F.labels))
        if adj is None or not adj.counit_is_iso:
            continue
        rep = adjoint_section_structure(C, adj)
        assert rep.valid and rep.target_is_preorder
        M = rep.structure
        assert verify_model_structure(C, M).verdict
        assert M.we == MorphismClass.where(C, lambda m: is_iso(E, adj.F(m)))


def test_functor_violations():
    C, E = corpus.SQ(), corpus.E()
    with pytest.raises(StructureError):
        Functor.from_object_map(C, E, (1, 0, 0, 0))
    assert Functor.identity(C).violations() == []
