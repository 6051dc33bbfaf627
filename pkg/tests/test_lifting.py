from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from modelkit import corpus
from modelkit.fincat import CategoryError, is_epi, is_mono
from modelkit.lifting import (
    LiftingSquare, MorphismClass, complement, composition_closed, factorize_through, has_llp,
    is_retract_closed, lifting_obstruction, pullback_closed, pushout_closed, retract_witness,
    retracts_of, solve_lifting, squares, verify_wfs, wfs_closure_report,
)

FINSET = corpus.finite_sets((0, 1, 2, 3))


def injective(C, m):
    f = C.concrete(m)
    return len(set(f)) == len(f)


def surjective(C, m):
    return set(C.concrete(m)) == set(range(int(C.object_names[C.tgt[m]])))


def brute_llp(C, f, g):
    """Independent check: try every candidate diagonal for every square."""
    for top in C.hom(C.src[f], C.src[g]):
        for bottom in C.hom(C.tgt[f], C.tgt[g]):
            if C.compose(g, top) != C.compose(bottom, f):
                continue
            if not any(C.compose(h, f) == top and C.compose(g, h) == bottom
                       for h in C.hom(C.tgt[f], C.src[g])):
                return False
    return True


def test_square_validation():
    C = corpus.SQ()
    f = C.between("∅", "A")
    with pytest.raises(CategoryError):
        LiftingSquare.make(C, f, f, C.between("∅", "*"), C.between("A", "A"))


def test_squares_commute_and_lifts_solve():
    C = corpus.retract_pair()
    for f, g in itertools.product(C.morphisms, repeat=2):
        for sq in squares(C, f, g):
            assert C.compose(g, sq.top) == C.compose(sq.bottom, f)
            h = solve_lifting(C, sq)
            if h is not None:
                assert C.compose(h, f) == sq.top and C.compose(g, h) == sq.bottom
        assert has_llp(C, f, g) == brute_llp(C, f, g)
        ob = lifting_obstruction(C, f, g)
        assert (ob is None) == brute_llp(C, f, g)


def test_finite_sets_mono_epi_is_a_wfs():
    C = FINSET
    monos = MorphismClass.where(C, lambda m: injective(C, m))
    epis = MorphismClass.where(C, lambda m: surjective(C, m))
    assert monos == MorphismClass.where(C, lambda m: is_mono(C, m))
    assert epis == MorphismClass.where(C, lambda m: is_epi(C, m))
    assert complement(C, monos, "right") == epis
    assert complement(C, epis, "left") == monos
    rep = verify_wfs(C, monos, epis)
    # the only failures are maps whose middle object would be too big
    assert rep.lifting_ok and rep.retract_closed_ok and rep.maximal
    assert not rep.factorization_ok


def test_wfs_failure_reports_square():
    C = FINSET
    epis = MorphismClass.where(C, lambda m: surjective(C, m))
    everything = MorphismClass.all(C)
    rep = verify_wfs(C, everything, epis)
    assert not rep.lifting_ok
    sq = rep.failing_square
    assert solve_lifting(C, sq) is None


def test_factorization_through_classes():
    C = FINSET
    monos = MorphismClass.where(C, lambda m: injective(C, m))
    epis = MorphismClass.where(C, lambda m: surjective(C, m))
    for f in C.morphisms:
        a, b = int(C.object_names[C.src[f]]), int(C.object_names[C.tgt[f]])
        # a factorization A ↣ M ↠ B needs |M| >= |A| + |B \ im f|
        needed = a + b - len(set(C.concrete(f)))
        got = factorize_through(C, f, monos, epis)
        assert (got is not None) == (needed <= 3)
        if got:
            l, r = got
            assert C.compose(r, l) == f and l in monos and r in epis


def test_class_set_operations():
    C = corpus.SQ()
    a = MorphismClass.isos(C)
    b = MorphismClass.all(C)
    assert a <= b and (a | b) == b and (a & b) == a
    assert len(b - a) == C.n_morphisms - C.n_objects
    assert MorphismClass.from_dict(a.to_dict(), C) == a
    with pytest.raises(ValueError):
        MorphismClass.from_dict(a.to_dict(), corpus.E())


@st.composite
def class_in(draw, C):
    return MorphismClass.of(C, draw(st.sets(st.sampled_from(list(C.morphisms)))))


@pytest.mark.parametrize("name", ["SQ", "Retract", "HEX"])
@given(data=st.data())
def test_complement_galois_connection(name, data):
    C = corpus.named(name)
    S = data.draw(class_in(C))
    T = data.draw(class_in(C))
    right, left = complement(C, S, "right"), complement(C, S, "left")
    assert S <= complement(C, right, "left")
    assert S <= complement(C, left, "right")
    assert MorphismClass.isos(C) <= right and MorphismClass.isos(C) <= left
    if S <= T:
        assert complement(C, T, "right") <= right
    # complements are closed under composition, retracts and base change
    assert composition_closed(C, right) is None
    assert is_retract_closed(C, right)[0]
    assert pullback_closed(C, right) is None
    assert pushout_closed(C, left) is None


def test_retracts_in_retract_pair():
    C = corpus.retract_pair()
    e = C.morphism_id("e")
    ident = C.identities[C.object_id("B")]
    w = retract_witness(C, ident, e)
    assert w is not None
    assert C.compose(w.r, w.i) == C.identities[C.src[ident]]
    assert C.compose(w.j, ident) == C.compose(e, w.i)
    assert ident in retracts_of(C, e)
    assert {C.morphism_names[m] for m in retracts_of(C, e)} == {"id_B", "r", "s", "e"}
    ok, wit = is_retract_closed(C, MorphismClass.of(C, retracts_of(C, e)))
    assert ok
    ok, wit = is_retract_closed(C, MorphismClass.of(C, [e]))
    assert not ok and wit.g == e


def test_closure_report_on_lattice():
    C = corpus.LAT4()
    monos = MorphismClass.all(C)
    rep = wfs_closure_report(C, MorphismClass.isos(C), monos)
    assert rep.ok
