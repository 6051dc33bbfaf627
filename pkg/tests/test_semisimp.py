from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from modelkit.fincat import monic_length, validate_category
from modelkit.modelstruct import Cut, build_cut_structure
from modelkit.semisimp import (
    TOP, SemiSimplicialSet, SssError, SssMap, adjoint_factorize, boundary_triangle,
    classify_dim_cut, dimension, empty_sss, find_map, iter_maps, random_map, random_sss,
    sss_coproduct, sss_product, sss_pullback, sss_pushout, standard_D, standard_chain_category,
    triangle, truncate_above, unit_map, validate_sss,
)


def brute_maps(X, Y):
    """Every levelwise function commuting with all face maps."""
    levels = [list(itertools.product(range(Y.sizes[k]), repeat=X.sizes[k]))
              for k in range(X.N + 1)]
    out = []
    for choice in itertools.product(*levels):
        if all(Y.face(k, i, choice[k][x]) == choice[k - 1][X.face(k, i, x)]
               for k in range(1, X.N + 1) for x in range(X.sizes[k]) for i in range(k + 1)):
            out.append(tuple(choice))
    return out


@st.composite
def sss(draw, N=2, per_level=2):
    return random_sss(N, per_level, random.Random(draw(st.integers(0, 10**6))))


def test_examples_are_valid():
    for X in (standard_D(2, 3), empty_sss(2), boundary_triangle(2), triangle(2)):
        assert validate_sss(X) == []


def test_face_identities_are_checked():
    # an edge from 0 to 0 glued into a triangle whose faces disagree on vertices
    with pytest.raises(SssError):
        SemiSimplicialSet.make(2, [2, 3, 1], {1: [[1, 0], [1, 0], [0, 1]], 2: [[0, 1, 2]]})
    with pytest.raises(SssError):
        SemiSimplicialSet.make(1, [1, 1], {1: [[0, 3]]})


def test_text_round_trip_and_errors():
    X = triangle(3)
    assert SemiSimplicialSet.from_text(X.to_text()) == X
    with pytest.raises(SssError, match="line 4"):
        SemiSimplicialSet.from_text("1\n0 2\n1 1\n0\n")
    with pytest.raises(SssError, match="trailing"):
        SemiSimplicialSet.from_text("0\n0 1\n7\n")


def test_dimension():
    assert dimension(standard_D(1, 3)) == 1
    assert dimension(standard_D(3, 3)) == TOP
    assert dimension(empty_sss(2)) == -1
    assert dimension(boundary_triangle(2)) == 1
    assert dimension(triangle(3)) == 2


@given(sss(), sss())
def test_iter_maps_matches_brute_force(X, Y):
    assert sorted(f.levels for f in iter_maps(X, Y)) == sorted(brute_maps(X, Y))


def test_map_validation():
    X = boundary_triangle(2)
    with pytest.raises(SssError):
        SssMap(X, X, ((0, 0, 0), (0, 1, 2), ())).check()
    assert SssMap.identity(X).is_iso()
    assert unit_map(X).target == standard_D(1, 2)


@given(sss(), sss(), sss(N=2, per_level=1))
def test_product_and_coproduct_universal_counts(X, Y, T):
    P = sss_product(X, Y).apex
    assert len(brute_maps(T, P)) == len(brute_maps(T, X)) * len(brute_maps(T, Y))
    S = sss_coproduct(X, Y).apex
    assert len(brute_maps(S, T)) == len(brute_maps(X, T)) * len(brute_maps(Y, T))


@given(st.integers(0, 10**6))
def test_pullback_and_pushout(seed):
    f = random_map(2, 2, random.Random(seed))
    P = sss_pullback(f, f)
    assert P.legs[0].then(f).levels == P.legs[1].then(f).levels
    Q = sss_pushout(f, f)
    assert f.then(Q.legs[0]).levels == f.then(Q.legs[1]).levels
    T = standard_D(1, 2)
    cones = sum(1 for a, b in itertools.product(brute_maps(T, f.source), repeat=2)
                if all(f.levels[k][a[k][x]] == f.levels[k][b[k][x]]
                       for k in range(3) for x in range(T.sizes[k])))
    assert len(brute_maps(T, P.apex)) == cones


@given(st.integers(0, 10**6))
def test_adjoint_factorization(seed):
    f = random_map(3, 3, random.Random(seed))
    fa = adjoint_factorize(f)
    assert fa.i.then(fa.p).levels == f.levels
    assert fa.f_of_i_is_identity
    assert fa.dim_mid == fa.dim_source


def test_truncate_above():
    X = triangle(3)
    assert dimension(truncate_above(X, 1)) == 1
    assert truncate_above(X, 1).sizes == (3, 3, 0, 0)


def test_chain_category():
    for n in range(4):
        C = standard_chain_category(n)
        assert validate_category(C).ok
        assert C.n_objects == n + 2
        assert monic_length(C) == n + 1


@pytest.mark.parametrize("variant", ["balanced", "right", "left"])
def test_dimension_cut_flags_match_cut_structure(variant):
    N = 3
    C = standard_chain_category(N)
    for n in range(N):
        small = ["∅"] + [f"D{k}" for k in range(n + 1)]
        M = build_cut_structure(C, Cut.from_small(C, small), variant)
        for m in C.morphisms:
            fl = classify_dim_cut(C.concrete(m), n, variant)
            assert (fl.we, fl.cof, fl.fib) == (m in M.we, m in M.cof, m in M.fib), (n, C.describe(m))


def test_find_map():
    assert find_map(triangle(2), empty_sss(2)) is None
    assert find_map(empty_sss(2), triangle(2)) is not None
    # no degeneracies: edges cannot collapse to a vertex
    assert find_map(boundary_triangle(2), standard_D(0, 2)) is None
    assert find_map(boundary_triangle(2), standard_D(1, 2)) is not None
