"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
in the terminal summary.  Tolerances are exact: every check is a boolean
over an exhaustive or seeded corpus."""
from __future__ import annotations

import random

import numpy as np
import pytest

from modelkit import corpus
from modelkit.fincat import coproduct, coproduct_properties, monic_length, pullback
from modelkit.graphs import (
    GraphHom, all_graphs, all_graphs_upto, bauslaugh_profile, coproduct as graph_coproduct,
    coproduct_is_disjoint, core, gnp, is_isomorphic, iter_homs, looped_point,
    product as graph_product, split_over_coproduct,
)
from modelkit.graphs.batch import (
    all_core_checks, cofibration_sweep, hom_existence, pi0_condition_sweep,
)
from modelkit.graphs.model import classify_core_morphism, factor_acof_fib, factor_cof_afib, find_section
from modelkit.modelstruct import (
    Cut, build_cut_structure, build_double_cut_structure, check_properness, cuts, double_cuts,
    verify_model_structure,
)
from modelkit.semisimp import adjoint_factorize, random_map, standard_chain_category

def report(record_property, n: int, detail: str) -> None:
    record_property("criterion", n)
    record_property("detail", detail)


def test_criterion_01_cut_structures_on_small_posets(record_property):
    record_property("criterion", 1)
    posets = corpus.all_posets(5)
    total = failures = 0
    for C in posets:
        for F in cuts(C):
            for v in ("balanced", "right", "left"):
                total += 1
                failures += not verify_model_structure(C, build_cut_structure(C, F, v)).verdict
        for F in double_cuts(C):
            total += 1
            failures += not verify_model_structure(C, build_double_cut_structure(C, F)).verdict
    report(record_property, 1, f"{len(posets)} posets, {total} structures, {failures} failures")
    assert len(posets) == 87
    assert failures == 0


def test_criterion_02_properness_table(record_property):
    record_property("criterion", 2)
    checked = bad = 0
    for C in corpus.corpus():
        for F in cuts(C):
            M = build_cut_structure(C, F, "balanced")
            checked += 1
            bad += not (check_properness(C, M, "left").ok and check_properness(C, M, "right").ok)
    C = corpus.SQ()
    F = Cut.from_small(C, corpus.PAPER_CUTS["SQ"])
    r = build_cut_structure(C, F, "right")
    l = build_cut_structure(C, F, "left")
    r_left, r_right = check_properness(C, r, "left"), check_properness(C, r, "right")
    l_left, l_right = check_properness(C, l, "left"), check_properness(C, l, "right")
    pattern = (r_left.ok, r_right.ok, l_left.ok, l_right.ok)
    report(record_property, 2, f"balanced: {checked} structures, {bad} improper; "
                               f"SQ right/left pattern (L,R,L,R) = {pattern}")
    assert bad == 0
    assert pattern == (True, False, False, True)
    # replay both witnesses
    w, p, leg = r_right.witness
    assert w in r.we and p in r.fib and pullback(C, w, p).legs[1] == leg and leg not in r.we
    from modelkit.fincat import pushout
    g, i, leg = l_left.witness
    assert g in l.we and i in l.cof and pushout(C, i, g).legs[0] == leg and leg not in l.we


def test_criterion_03_lattice_facts(record_property):
    record_property("criterion", 3)
    L4, L5 = corpus.LAT4(), corpus.LAT5()
    r4, r5 = coproduct_properties(L4), coproduct_properties(L5)
    A, B = L4.object_id("A"), L4.object_id("B")
    pb = pullback(L4, L4.between(A, "*"), L4.between(B, "*"))
    facts = {
        "LAT4 (split, disjoint)": (r4.splitting, r4.disjoint),
        "LAT5 (split, disjoint)": (r5.splitting, r5.disjoint),
        "LAT4 A×_* B": L4.object_names[pb.apex],
        "LAT4 A⊔B": L4.object_names[coproduct(L4, A, B).apex],
    }
    report(record_property, 3, "; ".join(f"{k} = {v}" for k, v in facts.items()))
    assert facts == {
        "LAT4 (split, disjoint)": (True, False),
        "LAT5 (split, disjoint)": (False, False),
        "LAT4 A×_* B": "X",
        "LAT4 A⊔B": "*",
    }


def test_criterion_04_core_structure_on_graphs(record_property):
    record_property("criterion", 4)
    # (a) and (c): every hom between graphs with at most 5 vertices
    pairs, homs, bad_ac = all_core_checks(5, 4)
    # (b): every hom between graphs with at most 4 vertices
    homs_b, cofs, bad_b = cofibration_sweep(4)
    # per-hom API against the batch results on a seeded sample
    rng = random.Random(4)
    gs = all_graphs_upto(5)
    sample_bad = 0
    for _ in range(150):
        X, Y = rng.choice(gs), rng.choice(gs)
        fs = list(iter_homs(X, Y))
        if not fs:
            continue
        f = rng.choice(fs)
        c = classify_core_morphism(f, 3)
        sample_bad += c.acyclic_fib != (find_section(f) is not None)
        i, p = factor_cof_afib(f)
        j, q = factor_acof_fib(f)
        sample_bad += i.then(p).map != f.map or j.then(q).map != f.map
    report(record_property, 4,
           f"(a,c) {pairs} pairs, {homs} homs, {len(bad_ac)} mismatches; "
           f"(b) {homs_b} homs, {cofs} cofibrations, {len(bad_b)} mismatches; "
           f"sample {sample_bad} mismatches")
    assert pairs == 663 ** 2 and homs == 75103777
    assert bad_ac == [] and bad_b == [] and sample_bad == 0
    assert homs_b == 407361 and cofs == 905


def test_criterion_05_core_invariant(record_property):
    record_property("criterion", 5)
    gs = all_graphs_upto(6)
    cores = [core(G) for G in gs]
    # classes of cores up to isomorphism
    reps: list = []
    cls = np.empty(len(gs), dtype=np.int32)
    for k, c in enumerate(cores):
        for r, R in enumerate(reps):
            if R.n == c.core.n and len(R.edges) == len(c.core.edges) and is_isomorphic(R, c.core):
                cls[k] = r
                break
        else:
            cls[k] = len(reps)
            reps.append(c.core)
    E = hom_existence(gs)
    equiv = E & E.T
    same = cls[:, None] == cls[None, :]
    disagreements = int((equiv != same).sum())
    idem = sum(not is_isomorphic(core(c.core).core, c.core) for c in cores)
    replay = sum(not c.replay() for c in cores)
    restart = 0
    for k, G in enumerate(gs):
        c2 = core(G, seed=k)
        restart += not is_isomorphic(c2.core, cores[k].core)
    report(record_property, 5,
           f"{len(gs)} graphs, {len(reps)} core classes, {disagreements} disagreeing pairs, "
           f"{idem} non-idempotent, {restart} restart-unstable, {replay} bad certificates")
    assert len(gs) == 5759
    assert disagreements == 0 and idem == 0 and restart == 0 and replay == 0


def test_criterion_06_bauslaugh_agreement(record_property):
    record_property("criterion", 6)
    gs = all_graphs_upto(5)
    profiles = [bauslaugh_profile(G) for G in gs]
    disagree = [G for G, p in zip(gs, profiles) if not p.agree()]
    cores_ = sum(p.s_core for p in profiles)
    report(record_property, 6, f"{len(gs)} graphs, {cores_} cores, {len(disagree)} disagreements "
                               "(finite graphs only; no infinite counterexample is attempted)")
    assert disagree == []


def test_criterion_07_graph_distributivity_and_coproducts(record_property):
    record_property("criterion", 7)
    rng = random.Random(2024)
    dist_bad = split_bad = disj_bad = splits = 0
    for t in range(200):
        A, B, C = (gnp(rng.randint(0, 4), rng.random(), rng.randrange(10**9), loops=True)
                   for _ in range(3))
        lhs = graph_product(A, graph_coproduct(B, C).apex).apex
        rhs = graph_coproduct(graph_product(A, B).apex, graph_product(A, C).apex).apex
        dist_bad += not is_isomorphic(lhs, rhs)
        disj_bad += not coproduct_is_disjoint(B, C)
        S = graph_coproduct(B, C).apex
        for f in list(iter_homs(A, S))[:40]:
            sp = split_over_coproduct(f, B, C)
            splits += 1
            if sp is None:
                split_bad += 1
                continue
            (fb, fc), (ib, ic) = sp.parts, sp.inclusions
            ok = all(f.map[ib.map[x]] == fb.map[x] for x in range(fb.source.n))
            ok &= all(f.map[ic.map[x]] == fc.map[x] + B.n for x in range(fc.source.n))
            ok &= sorted(ib.map + ic.map) == list(range(A.n))
            ok &= is_isomorphic(graph_coproduct(fb.source, fc.source).apex, A)
            split_bad += not ok
    report(record_property, 7, f"200 triples: {dist_bad} non-distributive, {disj_bad} non-disjoint; "
                               f"{splits} maps into coproducts, {split_bad} failed to split")
    assert dist_bad == 0 and disj_bad == 0 and split_bad == 0


def test_criterion_08_adjoint_section_instance(record_property):
    record_property("criterion", 8)
    rng = random.Random(8)
    ident = composite = 0
    for _ in range(100):
        f = random_map(rng.randint(0, 3), 3, rng)
        fa = adjoint_factorize(f)
        ident += fa.f_of_i_is_identity
        composite += fa.i.then(fa.p).levels == f.levels
    report(record_property, 8, f"F(i) identity {ident}/100, p∘i = f {composite}/100")
    assert ident == 100 and composite == 100


def test_criterion_09_monic_length(record_property):
    record_property("criterion", 9)
    got = {n: monic_length(standard_chain_category(n)) for n in range(7)}
    report(record_property, 9, f"monic length by n: {got}")
    assert got == {n: n + 1 for n in range(7)}


def test_criterion_10_component_condition(record_property):
    record_property("criterion", 10)
    homs, evals, bad = pi0_condition_sweep(5)
    report(record_property, 10, f"{homs} homs, {evals} distinct component maps evaluated, "
                                f"{len(bad)} failures")
    assert bad == []
