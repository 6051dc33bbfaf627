from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from modelkit.graphs import (
    Graph, GraphError, GraphHom, all_graphs, complete, count_homs, cycle, disjoint_union, empty,
    find_hom, find_hom_within, find_isomorphism, gnp, graph_corpus, has_hom, hom_equivalent,
    is_isomorphic, iter_homs, looped_point, named_graph, path, petersen, tensor_product,
)


@st.composite
def graphs(draw, max_n=5, loops=True):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    return Graph.make(n, [p for p in pairs if draw(st.booleans())])


def brute_homs(G: Graph, H: Graph) -> list[tuple[int, ...]]:
    return [m for m in itertools.product(range(H.n), repeat=G.n)
            if all(H.has_edge(m[u], m[v]) for u, v in G.edges)]


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    return g


def test_make_normalizes_and_validates():
    G = Graph.make(3, [(1, 0), (0, 1), (2, 2)])
    assert G.sorted_edges() == [(0, 1), (2, 2)]
    assert G.loops == (2,) and G.has_edge(1, 0) and G.degree(2) == 1
    with pytest.raises(GraphError):
        Graph.make(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(2, frozenset({(1, 0)}))


def test_text_round_trip_and_errors():
    G = petersen()
    assert Graph.from_text(G.to_text()) == G
    with pytest.raises(GraphError, match="line 2"):
        Graph.from_text("3\n0 x\n")
    with pytest.raises(GraphError, match="line 3"):
        Graph.from_text("3\n0 1\n0 5\n")


def test_named_graphs():
    assert named_graph("K4") == complete(4)
    assert named_graph("C5") == cycle(5)
    assert named_graph("P3").sorted_edges() == [(0, 1), (1, 2)]
    assert named_graph("L1") == looped_point()
    assert len(petersen().edges) == 15
    with pytest.raises(KeyError):
        named_graph("Q7")
    assert len(graph_corpus()) == 16


def test_components_and_induced():
    G = disjoint_union(cycle(3), path(2), empty(1))
    assert G.components() == [[0, 1, 2], [3, 4], [5]]
    assert not G.is_connected()
    assert G.induced([3, 4]) == path(2)


@pytest.mark.parametrize("n,count", [(0, 1), (1, 2), (2, 6), (3, 20), (4, 90), (5, 544)])
def test_graph_counts_with_loops(n, count):
    assert len(all_graphs(n)) == count


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_graph_counts_without_loops(n, count):
    assert len(all_graphs(n, loops=False)) == count


def test_enumeration_has_no_isomorphic_duplicates():
    gs = all_graphs(4)
    for G, H in itertools.combinations(gs, 2):
        assert not nx.is_isomorphic(to_nx(G), to_nx(H))


@given(graphs(4), graphs(4))
def test_hom_search_matches_brute_force(G, H):
    expected = brute_homs(G, H)
    assert count_homs(G, H) == len(expected)
    assert sorted(f.map for f in iter_homs(G, H)) == sorted(expected)
    assert has_hom(G, H) == bool(expected)
    f = find_hom(G, H)
    assert (f is None) == (not expected)
    if f is not None:
        assert f.map == min(expected)


@given(graphs(4), graphs(3), st.data())
def test_constrained_search(G, H, data):
    if not G.n or not H.n:
        return
    allowed = [data.draw(st.sets(st.integers(0, H.n - 1), min_size=1)) for _ in range(G.n)]
    expected = [m for m in brute_homs(G, H) if all(m[v] in allowed[v] for v in range(G.n))]
    f = find_hom_within(G, H, [sorted(a) for a in allowed])
    assert (f is None) == (not expected)


def test_coloring_facts():
    assert has_hom(cycle(5), complete(3)) and not has_hom(cycle(5), complete(2))
    assert not has_hom(petersen(), complete(2)) and has_hom(petersen(), complete(3))
    assert has_hom(complete(4), looped_point())
    assert hom_equivalent(cycle(6), complete(2))
    assert count_homs(path(3), complete(2)) == 2


@given(graphs(5))
def test_isomorphism_matches_networkx(G):
    perm = list(reversed(range(G.n)))
    H = G.relabel(perm)
    f = find_isomorphism(G, H)
    assert f is not None and f.is_iso()


@given(graphs(5), graphs(5))
def test_is_isomorphic_matches_networkx(G, H):
    assert is_isomorphic(G, H) == nx.is_isomorphic(to_nx(G), to_nx(H))


def test_hom_properties():
    f = GraphHom(path(3), complete(2), (0, 1, 0))
    assert f.is_surjective() and not f.is_injective()
    assert GraphHom.identity(cycle(4)).is_iso()
    with pytest.raises(GraphError):
        GraphHom(complete(2), empty(2), (0, 1))
    g = GraphHom(complete(2), path(3), (0, 1))
    assert g.is_embedding() and g.then(f).map == (0, 1)


@given(graphs(3), graphs(3), graphs(2))
def test_tensor_product_is_product(A, B, T):
    P = tensor_product(A, B)
    # Hom(T, A × B) ≅ Hom(T, A) × Hom(T, B)
    assert count_homs(T, P) == count_homs(T, A) * count_homs(T, B)


def test_gnp_is_seeded():
    assert gnp(7, 0.4, seed=3) == gnp(7, 0.4, seed=3)
    assert any(gnp(7, 0.4, seed=s) != gnp(7, 0.4, seed=0) for s in range(1, 5))
    assert all(not gnp(6, 0.9, seed=s).loops for s in range(5))
