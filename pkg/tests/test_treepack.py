import pytest
from hypothesis import given, settings

from flowforge.errors import Disconnected, TooSmall
from flowforge.graphcore import build, complete_graph
from flowforge.oracles import deficiency_by_partitions, dense_subsets_by_enumeration
from flowforge.treepack import (
    deficiency,
    find_dense_subgraph,
    is_forest,
    is_spanning_tree,
    pack_forests,
    tree_connected_components,
    tree_packing_number,
)

from strategies import multigraphs


def test_k4_values(K4):
    F, P = deficiency(K4, 4)
    assert F == 6
    assert P.to_json() == [[0], [1], [2], [3]]
    assert deficiency(K4, 2)[0] == 0
    assert tree_packing_number(K4)[0] == 2


def test_jaeger_values(J):
    F, P = deficiency(J, 4)
    assert F == 4 * 11 - 24 == 20
    assert P.value(J, 4) == 20 and P.is_partition_of(12)
    t, packing = tree_packing_number(J)
    assert t == 2
    assert all(is_spanning_tree(J, f) for f in packing.forests)


def test_two_cycle(two_cycle):
    assert deficiency(two_cycle, 4)[0] == 2
    assert tree_packing_number(two_cycle)[0] == 2


def test_errors():
    with pytest.raises(Disconnected):
        deficiency(build(3, [(0, 1)]), 2)
    with pytest.raises(TooSmall):
        tree_packing_number(build(1))
    with pytest.raises(Disconnected):
        tree_packing_number(build(3, [(0, 1)]))


def test_is_forest():
    G = complete_graph(3)
    assert is_forest(G, [0, 1])
    assert not is_forest(G, [0, 1, 2])
    assert is_spanning_tree(G, [0, 2])


@settings(max_examples=150, deadline=None)
@given(multigraphs(min_n=2, max_n=6, max_m=14, connected=True), multigraphs(max_n=1))
def test_deficiency_matches_partition_enumeration(G, _):
    for k in (1, 2, 3, 4):
        F, P = deficiency(G, k)
        assert F == deficiency_by_partitions(G, k)
        assert P.is_partition_of(G.n) and P.value(G, k) == F


@settings(max_examples=100, deadline=None)
@given(multigraphs(min_n=1, max_n=6, max_m=14))
def test_packing_is_valid(G):
    for k in (1, 2, 3):
        packing, _ = pack_forests(G, k)
        assert packing.is_valid()
        assert len(packing.forests) == k
        assert all(is_forest(G, f) for f in packing.forests)


@settings(max_examples=100, deadline=None)
@given(multigraphs(min_n=1, max_n=6, max_m=14))
def test_tree_connected_components_match_enumeration(G):
    for k in (1, 2, 3):
        dense = dense_subsets_by_enumeration(G, k)
        maximal = {X for X in dense if not any(X < Y for Y in dense)}
        got = {p for p in tree_connected_components(G, k).parts if len(p) >= 2}
        assert got == maximal


def test_find_dense_subgraph(K4):
    assert find_dense_subgraph(K4, 2) == {0, 1, 2, 3}
    bridged = build(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    assert find_dense_subgraph(bridged, 2) is None
    assert find_dense_subgraph(build(2, [(0, 1), (0, 1)]), 2) == {0, 1}


def test_dense_subgraph_exists_when_edge_count_allows():
    # |E| >= k(|V| - 1) forces a nontrivial k-tree-connected subgraph
    G = build(5, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (3, 4), (2, 3), (2, 4)])
    assert G.m >= 2 * (G.n - 1)
    X = find_dense_subgraph(G, 2)
    assert X is not None and len(X) >= 2
    H, _ = G.induced(X)
    assert deficiency(H, 2)[0] == 0
