import math

import networkx as nx
import pytest
from hypothesis import assume, given, settings

from flowforge.connectivity import (
    INFINITE,
    all_pairs_lambda,
    edge_connectivity,
    essential_edge_connectivity,
    is_essentially_k_edge_connected,
    local_edge_connectivity,
    mader_split,
    max_flow,
    split_off,
)
from flowforge.errors import PreconditionViolated, SameVertex, TooSmall
from flowforge.graphcore import build, complete_graph, cycle_graph
from flowforge.oracles import edge_connectivity_by_subsets, essential_connectivity_by_subsets

from strategies import multigraphs


def _nx_lambda(G, x, y):
    D = nx.DiGraph()
    D.add_nodes_from(range(G.n))
    for (u, v), t in G.multiplicity.items():
        D.add_edge(u, v, capacity=t)
        D.add_edge(v, u, capacity=t)
    return nx.maximum_flow_value(D, x, y)


def test_small_values(K4, two_cycle, J):
    assert edge_connectivity(K4)[0] == 3
    assert edge_connectivity(two_cycle)[0] == 2
    assert edge_connectivity(J)[0] == 4
    assert edge_connectivity(build(3, [(0, 1)]))[0] == 0


def test_cut_certificate_replays(J):
    value, cert = edge_connectivity(J)
    assert cert.verify(J) and cert.value == value


def test_essential_values(K4, J):
    assert essential_edge_connectivity(K4)[0] == 4
    value, cert = essential_edge_connectivity(J)
    assert value == 4 and cert.verify(J)
    assert is_essentially_k_edge_connected(J, 4)
    assert not is_essentially_k_edge_connected(J, 5)


def test_essential_infinite_without_disjoint_edges(triangle):
    # every pair of edges in a triangle or a star shares a vertex
    assert essential_edge_connectivity(triangle) == (INFINITE, None)
    star = build(4, [(0, 1), (0, 2), (0, 3), (0, 1)])
    assert essential_edge_connectivity(star)[0] == math.inf


def test_too_small_and_same_vertex():
    with pytest.raises(TooSmall):
        edge_connectivity(build(1))
    with pytest.raises(SameVertex):
        local_edge_connectivity(complete_graph(3), 1, 1)
    with pytest.raises(SameVertex):
        max_flow(complete_graph(3), [0, 1], [1])


@settings(max_examples=120, deadline=None)
@given(multigraphs(min_n=2, max_n=7, max_m=14))
def test_edge_connectivity_matches_subset_oracle(G):
    value, cert = edge_connectivity(G)
    assert value == edge_connectivity_by_subsets(G)[0]
    assert cert.value == value and cert.verify(G)


@settings(max_examples=80, deadline=None)
@given(multigraphs(min_n=4, max_n=7, max_m=14, connected=True))
def test_essential_matches_subset_oracle(G):
    value, cert = essential_edge_connectivity(G)
    slow = essential_connectivity_by_subsets(G)
    if slow is None:
        assert value == INFINITE
    else:
        assert value == slow and cert.value == slow


@settings(max_examples=80, deadline=None)
@given(multigraphs(min_n=2, max_n=7, max_m=14))
def test_local_connectivity_matches_networkx(G):
    assert local_edge_connectivity(G, 0, G.n - 1) == _nx_lambda(G, 0, G.n - 1)


def test_flow_limit_stops_early():
    value, _ = max_flow(complete_graph(6), [0], [5], limit=2)
    assert value == 2


def test_split_off_drops_would_be_loop():
    G = build(3, [(0, 2), (0, 2), (0, 1)])
    H = split_off(G, 0, 1, 0)
    assert H.edges == ((0, 1),)
    H = split_off(G, 0, 2, 0)
    assert H.multiplicity == {(0, 2): 1, (1, 2): 1}


def test_mader_split_on_k5():
    G = complete_graph(5)
    e1, e2, H = mader_split(G, 0)
    assert 0 in G.edges[e1] and 0 in G.edges[e2]
    assert all_pairs_lambda(H, exclude=[0]) == all_pairs_lambda(G, exclude=[0])
    assert H.m == G.m - 1


def test_mader_split_preconditions(K4):
    with pytest.raises(PreconditionViolated):
        mader_split(K4, 0)  # degree 3
    with pytest.raises(PreconditionViolated):
        mader_split(build(2, [(0, 1)] * 4), 0)  # single neighbour
    cut_vertex = build(5, [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    with pytest.raises(PreconditionViolated):
        mader_split(cut_vertex, 0)


@settings(max_examples=40, deadline=None)
@given(multigraphs(min_n=3, max_n=6, max_m=14, connected=True))
def test_mader_split_preserves_all_pairs(G):
    from flowforge.graphcore import delete_vertex

    z = max(range(G.n), key=G.degree)
    assume(G.degree(z) >= 4 and len(G.neighbors(z)) >= 2)
    assume(delete_vertex(G, z)[0].is_connected())
    e1, e2, H = mader_split(G, z)
    for x in range(G.n):
        for y in range(x + 1, G.n):
            if z not in (x, y):
                assert _nx_lambda(H, x, y) == _nx_lambda(G, x, y)
