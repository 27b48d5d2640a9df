import json

import networkx as nx
import pytest
from hypothesis import given, settings

from flowforge.errors import (
    EmptyOrFullSide,
    Graph6MultiEdgeUnsupported,
    LoopRejected,
    ParseError,
    UnknownEdge,
    VertexOutOfRange,
)
from flowforge.graphcore import (
    build,
    canonical_form,
    complete_graph,
    contract,
    contract_vertices,
    cut_size,
    cycle_graph,
    delete_edges,
    delete_vertex,
    edge_cut,
    from_graph6,
    parse,
    relabel,
    serialize,
    to_graph6,
)

from strategies import multigraphs


def test_loops_are_rejected():
    with pytest.raises(LoopRejected):
        build(2, [(0, 0)])


def test_endpoint_out_of_range():
    with pytest.raises(VertexOutOfRange):
        build(2, [(0, 2)])


def test_parallel_edges_keep_distinct_ids():
    G = build(2, [(0, 1), (1, 0), (0, 1)])
    assert G.m == 3
    assert G.multiplicity == {(0, 1): 3}
    assert G.incidence[0] == (0, 1, 2)
    assert G.other(1, 0) == 1


def test_two_cycle():
    G = cycle_graph(2)
    assert (G.n, G.m) == (2, 2) and G.has_parallel_edges()


def test_degrees_and_components():
    G = build(5, [(0, 1), (1, 2), (3, 4), (3, 4)])
    assert G.degrees() == [1, 2, 1, 2, 2]
    assert sorted(map(sorted, G.components())) == [[0, 1, 2], [3, 4]]
    assert not G.is_connected()


def test_contract_merges_and_drops_loops():
    G = cycle_graph(4)
    H, merge = contract(G, [0])
    assert merge == [0, 0, 1, 2]
    assert H.n == 3 and H.m == 3


def test_contract_unknown_edge():
    with pytest.raises(UnknownEdge):
        contract(cycle_graph(3), [7])


def test_contract_vertices_disconnected_set():
    G = cycle_graph(4)
    H, merge = contract_vertices(G, [0, 2])
    assert merge[0] == merge[2]
    assert H.n == 3 and H.m == 4
    assert H.multiplicity[(0, 1)] == 2


def test_delete_vertex_mapping():
    H, mapping = delete_vertex(complete_graph(4), 1)
    assert mapping == [0, None, 1, 2]
    assert H == complete_graph(3)


def test_delete_edges_keeps_order():
    G = delete_edges(complete_graph(4), [0, 5])
    assert G.edges == ((0, 2), (0, 3), (1, 2), (1, 3))


def test_edge_cut_certificate():
    G = complete_graph(4)
    cert = edge_cut(G, {0, 1})
    assert cert.value == 4 == cut_size(G, {0, 1})
    assert cert.verify(G)
    with pytest.raises(EmptyOrFullSide):
        edge_cut(G, set())
    with pytest.raises(EmptyOrFullSide):
        edge_cut(G, range(4))


def test_json_round_trip_and_compact_form():
    G = build(3, [(0, 1), (0, 1), (1, 2)])
    text = serialize(G)
    assert text == '{"n":3,"edges":[[0,1],[0,1],[1,2]]}'
    assert parse(text) == G


def test_json_parse_error_reports_offset():
    with pytest.raises(ParseError) as info:
        parse('{"n": 2, "edges": [[0, 1]')
    assert info.value.offset > 0


def test_json_shape_errors():
    with pytest.raises(ParseError):
        parse(json.dumps({"n": 2}))
    with pytest.raises(ParseError):
        parse(json.dumps({"n": 2, "edges": [[0, 1, 2]]}))


def test_graph6_matches_networkx():
    G = from_graph6("C~")
    assert sorted(G.edges) == sorted(nx.from_graph6_bytes(b"C~").edges())
    assert sorted(G.edges) == sorted(complete_graph(4).edges)


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_n=9, max_m=20))
def test_graph6_round_trip_simple(G):
    simple = build(G.n, sorted(G.multiplicity))
    text = to_graph6(simple)
    assert sorted(from_graph6(text).edges) == sorted(simple.edges)
    if G.n:
        ref = nx.empty_graph(G.n)
        ref.add_edges_from(simple.edges)
        assert text.encode() == nx.to_graph6_bytes(ref, header=False).strip()


def test_graph6_long_form_and_header():
    G = build(70, [(0, 69)])
    text = to_graph6(G)
    assert text.startswith("~")
    assert from_graph6(">>graph6<<" + text) == G


def test_graph6_rejects_multigraph_and_bad_bytes():
    with pytest.raises(Graph6MultiEdgeUnsupported):
        to_graph6(cycle_graph(2))
    with pytest.raises(ParseError):
        from_graph6("C~~")
    with pytest.raises(ParseError):
        from_graph6("C\x01")


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_n=6, max_m=9), multigraphs(max_n=1, max_m=0))
def test_canonical_form_is_relabelling_invariant(G, _):
    import random

    perm = list(range(G.n))
    random.Random(G.m * 31 + G.n).shuffle(perm)
    assert canonical_form(relabel(G, perm)) == canonical_form(G)


def test_canonical_form_separates_non_isomorphic():
    path = build(4, [(0, 1), (1, 2), (2, 3)])
    star = build(4, [(0, 1), (0, 2), (0, 3)])
    assert canonical_form(path) != canonical_form(star)
    assert canonical_form(cycle_graph(2)) != canonical_form(build(2, [(0, 1)]))
