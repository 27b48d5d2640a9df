"""Composite graphs used in the reduction arguments, and the Jaeger graph J.

Vertex numbering convention for every composite: the first operand keeps its
ids, the second operand's non-identified vertices are appended in their own
order.  Each constructor also reports where the distinguished vertices went.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .errors import IdenticalAnchors, MissingAnchors, MissingEdges, TooManyEdges, UnknownEdge
from .graphcore import Multigraph, build, complete_graph, delete_edges, from_json


@dataclass(frozen=True)
class Glued:
    """A composite graph plus the image maps of its two operands."""

    graph: Multigraph
    left: list[int]  # left operand vertex -> composite vertex
    right: list[int]  # right operand vertex -> composite vertex

    @property
    def u(self) -> int:
        return self._anchors[0]

    @property
    def v(self) -> int:
        return self._anchors[1]

    _anchors: tuple[int, int] = (0, 0)


def glue(G1: Multigraph, G2: Multigraph, pairs: Sequence[tuple[int, int]]) -> Glued:
    """Disjoint union of ``G1`` and ``G2`` with ``G2``-vertex ``b`` identified
    to ``G1``-vertex ``a`` for every ``(a, b)`` in ``pairs``."""
    ident = {}
    for a, b in pairs:
        G1._check_vertex(a)
        G2._check_vertex(b)
        ident[b] = a
    right = []
    nxt = G1.n
    for w in range(G2.n):
        if w in ident:
            right.append(ident[w])
        else:
            right.append(nxt)
            nxt += 1
    edges = list(G1.edges) + [(right[a], right[b]) for a, b in G2.edges]
    return Glued(build(nxt, edges), list(range(G1.n)), right)


def two_sum(G1: Multigraph, e: int, G2: Multigraph, u2: int, v2: int, flip: bool = False) -> Glued:
    """``G1 (+)_e G2``: delete ``e = u1 v1`` from ``G1``, identify ``u1`` with
    ``u2`` and ``v1`` with ``v2``.

    ``u1, v1`` are the stored endpoints of ``e``; ``flip`` swaps them, giving
    the other of the (generally non-isomorphic) two results.
    """
    if not (isinstance(e, int) and 0 <= e < G1.m):
        raise UnknownEdge(f"edge-id {e!r} not in G1")
    G2._check_vertex(u2)
    G2._check_vertex(v2)
    if u2 == v2:
        raise IdenticalAnchors("2-sum anchors in G2 must be distinct vertices")
    u1, v1 = G1.edges[e]
    if flip:
        u1, v1 = v1, u1
    g = glue(delete_edges(G1, [e]), G2, [(u1, u2), (v1, v2)])
    return Glued(g.graph, g.left, g.right, (u1, v1))


def jaeger_graph() -> Multigraph:
    """Three K4 blocks on x1..x12 (ids 0..11) joined by six edges.

    Blocks {x1..x4}, {x5..x8}, {x9..x12}; connectors x2x5, x4x7, x6x10,
    x8x12, x3x11, x1x9.  Loaded from the pinned golden edge list.
    """
    text = resources.files("flowforge.data").joinpath("jaeger.json").read_text()
    return from_json(json.loads(text))


def jaeger_graph_edges() -> list[tuple[int, int]]:
    """The same adjacency built programmatically (checked against the golden file)."""
    edges = []
    for base in (0, 4, 8):
        edges += [(base + i, base + j) for i in range(4) for j in range(i + 1, 4)]
    x = lambda i: i - 1  # noqa: E731
    edges += [(x(2), x(5)), (x(4), x(7)), (x(6), x(10)), (x(8), x(12)), (x(3), x(11)), (x(1), x(9))]
    return edges


def _remove_pair_edges(G: Multigraph, v: int, v1: int, v2: int) -> Multigraph:
    """``G - {v v1, v v2}`` (one copy each; two copies when ``v1 == v2``)."""
    wanted = [v1, v2]
    drop = []
    for e in G.incidence[v]:
        w = G.other(e, v)
        if w in wanted:
            wanted.remove(w)
            drop.append(e)
    if wanted:
        raise MissingEdges(f"edges {v}{v1} and {v}{v2} are not both in the graph")
    return delete_edges(G, drop)


@dataclass(frozen=True)
class KocholComposite:
    J: Multigraph  # J(v^1, v^2)
    J_anchors: tuple[int, int]  # ids of v^1, v^2 in J
    G: Multigraph  # G(Gamma)
    L: Multigraph  # Gamma - {v v1, v v2}
    L_in_J: tuple[list[int], list[int]]  # the two copies of L inside J
    J_in_G: tuple[list[int], list[int], list[int]]  # the three copies of J inside G


def kochol_composite(Gamma: Multigraph, v: int, v1: int, v2: int) -> KocholComposite:
    """Build ``J(v^1, v^2)`` from two copies of ``L = Gamma - {v v1, v v2}`` and
    ``G(Gamma)`` from a K4 and three copies of ``J``.

    For ``v1 != v2``: ``J = K (+)_{w1w2} L1 (+)_{w3w4} L2`` anchored at
    ``(v1, v2)`` of each copy.  For ``v1 == v2``: ``J`` is the union of the
    two copies with their ``v1`` identified.  In both cases
    ``G = K (+)_{w1w2} J1 (+)_{w2w3} J2 (+)_{w3w4} J3`` anchored at
    ``(v^1, v^2)``.
    """
    for x in (v, v1, v2):
        Gamma._check_vertex(x)
    L = _remove_pair_edges(Gamma, v, v1, v2)
    K = complete_graph(4)  # edges in order w1w2, w1w3, w1w4, w2w3, w2w4, w3w4
    edge_id = {pair: i for i, pair in enumerate(K.edges)}
    if v1 != v2:
        first = two_sum(K, edge_id[(0, 1)], L, v1, v2)
        e34 = _edge_index(first.graph, 2, 3)
        second = two_sum(first.graph, e34, L, v1, v2)
        J = second.graph
        copy1 = [first.right[x] for x in range(L.n)]
        copy2 = second.right
    else:
        g = glue(L, L, [(v1, v1)])
        J = g.graph
        copy1, copy2 = g.left, g.right
    anchors = (copy1[v], copy2[v])

    G = complete_graph(4)
    copies = []
    for a, b in ((0, 1), (1, 2), (2, 3)):
        s = two_sum(G, _edge_index(G, a, b), J, anchors[0], anchors[1])
        if copies:
            copies = [[s.left[x] for x in c] for c in copies]
        copies.append(s.right)
        G = s.graph
    return KocholComposite(J, anchors, G, L, (copy1, copy2), tuple(copies))


def _edge_index(G: Multigraph, a: int, b: int) -> int:
    for i, (x, y) in enumerate(G.edges):
        if {x, y} == {a, b}:
            return i
    raise UnknownEdge(f"no edge between {a} and {b}")


@dataclass(frozen=True)
class HGadget:
    graph: Multigraph
    w1: int  # the degree-2 vertex attached to u1, u2
    w2: int  # the degree-2 vertex attached to v1, v2


def h_gadget(G: Multigraph, anchors: Sequence[int]) -> HGadget:
    """``H(w_3^1, w_3^2) = K^2 (+) (K^1 (+) G(u1, u2))`` with triangles ``K^i``.

    Net effect: ``G`` plus a new vertex adjacent to ``u1, u2`` and another
    adjacent to ``v1, v2``.
    """
    if len(anchors) != 4:
        raise MissingAnchors("need anchors (u1, u2, v1, v2)")
    u1, u2, a1, a2 = anchors
    for x in anchors:
        G._check_vertex(x)
    if u1 == u2 or a1 == a2:
        raise IdenticalAnchors("each anchor pair must consist of distinct vertices")
    K1 = build(3, [(0, 1), (0, 2), (1, 2)])
    # K^1 (+)_{w1w2} G(u1, u2): G keeps its ids when it is the left operand
    inner = glue(G, delete_edges(K1, [0]), [(u1, 0), (u2, 1)])
    w1 = inner.right[2]
    outer = glue(inner.graph, delete_edges(K1, [0]), [(a1, 0), (a2, 1)])
    w2 = outer.right[2]
    return HGadget(outer.graph, w1, w2)


def g_star(H: HGadget, J: Multigraph | None = None) -> Multigraph:
    """Replace each edge ``x_{2i-1} x_{2i}`` of J by a copy of ``H`` glued at
    ``(w1, w2)``."""
    G = jaeger_graph() if J is None else J
    for i in range(6):
        a, b = 2 * i, 2 * i + 1
        G = two_sum(G, _edge_index(G, a, b), H.graph, H.w1, H.w2).graph
    return G


def subdivide_identify(G: Multigraph, E1: Sequence[int]) -> tuple[Multigraph, int]:
    """Subdivide each edge of ``E1`` and identify the new midpoints into ``z0``.

    ``z0`` gets id ``n``; ``G' - z0`` is ``G - E1`` edge for edge.
    """
    E1 = list(E1)
    if len(E1) > 3:
        raise TooManyEdges("at most three edges may be subdivided")
    if not E1:
        raise MissingEdges("need at least one edge")
    if len(set(E1)) != len(E1):
        raise UnknownEdge("repeated edge-id")
    for e in E1:
        if not (isinstance(e, int) and 0 <= e < G.m):
            raise UnknownEdge(f"edge-id {e!r} not in graph")
    z0 = G.n
    base = delete_edges(G, E1)
    extra = []
    for e in E1:
        a, b = G.edges[e]
        extra += [(a, z0), (z0, b)]
    return build(G.n + 1, list(base.edges) + extra), z0


def compose_witness(beta1: Sequence[int], beta2: Sequence[int], glued: Glued, modulus: int = 3) -> tuple[int, ...]:
    """Boundary function on a glued graph: each operand's values carried over,
    summed on identified vertices.

    If ``beta_i`` has no orientation on operand ``i`` then the result has none
    on a 2-sum or a one-vertex union.
    """
    out = [0] * glued.graph.n
    for x, b in enumerate(beta1):
        out[glued.left[x]] += b
    for x, b in enumerate(beta2):
        out[glued.right[x]] += b
    return tuple(b % modulus for b in out)
