"""Edge-connectivity, local and essential edge-connectivity, Mader splitting.

All flows are unit capacity per edge instance, so parallel edges count
separately.  Max-flow is plain BFS augmentation: the graphs here are small
and the flow value never exceeds the minimum degree.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations
from typing import Iterable

from .errors import NoPairFound, PreconditionViolated, SameVertex, TooSmall
from .graphcore import CutCertificate, Multigraph, add_edges, delete_edges, delete_vertex, edge_cut

INFINITE = math.inf


def max_flow(G: Multigraph, sources: Iterable[int], sinks: Iterable[int], limit: int | None = None):
    """Maximum number of edge-disjoint paths from the source set to the sink set.

    Returns ``(value, reachable)`` where ``reachable`` is the source side of a
    minimum cut.  With ``limit`` the search stops once that value is reached
    (``reachable`` is then not a cut).
    """
    src, snk = set(sources), set(sinks)
    if src & snk:
        raise SameVertex("source and sink sets overlap")
    # flow[e] = +1 if one unit runs edges[e][0] -> edges[e][1], -1 reverse
    flow = [0] * G.m
    value = 0
    while limit is None or value < limit:
        pred: dict[int, tuple[int, int] | None] = {s: None for s in src}
        queue = deque(src)
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            for e in G.incidence[x]:
                a, b = G.edges[e]
                if x == a:
                    y, ok = b, flow[e] < 1
                else:
                    y, ok = a, flow[e] > -1
                if ok and y not in pred:
                    pred[y] = (e, x)
                    if y in snk:
                        hit = y
                        break
                    queue.append(y)
        if hit is None:
            return value, frozenset(pred)
        y = hit
        while pred[y] is not None:
            e, x = pred[y]
            flow[e] += 1 if G.edges[e][0] == x else -1
            y = x
        value += 1
    return value, frozenset()


def local_edge_connectivity(G: Multigraph, x: int, y: int) -> int:
    G._check_vertex(x)
    G._check_vertex(y)
    if x == y:
        raise SameVertex(f"local connectivity needs distinct vertices, got {x} twice")
    return max_flow(G, [x], [y])[0]


def edge_connectivity(G: Multigraph) -> tuple[int, CutCertificate]:
    """Global edge-connectivity with a minimum cut (n-1 flows from vertex 0)."""
    if G.n < 2:
        raise TooSmall("edge-connectivity needs at least two vertices")
    best = None
    for v in range(1, G.n):
        value, side = max_flow(G, [0], [v])
        if best is None or value < best[0]:
            best = (value, side)
            if value == 0:
                break
    value, side = best
    cert = edge_cut(G, side)
    assert cert.value == value
    return value, cert


def _has_edge(G: Multigraph, S) -> bool:
    return any(u in S and v in S for u, v in G.edges)


def essential_edge_connectivity(G: Multigraph):
    """Minimum essential edge cut, or ``(INFINITE, None)`` if none exists.

    An edge cut ``[S, V-S]`` is essential when at least two components of
    ``G - X`` contain an edge.  A minimum one always separates some edge
    from some other edge, so we take the minimum over vertex-disjoint edge
    pairs of the cut separating the two pairs of endpoints.
    """
    if G.n < 2:
        raise TooSmall("essential edge-connectivity needs at least two vertices")
    pairs = sorted(G.multiplicity)
    best = None
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1 :]:
            if len({a, b, c, d}) < 4:
                continue
            limit = None if best is None else best[0]
            value, side = max_flow(G, [a, b], [c, d], limit=limit)
            if best is not None and value >= best[0]:
                continue
            best = (value, side)
    if best is None:
        return INFINITE, None
    value, side = best
    cert = edge_cut(G, side)
    assert cert.value == value and _has_edge(G, side) and _has_edge(G, set(range(G.n)) - side)
    return value, cert


def is_essentially_k_edge_connected(G: Multigraph, k: int) -> bool:
    return essential_edge_connectivity(G)[0] >= k


def all_pairs_lambda(G: Multigraph, exclude: Iterable[int] = ()) -> dict[tuple[int, int], int]:
    skip = set(exclude)
    verts = [v for v in range(G.n) if v not in skip]
    return {(x, y): max_flow(G, [x], [y])[0] for x, y in combinations(verts, 2)}


def split_off(G: Multigraph, e1: int, e2: int, z: int) -> Multigraph:
    """``G - v1 z - v2 z + v1 v2``; when ``v1 == v2`` the would-be loop is dropped."""
    v1, v2 = G.other(e1, z), G.other(e2, z)
    H = delete_edges(G, [e1, e2])
    return add_edges(H, [(v1, v2)]) if v1 != v2 else H


def mader_split(G: Multigraph, z: int):
    """Find edges ``e1 = v1 z``, ``e2 = v2 z`` whose splitting keeps every
    local edge-connectivity between vertices other than ``z``.

    Pairs are tried exhaustively (distinct neighbours first) and each
    candidate is verified by max-flow on all pairs.  Returns ``(e1, e2, G')``.
    """
    G._check_vertex(z)
    if G.degree(z) < 4:
        raise PreconditionViolated(f"vertex {z} has degree {G.degree(z)} < 4")
    if len(G.neighbors(z)) < 2:
        raise PreconditionViolated(f"vertex {z} has a single neighbour")
    if not G.is_connected() or not delete_vertex(G, z)[0].is_connected():
        raise PreconditionViolated(f"vertex {z} is separating")
    before = all_pairs_lambda(G, exclude=[z])
    inc = G.incidence[z]
    candidates = sorted(
        combinations(inc, 2), key=lambda p: (G.other(p[0], z) == G.other(p[1], z), p)
    )
    seen = set()
    for e1, e2 in candidates:
        key = tuple(sorted((G.other(e1, z), G.other(e2, z))))
        if key in seen:
            continue
        seen.add(key)
        H = split_off(G, e1, e2, z)
        if all_pairs_lambda(H, exclude=[z]) == before:
            return e1, e2, H
    raise NoPairFound(f"no admissible splitting at vertex {z}; this contradicts Mader's theorem")
