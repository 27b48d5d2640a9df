"""Loopless multigraphs with contraction/deletion algebra and serialization.

A :class:`Multigraph` is an immutable value: ``n`` vertices labelled
``0..n-1`` and an ordered tuple of endpoint pairs.  The position of a pair in
``edges`` is its edge-id, so parallel edges are distinct objects and an
orientation can direct each copy independently.

Every operation that renumbers vertices also returns the map from old ids to
new ids so certificates can be carried through a pipeline of reductions.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    EmptyOrFullSide,
    Graph6MultiEdgeUnsupported,
    LoopRejected,
    ParseError,
    UnknownEdge,
    UnknownVertex,
    VertexOutOfRange,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise VertexOutOfRange(f"negative vertex count {self.n}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRange(f"edge {i} = ({u}, {v}) outside [0, {self.n})")
            if u == v:
                raise LoopRejected(f"edge {i} is a loop at vertex {u}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge-ids incident to each vertex, in edge-id order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def multiplicity(self) -> dict[Edge, int]:
        """Number of parallel copies for each unordered pair ``(min, max)``."""
        mult: dict[Edge, int] = {}
        for u, v in self.edges:
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + 1
        return mult

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def neighbors(self, v: int) -> set[int]:
        self._check_vertex(v)
        return {self.other(e, v) for e in self.incidence[v]}

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for e in self.incidence[x]:
                    y = self.other(e, x)
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def has_parallel_edges(self) -> bool:
        return any(c > 1 for c in self.multiplicity.values())

    def induced(self, vertices: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        """Subgraph induced by ``vertices``; returns it with the old->new id map."""
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Multigraph(len(keep), tuple(edges)), index

    def _check_vertex(self, v):
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise UnknownVertex(f"vertex {v!r} not in graph on {self.n} vertices")

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class CutCertificate:
    """A vertex side ``S`` and the edge-ids of ``[S, V - S]``."""

    side: frozenset[int]
    cut_edges: tuple[int, ...] = field(default=())

    @property
    def value(self) -> int:
        return len(self.cut_edges)

    def verify(self, G: Multigraph) -> bool:
        return edge_cut(G, self.side).cut_edges == tuple(self.cut_edges)

    def to_json(self):
        return {"side": sorted(self.side), "cut_edges": list(self.cut_edges)}


def build(n: int, edges: Iterable[Sequence[int]] = ()) -> Multigraph:
    return Multigraph(n, tuple((u, v) for u, v in edges))


def complete_graph(n: int, multiplicity: int = 1) -> Multigraph:
    return build(n, [(u, v) for u in range(n) for v in range(u + 1, n) for _ in range(multiplicity)])


def cycle_graph(n: int) -> Multigraph:
    if n == 2:
        return build(2, [(0, 1), (0, 1)])
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def _check_edges(G: Multigraph, X: Iterable[int]) -> list[int]:
    ids = list(X)
    for e in ids:
        if not (isinstance(e, int) and 0 <= e < G.m):
            raise UnknownEdge(f"edge-id {e!r} not in graph with {G.m} edges")
    return ids


def contract(G: Multigraph, X: Iterable[int]) -> tuple[Multigraph, list[int]]:
    """Identify the ends of every edge in ``X`` and drop the resulting loops.

    Returns the contracted graph and ``merge`` with ``merge[old] = new``.
    New ids follow the smallest old member of each merged class.
    """
    ids = _check_edges(G, X)
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in ids:
        a, b = (find(x) for x in G.edges[e])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(v) for v in range(G.n)})
    index = {r: i for i, r in enumerate(roots)}
    merge = [index[find(v)] for v in range(G.n)]
    edges = [(merge[u], merge[v]) for u, v in G.edges if merge[u] != merge[v]]
    return Multigraph(len(roots), tuple(edges)), merge


def contract_vertices(G: Multigraph, W: Iterable[int]) -> tuple[Multigraph, list[int]]:
    """Identify all vertices of ``W`` into one (``G/W``), dropping loops.

    Unlike :func:`contract` this does not require ``G[W]`` to be connected.
    """
    W = sorted(set(W))
    for v in W:
        G._check_vertex(v)
    if not W:
        return G, list(range(G.n))
    rep = W[0]
    members = set(W)
    roots = [v for v in range(G.n) if v not in members or v == rep]
    index = {r: i for i, r in enumerate(roots)}
    merge = [index[rep] if v in members else index[v] for v in range(G.n)]
    edges = [(merge[u], merge[v]) for u, v in G.edges if merge[u] != merge[v]]
    return Multigraph(len(roots), tuple(edges)), merge


def delete_vertex(G: Multigraph, v: int) -> tuple[Multigraph, list[int | None]]:
    G._check_vertex(v)
    mapping: list[int | None] = [i if i < v else i - 1 for i in range(G.n)]
    mapping[v] = None
    edges = [(mapping[a], mapping[b]) for a, b in G.edges if a != v and b != v]
    return Multigraph(G.n - 1, tuple(edges)), mapping


def delete_edges(G: Multigraph, E1: Iterable[int]) -> Multigraph:
    drop = set(_check_edges(G, E1))
    return Multigraph(G.n, tuple(e for i, e in enumerate(G.edges) if i not in drop))


def add_edges(G: Multigraph, new_edges: Iterable[Sequence[int]]) -> Multigraph:
    return Multigraph(G.n, G.edges + tuple((u, v) for u, v in new_edges))


def degree(G: Multigraph, v: int) -> int:
    return G.degree(v)


def is_connected(G: Multigraph) -> bool:
    return G.is_connected()


def edge_cut(G: Multigraph, S: Iterable[int]) -> CutCertificate:
    side = frozenset(S)
    for v in side:
        G._check_vertex(v)
    if not side or len(side) >= G.n:
        raise EmptyOrFullSide("cut side must be a proper nonempty vertex subset")
    cut = tuple(i for i, (u, v) in enumerate(G.edges) if (u in side) != (v in side))
    return CutCertificate(side, cut)


def cut_size(G: Multigraph, S: Iterable[int]) -> int:
    """``d(S)``: number of edges with exactly one end in ``S`` (no side checks)."""
    side = set(S)
    return sum(1 for u, v in G.edges if (u in side) != (v in side))


# --------------------------------------------------------------------------
# serialization


def to_json(G: Multigraph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.edges]}


def serialize(G: Multigraph, format: str = "json") -> str:
    if format in ("json", "json-edgelist"):
        return json.dumps(to_json(G), separators=(",", ":"))
    if format == "graph6":
        return to_graph6(G)
    raise ValueError(f"unknown format {format!r}")


def from_json(obj) -> Multigraph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise ParseError('expected an object with keys "n" and "edges"', 0)
    n, edges = obj["n"], obj["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError('"n" must be an integer', 0)
    pairs = []
    for i, e in enumerate(edges):
        if not (isinstance(e, (list, tuple)) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"edge {i} is not a pair of integers", 0)
        pairs.append((e[0], e[1]))
    return build(n, pairs)


def parse(text: str | bytes, format: str = "json") -> Multigraph:
    if format in ("json", "json-edgelist"):
        if isinstance(text, bytes):
            text = text.decode()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.pos) from None
        return from_json(obj)
    if format == "graph6":
        return from_graph6(text)
    raise ValueError(f"unknown format {format!r}")


_G6_HEADER = b">>graph6<<"


def from_graph6(text: str | bytes) -> Multigraph:
    data = text.encode() if isinstance(text, str) else bytes(text)
    data = data.strip()
    pos = len(_G6_HEADER) if data.startswith(_G6_HEADER) else 0
    for i in range(pos, len(data)):
        if not 63 <= data[i] <= 126:
            raise ParseError(f"byte {data[i]} outside graph6 range", i)
    if pos >= len(data):
        raise ParseError("missing vertex count", pos)
    if data[pos] != 126:
        n, pos = data[pos] - 63, pos + 1
    elif pos + 1 < len(data) and data[pos + 1] != 126:
        if pos + 4 > len(data):
            raise ParseError("truncated vertex count", pos)
        n = 0
        for b in data[pos + 1 : pos + 4]:
            n = (n << 6) | (b - 63)
        pos += 4
    else:
        if pos + 8 > len(data):
            raise ParseError("truncated vertex count", pos)
        n = 0
        for b in data[pos + 2 : pos + 8]:
            n = (n << 6) | (b - 63)
        pos += 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} adjacency bytes, found {len(body)}", pos)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return build(n, edges)


def to_graph6(G: Multigraph) -> str:
    if G.has_parallel_edges():
        raise Graph6MultiEdgeUnsupported("graph6 cannot encode parallel edges")
    n = G.n
    if n < 63:
        out = [n + 63]
    elif n < 258048:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    present = set(G.multiplicity)
    bits = [1 if (i, j) in present else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode()


# --------------------------------------------------------------------------
# canonical form (individualization-refinement)


def _refine(G: Multigraph, colors: list[int]) -> list[int]:
    adj = [dict() for _ in range(G.n)]
    for (u, v), c in G.multiplicity.items():
        adj[u][v] = c
        adj[v][u] = c
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], c) for u, c in adj[v].items())))
            for v in range(G.n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == len(set(colors)):
            return new
        colors = new


def canonical_form(G: Multigraph) -> tuple[int, tuple[Edge, ...]]:
    """Isomorphism-invariant key: ``(n, sorted relabelled edge tuple)``.

    Exponential in the worst case (highly symmetric graphs), fine at the
    sizes the search harness explores.
    """
    best = None

    def leaf_key(colors):
        edges = sorted(
            (min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in G.edges
        )
        return tuple(edges)

    def search(colors):
        nonlocal best
        colors = _refine(G, colors)
        if len(set(colors)) == G.n:
            key = leaf_key(colors)
            if best is None or key < best:
                best = key
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(G.n):
            if colors[v] == target:
                # individualized vertex sorts before the rest of its cell
                child = [2 * c + (0 if (u == v) else 1) if c == target else 2 * c for u, c in enumerate(colors)]
                search(child)

    if G.n == 0:
        return (0, ())
    search([0] * G.n)
    return (G.n, best)


def relabel(G: Multigraph, perm: Sequence[int]) -> Multigraph:
    """Graph with vertex ``v`` renamed ``perm[v]``; edge order preserved."""
    return Multigraph(G.n, tuple((perm[u], perm[v]) for u, v in G.edges))
