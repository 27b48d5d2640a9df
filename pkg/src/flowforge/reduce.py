"""Detect and contract Z_3-connected subgraphs.

Z_3-connectivity survives adding edges, so a graph has a nontrivial
Z_3-connected subgraph iff some induced subgraph ``G[X]`` (``|X| >= 2``) is
Z_3-connected.  Such an ``X`` needs two edge-disjoint spanning trees, hence
lies inside one maximal 2-tree-connected vertex set; subsets are only
enumerated inside those sets and after cheap density/degree filters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, PreconditionViolated, TooSmall
from .graphcore import Multigraph, add_edges, contract_vertices, delete_vertex
from .orient import MAX_CELLS, is_z3_connected
from .treepack import tree_connected_components


@dataclass(frozen=True)
class ReducedVerdict:
    reduced: bool
    subgraph: frozenset[int] | None = None

    def __bool__(self):
        return self.reduced


#: default cap on candidate vertex sets examined by one reducedness query
MAX_CANDIDATES = 2_000_000


def _candidate_ok(G: Multigraph, X) -> bool:
    H, _ = G.induced(X)
    return H.m >= 2 * (H.n - 1) and H.min_degree() >= 2


def connected_sets(G: Multigraph, vertices, size: int):
    """Every ``X`` of exactly ``size`` vertices from ``vertices`` with ``G[X]``
    connected, each once (ESU enumeration rooted at the least vertex)."""
    allowed = set(vertices)
    nbrs = {v: G.neighbors(v) & allowed for v in allowed}

    def extend(S, frontier, ext, root):
        if len(S) == size:
            yield S
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            fresh = {u for u in nbrs[w] if u > root and u not in S and u not in frontier}
            yield from extend(S | {w}, frontier | nbrs[w], ext + sorted(fresh), root)

    for v in sorted(allowed):
        start = {u for u in nbrs[v] if u > v}
        yield from extend(frozenset([v]), nbrs[v] | {v}, sorted(start), v)


def z3_connected_subsets(
    G: Multigraph,
    max_cells: int = MAX_CELLS,
    max_size: int | None = None,
    max_candidates: int = MAX_CANDIDATES,
):
    """Yield vertex sets ``X`` with ``G[X]`` Z_3-connected, smallest first,
    lexicographic within a size.

    Only connected sets inside one maximal 2-tree-connected block are tried.
    ``max_size`` bounds the sizes examined; past ``max_candidates`` candidate
    sets :class:`BudgetExceeded` is raised.
    """
    blocks = [sorted(p) for p in tree_connected_components(G, 2).parts if len(p) >= 2]
    if not blocks:
        return
    top = max(len(b) for b in blocks)
    if max_size is not None:
        top = min(top, max_size)
    examined = 0
    for r in range(2, top + 1):
        hits = []
        for block in blocks:
            if len(block) < r:
                continue
            for X in connected_sets(G, block, r):
                examined += 1
                if examined > max_candidates:
                    raise BudgetExceeded(f"more than {max_candidates} candidate vertex sets")
                if _candidate_ok(G, X) and is_z3_connected(G.induced(X)[0], max_cells).ok:
                    hits.append(tuple(sorted(X)))
        for X in sorted(hits):
            yield frozenset(X)


def is_z3_reduced(
    G: Multigraph,
    max_cells: int = MAX_CELLS,
    max_size: int | None = None,
    max_candidates: int = MAX_CANDIDATES,
) -> ReducedVerdict:
    """True, or False with a smallest vertex set inducing a Z_3-connected graph.

    With ``max_size`` only sets up to that size are searched, so True then
    means "no such set of at most ``max_size`` vertices".
    """
    for X in z3_connected_subsets(G, max_cells, max_size, max_candidates):
        return ReducedVerdict(False, X)
    return ReducedVerdict(True)


@dataclass
class Reduction:
    graph: Multigraph
    trace: list[frozenset[int]] = field(default_factory=list)
    classes: list[frozenset[int]] = field(default_factory=list)

    def to_json(self):
        return {"trace": [sorted(x) for x in self.trace], "classes": [sorted(c) for c in self.classes]}


def z3_reduce(G: Multigraph, max_cells: int = MAX_CELLS) -> Reduction:
    """Contract minimal Z_3-connected induced subgraphs until none is left.

    ``trace`` lists each contracted set in original vertex ids; ``classes``
    gives the original vertices behind each vertex of the reduced graph.
    """
    classes = [frozenset([v]) for v in range(G.n)]
    trace = []
    H = G
    while True:
        verdict = is_z3_reduced(H, max_cells)
        if verdict.reduced:
            return Reduction(H, trace, classes)
        X = sorted(verdict.subgraph)
        trace.append(frozenset().union(*(classes[v] for v in X)))
        H, merge = contract_vertices(H, X)
        new = [set() for _ in range(H.n)]
        for old, c in enumerate(classes):
            new[merge[old]] |= c
        classes = [frozenset(c) for c in new]


def lift_implies_z3(G: Multigraph, v: int, v1: int, v2: int, max_cells: int = MAX_CELLS) -> bool:
    """Z_3-connectivity of ``G - v + v1 v2``; when True, ``G`` is Z_3-connected."""
    G._check_vertex(v)
    if G.degree(v) < 4:
        raise PreconditionViolated(f"vertex {v} has degree {G.degree(v)} < 4")
    count = {}
    for e in G.incidence[v]:
        w = G.other(e, v)
        count[w] = count.get(w, 0) + 1
    need = {v1: 1} if v1 != v2 else {v1: 2}
    if v1 != v2:
        need[v2] = 1
    if any(count.get(w, 0) < c for w, c in need.items()):
        raise PreconditionViolated(f"edges {v}{v1} and {v}{v2} are not both present")
    H, mapping = delete_vertex(G, v)
    if v1 != v2:
        H = add_edges(H, [(mapping[v1], mapping[v2])])
    return is_z3_connected(H, max_cells).ok


def density_check(G: Multigraph) -> bool:
    """``|E| <= 4|V| - 8``, necessary for a Z_3-reduced graph on at least 3 vertices."""
    if G.n < 3:
        raise TooSmall("density bound applies from three vertices on")
    return G.m <= 4 * G.n - 8


def min_degree_check(G: Multigraph) -> bool:
    """Minimum degree at most 5, necessary for a Z_3-reduced graph."""
    return G.n == 0 or G.min_degree() <= 5
