"""Edge-disjoint spanning tree packing and the deficiency ``F(G, k)``.

The packer is the matroid-partition augmenting-path algorithm on ``k``
copies of the graphic matroid.  When no edge can be added, the edges
reachable from the unpacked ones in the exchange graph close up into a set
``A`` that every forest spans; the components of ``(V, A)`` form a partition
attaining ``F(G, k) = max_P k(|P| - 1) - e_G(P)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import Disconnected, TooSmall
from .graphcore import Multigraph


@dataclass(frozen=True)
class Partition:
    parts: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.parts)

    def cross_edges(self, G: Multigraph) -> int:
        where = {v: i for i, p in enumerate(self.parts) for v in p}
        return sum(1 for u, v in G.edges if where[u] != where[v])

    def value(self, G: Multigraph, k: int) -> int:
        return k * (len(self.parts) - 1) - self.cross_edges(G)

    def is_partition_of(self, n: int) -> bool:
        seen = [v for p in self.parts for v in p]
        return all(self.parts) and sorted(seen) == list(range(n))

    def to_json(self):
        return [sorted(p) for p in self.parts]


def _partition(groups) -> Partition:
    return Partition(tuple(sorted((frozenset(g) for g in groups), key=min)))


class _Forest:
    """Edge-id forest with path queries by BFS (graphs here are small)."""

    def __init__(self, G: Multigraph):
        self.G = G
        self.adj: list[dict[int, int]] = [dict() for _ in range(G.n)]  # v -> {edge: other}
        self.edges: set[int] = set()

    def add(self, e):
        u, v = self.G.edges[e]
        self.adj[u][e] = v
        self.adj[v][e] = u
        self.edges.add(e)

    def remove(self, e):
        u, v = self.G.edges[e]
        del self.adj[u][e]
        del self.adj[v][e]
        self.edges.discard(e)

    def path(self, s, t):
        """Edge-ids on the forest path from s to t, or None if disconnected."""
        if s == t:
            return []
        pred = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e, y in self.adj[x].items():
                if y not in pred:
                    pred[y] = (e, x)
                    if y == t:
                        out = []
                        while pred[y] is not None:
                            e2, y = pred[y]
                            out.append(e2)
                        return out
                    queue.append(y)
        return None


@dataclass
class ForestPacking:
    """``k`` edge-disjoint forests of ``G`` (edge-id sets)."""

    G: Multigraph
    forests: list[frozenset[int]]

    @property
    def size(self) -> int:
        return sum(len(f) for f in self.forests)

    def unpacked(self) -> list[int]:
        used = set().union(*self.forests) if self.forests else set()
        return [e for e in range(self.G.m) if e not in used]

    def is_valid(self) -> bool:
        seen = set()
        for f in self.forests:
            if seen & f:
                return False
            seen |= f
            if not is_forest(self.G, f):
                return False
        return True

    def all_spanning(self) -> bool:
        return all(is_spanning_tree(self.G, f) for f in self.forests)


def is_forest(G: Multigraph, edge_ids) -> bool:
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        a, b = (find(x) for x in G.edges[e])
        if a == b:
            return False
        parent[a] = b
    return True


def is_spanning_tree(G: Multigraph, edge_ids) -> bool:
    edge_ids = list(edge_ids)
    return len(edge_ids) == max(G.n - 1, 0) and is_forest(G, edge_ids)


def _augment(forests: list[_Forest], G: Multigraph, e: int) -> bool:
    """Insert ``e`` via a shortest exchange path; False if ``e`` is spanned."""
    label: dict[int, tuple[int, int] | None] = {e: None}
    owner = {x: i for i, f in enumerate(forests) for x in f.edges}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        u, v = G.edges[x]
        for i, f in enumerate(forests):
            if owner.get(x) == i:
                continue
            path = f.path(u, v)
            if path is None:
                # x enters forest i; walk the labels back, each edge moving
                # into the forest its successor vacated
                f.add(x)
                prev = label[x]
                while prev is not None:
                    y, j = prev  # x was displaced from forest j by y
                    forests[j].remove(x)
                    forests[j].add(y)
                    x, prev = y, label[y]
                return True
            for y in path:
                if y not in label:
                    label[y] = (x, i)
                    queue.append(y)
    return False


def _reachable_from_unpacked(forests: list[_Forest], G: Multigraph, unpacked: list[int]) -> set[int]:
    owner = {x: i for i, f in enumerate(forests) for x in f.edges}
    seen = set(unpacked)
    queue = deque(unpacked)
    while queue:
        x = queue.popleft()
        u, v = G.edges[x]
        for i, f in enumerate(forests):
            if owner.get(x) == i:
                continue
            path = f.path(u, v)
            assert path is not None, "packing is not maximum"
            for y in path:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return seen


def pack_forests(G: Multigraph, k: int) -> tuple[ForestPacking, Partition]:
    """Maximum-size union of ``k`` edge-disjoint forests with its dual partition.

    For connected ``G`` the partition ``P`` satisfies
    ``k(n - 1) - size = k(|P| - 1) - e_G(P)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    forests = [_Forest(G) for _ in range(k)]
    unpacked = []
    for e in range(G.m):
        if not _augment(forests, G, e):
            unpacked.append(e)
    A = _reachable_from_unpacked(forests, G, unpacked)
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in A:
        a, b = (find(x) for x in G.edges[e])
        if a != b:
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(find(v), []).append(v)
    packing = ForestPacking(G, [frozenset(f.edges) for f in forests])
    return packing, _partition(groups.values())


def deficiency(G: Multigraph, k: int) -> tuple[int, Partition]:
    """``F(G, k)``: edges to add before ``G`` has ``k`` edge-disjoint spanning trees."""
    if not G.is_connected():
        raise Disconnected("deficiency is only defined for connected graphs")
    packing, partition = pack_forests(G, k)
    value = k * (G.n - 1) - packing.size
    assert partition.value(G, k) == value
    return value, partition


def tree_packing_number(G: Multigraph) -> tuple[int, ForestPacking]:
    """Largest ``t`` with ``t`` edge-disjoint spanning trees, with the trees."""
    if G.n < 2:
        raise TooSmall("tree packing number is unbounded on a single vertex")
    if not G.is_connected():
        raise Disconnected("a disconnected graph has no spanning tree")
    best = ForestPacking(G, [])
    for t in range(1, G.m // (G.n - 1) + 1):
        packing, _ = pack_forests(G, t)
        if packing.size < t * (G.n - 1):
            break
        best = packing
    assert best.is_valid() and best.all_spanning()
    return len(best.forests), best


def tree_connected_components(G: Multigraph, k: int) -> Partition:
    """Maximal vertex sets ``X`` with ``F(G[X], k) = 0`` (singletons otherwise).

    Every part of the packing's dual partition already carries ``k``
    spanning trees.  After contracting those parts every edge is packed, and
    a set is then ``k``-tree-connected exactly when it is a subtree of every
    forest, so the maximal sets are unions of overlapping forest-closures
    of single edges.
    """
    packing, parts = pack_forests(G, k)
    where = {v: i for i, p in enumerate(parts.parts) for v in p}
    q = len(parts)
    # contracted forests on part indices
    adj = [[set() for _ in range(q)] for _ in range(k)]
    for i, f in enumerate(packing.forests):
        for e in f:
            a, b = (where[x] for x in G.edges[e])
            if a != b:
                adj[i][a].add(b)
                adj[i][b].add(a)

    def tree_path(i, s, t):
        pred = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if x == t:
                break
            for y in adj[i][x]:
                if y not in pred:
                    pred[y] = x
                    queue.append(y)
        if t not in pred:
            return None
        out = [t]
        while pred[out[-1]] is not None:
            out.append(pred[out[-1]])
        return out

    def closure(seed):
        Q = set(seed)
        changed = True
        while changed:
            changed = False
            for i in range(k):
                members = sorted(Q)
                root = members[0]
                for x in members[1:]:
                    path = tree_path(i, root, x)
                    if path is None:
                        return None
                    for y in path:
                        if y not in Q:
                            Q.add(y)
                            changed = True
        return Q

    parent = list(range(q))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tried = set()
    for u, v in G.edges:
        a, b = where[u], where[v]
        if a == b or (min(a, b), max(a, b)) in tried:
            continue
        tried.add((min(a, b), max(a, b)))
        Q = closure({a, b})
        if Q is None:
            continue
        members = list(Q)
        for x in members[1:]:
            ra, rb = find(members[0]), find(x)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for i, p in enumerate(parts.parts):
        groups.setdefault(find(i), set()).update(p)
    return _partition(groups.values())


def find_dense_subgraph(G: Multigraph, k: int):
    """A vertex set ``X`` with ``|X| >= 2`` and ``F(G[X], k) = 0``, or None.

    Returns the largest maximal such set (ties: smallest least vertex).
    """
    if k < 1:
        raise ValueError("k must be positive")
    comps = [p for p in tree_connected_components(G, k).parts if len(p) >= 2]
    if not comps:
        return None
    return set(max(comps, key=lambda p: (len(p), -min(p))))
