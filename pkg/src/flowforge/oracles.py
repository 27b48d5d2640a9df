"""Slow, independent cross-check routines.

Nothing here shares code with the fast paths it checks: orientations are
enumerated bit by bit, flows are solved over the cycle space, partitions and
cuts are enumerated outright.  Sizes are the caller's responsibility.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache

import numpy as np

from .graphcore import Multigraph


def all_boundaries(G: Multigraph, modulus: int = 3):
    """Map from boundary tuple (mod ``modulus``) to one realizing bit vector."""
    found = {}
    for bits in itertools.product((0, 1), repeat=G.m):
        out = [0] * G.n
        for (u, v), b in zip(G.edges, bits):
            if b:
                u, v = v, u
            out[u] += 1
            out[v] -= 1
        key = tuple(x % modulus for x in out)
        found.setdefault(key, bits)
    return found


def brute_force_beta_orientation(G: Multigraph, beta, modulus: int = 3, fixed=None):
    """Bit vector of a beta-orientation by exhaustive search, or None.

    ``fixed`` maps edge-id to the required tail vertex.
    """
    target = tuple(b % modulus for b in beta)
    for bits in itertools.product((0, 1), repeat=G.m):
        if fixed and any((G.edges[e][1] if bits[e] else G.edges[e][0]) != t for e, t in fixed.items()):
            continue
        out = [0] * G.n
        for (u, v), b in zip(G.edges, bits):
            if b:
                u, v = v, u
            out[u] += 1
            out[v] -= 1
        if tuple(x % modulus for x in out) == target:
            return bits
    return None


def zero_sum_functions(n: int, modulus: int = 3):
    """All zero-sum functions in lexicographic order of the first n-1 values."""
    if n == 0:
        yield ()
        return
    for head in itertools.product(range(modulus), repeat=n - 1):
        yield head + ((-sum(head)) % modulus,)


def z3_connected_by_enumeration(G: Multigraph, modulus: int = 3):
    """``(ok, first missing beta)`` from the full orientation enumeration."""
    seen = all_boundaries(G, modulus)
    for beta in zero_sum_functions(G.n, modulus):
        if beta not in seen:
            return False, beta
    return True, None


class CycleSpaceOracle:
    """Decide beta-orientations as nowhere-zero Z_3 flows with boundary beta.

    Relative to the stored edge directions an orientation is a map
    ``f: E -> {1, 2}`` (2 meaning reversed).  Every solution of
    ``boundary(f) = beta`` is one particular solution plus a cycle-space
    element, so enumerating the ``3^(m - n + c)`` shifts decides existence.
    """

    def __init__(self, G: Multigraph):
        self.G = G
        n = G.n
        parent_edge = [-1] * n
        self.root = [-1] * n
        self.bfs_order = []
        tree = set()
        for s in range(n):
            if self.root[s] != -1:
                continue
            self.root[s] = s
            queue = deque([s])
            while queue:
                x = queue.popleft()
                self.bfs_order.append(x)
                for e in G.incidence[x]:
                    y = G.other(e, x)
                    if self.root[y] == -1:
                        self.root[y] = s
                        parent_edge[y] = e
                        tree.add(e)
                        queue.append(y)
        self.parent_edge = parent_edge
        depth = [0] * n
        for x in self.bfs_order:
            if parent_edge[x] >= 0:
                depth[x] = depth[G.other(parent_edge[x], x)] + 1
        basis = []
        for e, (a, b) in enumerate(G.edges):
            if e in tree:
                continue
            vec = np.zeros(G.m, dtype=np.int64)
            vec[e] = 1  # a -> b
            # return from b to a along the tree
            x, y = b, a
            up_x, up_y = [], []
            while x != y:
                if depth[x] >= depth[y]:
                    up_x.append(parent_edge[x])
                    x = G.other(parent_edge[x], x)
                else:
                    up_y.append(parent_edge[y])
                    y = G.other(parent_edge[y], y)
            walk = []  # (edge, from-vertex) from b up to the meeting point, then down to a
            x = b
            for f in up_x:
                walk.append((f, x))
                x = G.other(f, x)
            y_path = []
            y = a
            for f in up_y:
                y_path.append((f, G.other(f, y)))
                y = G.other(f, y)
            walk.extend(reversed(y_path))
            for f, frm in walk:
                vec[f] = (vec[f] + (1 if G.edges[f][0] == frm else 2)) % 3
            basis.append(vec)
        self.basis = np.array(basis, dtype=np.int64).reshape(len(basis), G.m)
        self.shifts = (_combos(len(basis)) @ self.basis) % 3 if basis else np.zeros((1, G.m), dtype=np.int64)

    def particular(self, beta):
        G = self.G
        beta = [b % 3 for b in beta]
        for r in set(self.root):
            if sum(b for v, b in enumerate(beta) if self.root[v] == r) % 3:
                return None
        f = np.zeros(G.m, dtype=np.int64)
        acc = [0] * G.n  # boundary contributed by already-set edges
        for x in reversed(self.bfs_order):
            e = self.parent_edge[x]
            if e < 0:
                continue
            need = (beta[x] - acc[x]) % 3
            sign = 1 if G.edges[e][0] == x else -1
            f[e] = (sign * need) % 3
            a, b = G.edges[e]
            acc[a] = (acc[a] + f[e]) % 3
            acc[b] = (acc[b] - f[e]) % 3
        return f

    def exists(self, beta) -> bool:
        f = self.particular(beta)
        if f is None:
            return False
        flows = (self.shifts + f) % 3
        return bool(np.any(np.all(flows != 0, axis=1)))

    def boundary_of(self, f):
        out = [0] * self.G.n
        for (a, b), x in zip(self.G.edges, f):
            out[a] = (out[a] + x) % 3
            out[b] = (out[b] - x) % 3
        return out


@lru_cache(maxsize=None)
def _combos(d: int) -> np.ndarray:
    return np.array(list(itertools.product(range(3), repeat=d)), dtype=np.int64).reshape(-1, d)


def edge_connectivity_by_subsets(G: Multigraph) -> tuple[int, frozenset]:
    """Minimum ``|[S, V-S]|`` over sides containing vertex 0."""
    best = None
    for r in range(1, G.n):
        for rest in itertools.combinations(range(1, G.n), r - 1):
            S = frozenset((0,) + rest)
            value = sum(1 for u, v in G.edges if (u in S) != (v in S))
            if best is None or value < best[0]:
                best = (value, S)
    return best


def essential_connectivity_by_subsets(G: Multigraph):
    best = None
    verts = range(G.n)
    for r in range(1, G.n):
        for S in itertools.combinations(verts, r):
            S = set(S)
            T = set(verts) - S
            if not any(u in S and v in S for u, v in G.edges):
                continue
            if not any(u in T and v in T for u, v in G.edges):
                continue
            value = sum(1 for u, v in G.edges if (u in S) != (v in S))
            if best is None or value < best:
                best = value
    return best


def set_partitions(items):
    """All set partitions of ``items`` (restricted growth strings)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        yield [[first]] + sub
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]


def deficiency_by_partitions(G: Multigraph, k: int) -> int:
    """``max(0, max_P k(|P| - 1) - e_G(P))`` by enumerating every partition."""
    best = 0
    for parts in set_partitions(range(G.n)):
        where = {v: i for i, p in enumerate(parts) for v in p}
        cross = sum(1 for u, v in G.edges if where[u] != where[v])
        best = max(best, k * (len(parts) - 1) - cross)
    return best


def dense_subsets_by_enumeration(G: Multigraph, k: int):
    """Every vertex set ``X`` (``|X| >= 2``) whose induced graph is connected with
    ``F(G[X], k) = 0``."""
    out = []
    for r in range(2, G.n + 1):
        for X in itertools.combinations(range(G.n), r):
            H, _ = G.induced(X)
            if H.is_connected() and H.m >= k * (r - 1) and deficiency_by_partitions(H, k) == 0:
                out.append(frozenset(X))
    return out


def extendable_by_enumeration(G: Multigraph, z0: int) -> bool:
    """Check every zero-sum beta and every compatible pre-orientation at ``z0``
    directly against the full orientation enumeration."""
    at_z0 = G.incidence[z0]
    reach: dict[tuple, set] = {}
    for bits in itertools.product((0, 1), repeat=G.m):
        out = [0] * G.n
        for (u, v), b in zip(G.edges, bits):
            if b:
                u, v = v, u
            out[u] += 1
            out[v] -= 1
        key = tuple(bits[e] for e in at_z0)
        reach.setdefault(key, set()).add(tuple(x % 3 for x in out))
    for pre in itertools.product((0, 1), repeat=len(at_z0)):
        net = 0
        for e, b in zip(at_z0, pre):
            tail = G.edges[e][1] if b else G.edges[e][0]
            net += 1 if tail == z0 else -1
        got = reach.get(pre, set())
        for beta in zero_sum_functions(G.n):
            if (beta[z0] - net) % 3:
                continue
            if beta not in got:
                return False
    return True
