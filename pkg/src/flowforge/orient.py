"""Orientation existence: beta-orientations, Z_3-connectivity, mod-m orientations.

Two exact engines live here.

* :func:`find_beta_orientation` answers one boundary function at a time with
  a frontier dynamic program.  Vertices are introduced in a greedy order
  that keeps the set of "open" vertices small; the DP state is the vector of
  partial out-minus-in residues of the open vertices, and a vertex is
  checked against ``beta`` and dropped once all its edges are processed.
  Back-pointers give the orientation itself.

* :func:`achievable_boundaries` computes, for all boundary functions at once,
  which ones some orientation realizes.  The set of boundaries is a sumset
  over the edges, so it is built by OR-ing shifted copies of a boolean
  array indexed by ``Z_m^(n-1)`` (the last coordinate is forced by the zero
  sum).  Z_3-connectivity and strong Z_m-connectivity read off this array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    BadModulus,
    BudgetExceeded,
    IncompleteOrientation,
    NotZeroSum,
    PreOrientationMismatch,
    TooSmall,
)
from .graphcore import Multigraph, delete_vertex

#: largest boolean array (cells) the all-boundaries transform may allocate
MAX_CELLS = 3**16


@dataclass(frozen=True)
class Orientation:
    """A direction ``(tail, head)`` for every edge-id of ``graph``."""

    graph: Multigraph
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.arcs) != self.graph.m:
            raise IncompleteOrientation(f"{len(self.arcs)} arcs for {self.graph.m} edges")
        for i, (t, h) in enumerate(self.arcs):
            if {t, h} != set(self.graph.edges[i]) or t == h:
                raise IncompleteOrientation(f"arc {i} = ({t}, {h}) does not match edge {self.graph.edges[i]}")

    @classmethod
    def from_bits(cls, G: Multigraph, bits: Sequence[int]) -> "Orientation":
        """Bit 0 keeps the stored ``(u, v)`` direction, bit 1 reverses it."""
        return cls(G, tuple((u, v) if not b else (v, u) for (u, v), b in zip(G.edges, bits)))

    def boundary(self) -> list[int]:
        return boundary(self.graph, self)

    def is_beta_orientation(self, beta: Sequence[int], modulus: int = 3) -> bool:
        return all((b - x) % modulus == 0 for b, x in zip(self.boundary(), beta))

    def to_json(self):
        return {"edges": [list(a) for a in self.arcs]}


@dataclass(frozen=True)
class PreOrientation:
    """Directions for exactly the edges incident to ``z0``."""

    z0: int
    arcs: Mapping[int, tuple[int, int]]

    def net(self) -> int:
        return sum(1 if t == self.z0 else -1 for t, _ in self.arcs.values())

    def validate(self, G: Multigraph):
        G._check_vertex(self.z0)
        if set(self.arcs) != set(G.incidence[self.z0]):
            raise PreOrientationMismatch(f"pre-orientation must cover exactly the edges at {self.z0}")
        for e, (t, h) in self.arcs.items():
            if {t, h} != set(G.edges[e]):
                raise PreOrientationMismatch(f"arc ({t}, {h}) does not match edge {e}")

    @classmethod
    def with_outdegree(cls, G: Multigraph, z0: int, out: int) -> "PreOrientation":
        """First ``out`` edges at ``z0`` (edge-id order) leave it, the rest enter."""
        arcs = {}
        for i, e in enumerate(G.incidence[z0]):
            w = G.other(e, z0)
            arcs[e] = (z0, w) if i < out else (w, z0)
        return cls(z0, arcs)


@dataclass(frozen=True)
class Decision:
    """Verdict of a for-all-boundaries question with the first failing boundary."""

    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def boundary(G: Multigraph, D: Orientation) -> list[int]:
    """Exact integer ``d+(v) - d-(v)`` for every vertex."""
    if D.graph is not G and (D.graph.n, D.graph.edges) != (G.n, G.edges):
        raise IncompleteOrientation("orientation belongs to a different graph")
    out = [0] * G.n
    for t, h in D.arcs:
        out[t] += 1
        out[h] -= 1
    return out


def tau_abs(beta_A: int, d_A: int) -> int:
    """``|t|`` for the unique-up-to-sign ``t`` in ``{0, ±1, ±2, ±3}`` with
    ``t = beta_A (mod 3)`` and ``t = d_A (mod 2)``."""
    if d_A < 0:
        raise ValueError("cut size must be non-negative")
    for t in (0, 1, -1, 2, -2, 3):
        if (t - beta_A) % 3 == 0 and (t - d_A) % 2 == 0:
            return abs(t)
    raise AssertionError("unreachable")


def _check_zero_sum(G: Multigraph, beta: Sequence[int], modulus: int) -> tuple[int, ...]:
    if len(beta) != G.n:
        raise NotZeroSum(f"boundary function has {len(beta)} values for {G.n} vertices")
    beta = tuple(int(b) % modulus for b in beta)
    if sum(beta) % modulus:
        raise NotZeroSum(f"values sum to {sum(beta) % modulus} mod {modulus}")
    return beta


def _check_odd_modulus(m: int):
    if m < 3 or m % 2 == 0:
        raise BadModulus(f"modulus must be odd and at least 3, got {m}")


# --------------------------------------------------------------------------
# frontier DP


def elimination_order(G: Multigraph) -> list[int]:
    """Greedy vertex order keeping the number of open vertices small."""
    placed: set[int] = set()
    nbrs = [G.neighbors(v) for v in range(G.n)]
    order = []
    active: set[int] = set()
    while len(order) < G.n:
        best = None
        for v in range(G.n):
            if v in placed:
                continue
            now = placed | {v}
            frontier = {w for w in active | {v} if not nbrs[w] <= now}
            links = sum(1 for w in nbrs[v] if w in placed)
            key = (len(frontier), -links, v)
            if best is None or key < best[0]:
                best = (key, v, frontier)
        _, v, active = best
        placed.add(v)
        order.append(v)
    return order


def frontier_width(G: Multigraph, order: Sequence[int] | None = None) -> int:
    """Largest number of simultaneously open vertices along ``order``."""
    order = elimination_order(G) if order is None else order
    nbrs = [G.neighbors(v) for v in range(G.n)]
    placed: set[int] = set()
    active: set[int] = set()
    width = 0
    for v in order:
        placed.add(v)
        active.add(v)
        width = max(width, len(active))
        active = {w for w in active if not nbrs[w] <= placed}
    return width


def find_beta_orientation(
    G: Multigraph,
    beta: Sequence[int],
    fixed: PreOrientation | None = None,
    modulus: int = 3,
) -> Orientation | None:
    """An orientation with ``d+(v) - d-(v) = beta(v) (mod modulus)`` everywhere,
    agreeing with ``fixed`` on the edges at its vertex; None if none exists."""
    if modulus < 2:
        raise BadModulus(f"modulus must be at least 2, got {modulus}")
    beta = _check_zero_sum(G, beta, modulus)
    forced: dict[int, int] = {}
    if fixed is not None:
        fixed.validate(G)
        if (fixed.net() - beta[fixed.z0]) % modulus:
            raise PreOrientationMismatch(
                f"pre-orientation has net flow {fixed.net()} but beta({fixed.z0}) = {beta[fixed.z0]}"
            )
        for e, (t, _) in fixed.arcs.items():
            forced[e] = 0 if G.edges[e][0] == t else 1

    order = elimination_order(G)
    rank = {v: i for i, v in enumerate(order)}
    remaining = G.degrees()
    active: list[int] = []
    states: dict[tuple, object] = {(): None}
    log: list[tuple] = []

    for v in order:
        active.append(v)
        states = {s + (0,): None for s in states}
        log.append(("add",))
        for e in G.incidence[v]:
            w = G.other(e, v)
            if rank[w] >= rank[v]:
                continue
            a, b = G.edges[e]
            pa, pb = active.index(a), active.index(b)
            choices = (forced[e],) if e in forced else (0, 1)
            layer: dict[tuple, tuple] = {}
            for s in states:
                for d in choices:
                    t = list(s)
                    tail, head = (pa, pb) if d == 0 else (pb, pa)
                    t[tail] = (t[tail] + 1) % modulus
                    t[head] = (t[head] - 1) % modulus
                    key = tuple(t)
                    if key not in layer:
                        layer[key] = (s, d)
            log.append(("edge", e, layer))
            states = layer
            remaining[a] -= 1
            remaining[b] -= 1
        for w in [x for x in active if remaining[x] == 0]:
            pos = active.index(w)
            target = beta[w]
            states = {s[:pos] + s[pos + 1 :]: None for s in states if s[pos] == target}
            log.append(("retire", pos, target))
            active.pop(pos)
        if not states:
            return None

    assert not active and () in states
    bits = [0] * G.m
    state: tuple = ()
    for entry in reversed(log):
        if entry[0] == "retire":
            _, pos, target = entry
            state = state[:pos] + (target,) + state[pos:]
        elif entry[0] == "edge":
            _, e, layer = entry
            state, bits[e] = layer[state]
        else:
            state = state[:-1]
    D = Orientation.from_bits(G, bits)
    assert D.is_beta_orientation(beta, modulus)
    return D


def has_mod_orientation(G: Multigraph, m: int = 3) -> Orientation | None:
    """An orientation with out-degree = in-degree (mod m) at every vertex."""
    _check_odd_modulus(m)
    return find_beta_orientation(G, [0] * G.n, modulus=m)


# --------------------------------------------------------------------------
# all boundaries at once


def achievable_boundaries(G: Multigraph, m: int = 3, max_cells: int = MAX_CELLS) -> np.ndarray:
    """Boolean array over ``Z_m^(n-1)``: entry ``x`` is True iff some orientation
    has boundary ``(x, -sum(x))`` modulo ``m``."""
    if G.n < 1:
        raise TooSmall("graph has no vertices")
    dims = G.n - 1
    if m**dims > max_cells:
        raise BudgetExceeded(f"{m}^{dims} boundary functions exceed the cell budget {max_cells}")
    reach = np.zeros((m,) * dims, dtype=bool)
    reach[(0,) * dims] = True
    last = G.n - 1
    for (u, v), t in sorted(G.multiplicity.items()):
        shifts = sorted({(t - 2 * j) % m for j in range(t + 1)})
        out = np.zeros_like(reach)
        for s in shifts:
            amount, axes = [], []
            if u != last:
                amount.append(s)
                axes.append(u)
            if v != last:
                amount.append(-s)
                axes.append(v)
            out |= np.roll(reach, amount, axis=axes) if axes else reach
        reach = out
    return reach


def _decide_all(G: Multigraph, m: int, max_cells: int) -> Decision:
    reach = achievable_boundaries(G, m, max_cells)
    missing = ~reach
    if not missing.any():
        return Decision(True)
    flat = int(np.argmax(missing.ravel()))
    prefix = [int(x) for x in np.unravel_index(flat, reach.shape)] if reach.ndim else []
    return Decision(False, tuple(prefix) + ((-sum(prefix)) % m,))


def is_z3_connected(G: Multigraph, max_cells: int = MAX_CELLS) -> Decision:
    """Z_3-connectivity with the lexicographically first unrealizable beta."""
    return _decide_all(G, 3, max_cells)


def is_strongly_zm_connected(G: Multigraph, m: int, max_cells: int = MAX_CELLS) -> Decision:
    _check_odd_modulus(m)
    return _decide_all(G, m, max_cells)


def is_extendable_at(G: Multigraph, z0: int, max_cells: int = MAX_CELLS) -> bool:
    """Every compatible pre-orientation at ``z0`` extends to a beta-orientation
    for every zero-sum beta; decided as Z_3-connectivity of ``G - z0``."""
    G._check_vertex(z0)
    if G.n < 2:
        raise TooSmall("extendability needs at least two vertices")
    rest, _ = delete_vertex(G, z0)
    return is_z3_connected(rest, max_cells).ok


# --------------------------------------------------------------------------
# partial-extension hypothesis checker


@dataclass(frozen=True)
class LTWZReport:
    ok: bool
    condition: str | None = None
    violating_set: frozenset[int] | None = None

    def __bool__(self):
        return self.ok


def ltwz_conditions(G: Multigraph, z0: int, beta: Sequence[int], pre: PreOrientation) -> LTWZReport:
    """Check the three hypotheses under which a pre-orientation at ``z0``
    is guaranteed to extend to a beta-orientation:

    (i) at least three vertices; (ii) ``d(z0) <= 4 + |tau(z0)|`` and the
    pre-orientation's net flow matches ``beta(z0)``; (iii) ``d(A) >= 4 +
    |tau(A)|`` for every nonempty ``A`` avoiding ``z0`` whose complement has
    at least two vertices.
    """
    beta = _check_zero_sum(G, beta, 3)
    pre.validate(G)
    if pre.z0 != z0:
        raise PreOrientationMismatch(f"pre-orientation is at {pre.z0}, not {z0}")
    if G.n < 3:
        return LTWZReport(False, "i")
    d0 = G.degree(z0)
    if d0 > 4 + tau_abs(beta[z0], d0) or (pre.net() - beta[z0]) % 3:
        return LTWZReport(False, "ii", frozenset([z0]))
    others = [v for v in range(G.n) if v != z0]
    k = len(others)
    masks = np.arange(1, 1 << k, dtype=np.int64)
    bit = {v: i for i, v in enumerate(others)}
    d = np.zeros(masks.shape, dtype=np.int64)
    for u, v in G.edges:
        iu = (masks >> bit[u]) & 1 if u != z0 else 0
        iv = (masks >> bit[v]) & 1 if v != z0 else 0
        d += iu ^ iv
    bsum = np.zeros(masks.shape, dtype=np.int64)
    size = np.zeros(masks.shape, dtype=np.int64)
    for v in others:
        sel = (masks >> bit[v]) & 1
        bsum += sel * beta[v]
        size += sel
    tau = np.zeros(masks.shape, dtype=np.int64)
    table = {(b, p): tau_abs(b, p) for b in range(3) for p in range(2)}
    bmod, dpar = bsum % 3, d % 2
    for (b, p), val in table.items():
        tau[(bmod == b) & (dpar == p)] = val
    qualifying = (G.n - size) >= 2
    bad = qualifying & (d < 4 + tau)
    if bad.any():
        mask = int(masks[int(np.argmax(bad))])
        return LTWZReport(False, "iii", frozenset(v for v in others if (mask >> bit[v]) & 1))
    return LTWZReport(True)
