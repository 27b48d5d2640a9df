"""Seeded random multigraphs and small exhaustive families."""

from __future__ import annotations

import itertools
import random

import networkx as nx

from .graphcore import Multigraph, build


def random_multigraph(rng: random.Random, n: int, m: int) -> Multigraph:
    """``m`` uniform endpoint pairs on ``n`` vertices, loops rejected."""
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v))
    return build(n, edges)


def random_connected_multigraph(rng: random.Random, n: int, m: int, tries: int = 1000) -> Multigraph | None:
    for _ in range(tries):
        G = random_multigraph(rng, n, m)
        if G.is_connected():
            return G
    return None


def random_simple_graph(rng: random.Random, n: int, m: int) -> Multigraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return build(n, rng.sample(pairs, min(m, len(pairs))))


def random_zero_sum(rng: random.Random, n: int, modulus: int = 3) -> tuple[int, ...]:
    if n == 0:
        return ()
    head = [rng.randrange(modulus) for _ in range(n - 1)]
    return tuple(head) + ((-sum(head)) % modulus,)


def multigraphs_up_to(n: int, max_m: int, connected: bool = True):
    """Every multigraph on ``n`` labelled vertices with at most ``max_m`` edges,
    as multisets of pairs in lexicographic order."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for m in range(max_m + 1):
        for combo in itertools.combinations_with_replacement(pairs, m):
            G = build(n, combo)
            if not connected or G.is_connected():
                yield G


def multiplicity_family(n: int, max_mult: int):
    """Every multigraph on ``n`` vertices with each pair multiplicity in
    ``0..max_mult``."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mults in itertools.product(range(max_mult + 1), repeat=len(pairs)):
        edges = [p for p, c in zip(pairs, mults) for _ in range(c)]
        yield build(n, edges)


def connected_simple_graphs(max_n: int):
    """One representative per isomorphism class of connected simple graphs
    with ``2 <= n <= max_n`` (``max_n <= 7``), from the networkx atlas."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at seven vertices")
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 2 <= n <= max_n and nx.is_connected(g):
            yield build(n, sorted(g.edges()))
