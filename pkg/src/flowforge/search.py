"""Seeded counterexample search with a canonical-form journal.

Two targets:

* ``reduced-min-degree-5``: a Z_3-reduced simple graph with minimum degree 5
  (the density bound ``m <= 4n - 8`` is imposed at sampling time).
* ``non-z3-5ec``: a 5-edge-connected multigraph that is not Z_3-connected.

Absence of hits is the expected outcome.  A hit is re-derived from scratch on
a relabelled copy before it is reported.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .connectivity import edge_connectivity
from .graphcore import Multigraph, canonical_form, relabel, to_json
from .oracles import edge_connectivity_by_subsets
from .orient import is_z3_connected
from .reduce import is_z3_reduced
from .sampling import random_multigraph, random_simple_graph

TARGETS = ("reduced-min-degree-5", "non-z3-5ec")


@dataclass
class SearchReport:
    target: str
    seed: int
    budget: int
    examined: int = 0
    distinct: int = 0
    hits: list[dict] = field(default_factory=list)
    keys: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return bool(self.hits)

    def to_json(self):
        return {
            "target": self.target,
            "seed": self.seed,
            "budget": self.budget,
            "examined": self.examined,
            "distinct": self.distinct,
            "result": "found" if self.hits else "none in budget",
            "hits": self.hits,
        }


def canonical_key(G: Multigraph) -> str:
    n, edges = canonical_form(G)
    return hashlib.sha1(json.dumps([n, edges]).encode()).hexdigest()


def _sample(target: str, rng: random.Random, max_n: int) -> Multigraph:
    if target == "reduced-min-degree-5":
        while True:
            n = rng.randint(6, max_n)
            lo, hi = (5 * n + 1) // 2, min(4 * n - 8, n * (n - 1) // 2)
            if lo > hi:
                continue
            G = random_simple_graph(rng, n, rng.randint(lo, hi))
            if G.min_degree() >= 5:
                return G
    while True:
        n = rng.randint(2, max_n)
        G = random_multigraph(rng, n, rng.randint((5 * n + 1) // 2, 4 * n))
        if G.is_connected() and edge_connectivity(G)[0] >= 5:
            return G


def _is_hit(target: str, G: Multigraph) -> bool:
    if target == "reduced-min-degree-5":
        return is_z3_reduced(G).reduced
    return not is_z3_connected(G).ok


def _reverify(target: str, G: Multigraph, rng: random.Random) -> bool:
    perm = list(range(G.n))
    rng.shuffle(perm)
    H = relabel(G, perm)
    if target == "reduced-min-degree-5":
        return H.min_degree() >= 5 and not H.has_parallel_edges() and is_z3_reduced(H).reduced
    return edge_connectivity_by_subsets(H)[0] >= 5 and not is_z3_connected(H).ok


def search(target: str, seed: int, budget: int, max_n: int = 12, journal: str | Path | None = None) -> SearchReport:
    """Examine ``budget`` sampled graphs.  With ``journal``, a header line and
    one canonical key per examined graph are written as json lines."""
    if target not in TARGETS:
        raise ValueError(f"unknown search target {target!r}")
    rng = random.Random(seed)
    check_rng = random.Random(seed ^ 0x5EED)
    report = SearchReport(target, seed, budget)
    seen = set()
    for _ in range(max(0, budget)):
        G = _sample(target, rng, max_n)
        key = canonical_key(G)
        report.examined += 1
        report.keys.append(key)
        if key in seen:
            continue
        seen.add(key)
        if _is_hit(target, G) and _reverify(target, G, check_rng):
            report.hits.append({"key": key, "graph": to_json(G)})
    report.distinct = len(seen)
    if journal is not None:
        write_journal(report, max_n, journal)
    return report


def write_journal(report: SearchReport, max_n: int, path: str | Path):
    header = {"target": report.target, "seed": report.seed, "budget": report.budget, "max_n": max_n}
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for key in report.keys:
            fh.write(json.dumps({"key": key}) + "\n")


def replay_journal(path: str | Path) -> tuple[bool, SearchReport]:
    """Re-run the search recorded in ``path``; True iff the examined keys
    match line for line."""
    lines = Path(path).read_text().splitlines()
    header = json.loads(lines[0])
    recorded = [json.loads(line)["key"] for line in lines[1:] if line.strip()]
    report = search(header["target"], header["seed"], header["budget"], header["max_n"])
    return report.keys == recorded, report
