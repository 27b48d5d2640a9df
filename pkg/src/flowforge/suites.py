"""Seeded property suites behind ``flowforge verify``.

Each suite draws its instances sequentially from ``random.Random(seed)`` (so
the instance list depends only on seed and count), checks them, possibly in
worker processes, and returns a :class:`SuiteReport`.  A failing instance is
dumped as its json edge list.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import networkx as nx

from .connectivity import edge_connectivity, mader_split
from .errors import NoPairFound
from .gadgets import two_sum
from .graphcore import Multigraph, build, delete_vertex, from_json, serialize, to_json
from .oracles import CycleSpaceOracle, deficiency_by_partitions, extendable_by_enumeration
from .orient import (
    PreOrientation,
    achievable_boundaries,
    find_beta_orientation,
    is_extendable_at,
    is_strongly_zm_connected,
    is_z3_connected,
    ltwz_conditions,
    tau_abs,
)
from .reduce import density_check, is_z3_reduced, min_degree_check, z3_reduce
from .sampling import (
    connected_simple_graphs,
    multigraphs_up_to,
    multiplicity_family,
    random_connected_multigraph,
    random_multigraph,
    random_zero_sum,
)
from .treepack import deficiency


@dataclass
class SuiteReport:
    suite: str
    seed: int
    count: int
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures,
            "stats": self.stats,
            "seconds": round(self.seconds, 3),
        }


def graph_hash(G: Multigraph) -> str:
    return hashlib.sha1(serialize(G).encode()).hexdigest()[:16]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FLOWFORGE_THREADS", "1")))
    except ValueError:
        return 1


def _run(report: SuiteReport, check, cases: list) -> SuiteReport:
    """Apply ``check`` to every case.  ``check`` returns ``(failure or None,
    stats dict)``; stats are summed."""
    workers = _workers()
    if workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, cases, chunksize=max(1, len(cases) // (4 * workers))))
    else:
        results = [check(c) for c in cases]
    for failure, stats in results:
        report.checked += 1
        if failure is not None:
            report.failures.append(failure)
        for k, v in stats.items():
            report.stats[k] = report.stats.get(k, 0) + v
    report.failures.sort(key=lambda f: f["hash"])
    return report


def _failure(G: Multigraph, message: str, **extra) -> dict:
    return {"hash": graph_hash(G), "graph": to_json(G), "message": message, **extra}


def _reduced_bounds_failure(G: Multigraph) -> str | None:
    """Density and degree bounds for a reduced graph on three or more vertices."""
    if G.n < 3:
        return None
    if not density_check(G):
        return f"reduced graph has {G.m} > 4n-8 = {4 * G.n - 8} edges"
    if not min_degree_check(G):
        return f"reduced graph has minimum degree {G.min_degree()} > 5"
    return None


def _draw(rng: random.Random, count: int, make, accept, max_tries: int | None = None) -> list[Multigraph]:
    out = []
    tries = 0
    limit = max_tries if max_tries is not None else 2000 * max(count, 1)
    while len(out) < count and tries < limit:
        tries += 1
        G = make(rng)
        if G is not None and accept(G):
            out.append(G)
    if len(out) < count:
        raise RuntimeError(f"rejection sampling produced only {len(out)} of {count} instances")
    return out


# --------------------------------------------------------------------------
# four spanning trees


def _check_z3(obj):
    G = from_json(obj)
    d = is_z3_connected(G)
    if not d.ok:
        return _failure(G, "not Z3-connected", witness=list(d.witness)), {}
    return None, {}


def suite_thm_4trees(seed: int, count: int = 200, max_n: int = 9) -> SuiteReport:
    def make(rng):
        n = rng.randint(2, max_n)
        return random_connected_multigraph(rng, n, 4 * (n - 1) + rng.randint(0, n))

    graphs = _draw(random.Random(seed), count, make, lambda G: deficiency(G, 4)[0] == 0)
    report = SuiteReport("thm-4trees", seed, count)
    return _run(report, _check_z3, [to_json(G) for G in graphs])


def suite_thm_f4le3(seed: int, count: int = 200, max_n: int = 9) -> SuiteReport:
    def make(rng):
        n = rng.randint(2, max_n)
        m = max(n - 1, 4 * (n - 1) - rng.randint(0, 3) + rng.randint(0, 2))
        return random_connected_multigraph(rng, n, m)

    def accept(G):
        return deficiency(G, 4)[0] <= 3 and edge_connectivity(G)[0] >= 2

    graphs = _draw(random.Random(seed), count, make, accept)
    report = SuiteReport("thm-f4le3", seed, count)
    report = _run(report, _check_z3, [to_json(G) for G in graphs])
    report.stats["F_values"] = sorted({deficiency(G, 4)[0] for G in graphs})
    return report


# --------------------------------------------------------------------------
# extendability at a vertex


def _check_extend(obj):
    G = from_json(obj)
    fails = []
    for z0 in range(G.n):
        fast = is_extendable_at(G, z0)
        slow = extendable_by_enumeration(G, z0)
        if fast != slow:
            fails.append((z0, fast, slow))
    if fails:
        z0, fast, slow = fails[0]
        return _failure(G, f"extendable at {z0}: fast {fast}, enumeration {slow}"), {"pairs": G.n}
    return None, {"pairs": G.n}


def suite_prop_extend(seed: int = 0, count: int | None = None, max_n: int = 4, max_m: int = 6) -> SuiteReport:
    """Exhaustive over labelled connected multigraphs; ``seed`` is unused and
    ``count`` optionally truncates the list."""
    graphs = [G for n in range(2, max_n + 1) for G in multigraphs_up_to(n, max_m)]
    if count is not None:
        graphs = graphs[:count]
    report = SuiteReport("prop-extend", seed, len(graphs))
    return _run(report, _check_extend, [to_json(G) for G in graphs])


# --------------------------------------------------------------------------
# 2-sums


def _non_z3(rng: random.Random, max_n: int) -> Multigraph:
    while True:
        n = rng.randint(2, max_n)
        G = random_connected_multigraph(rng, n, rng.randint(n - 1, 3 * (n - 1)))
        if G is not None and G.m >= 1 and not is_z3_connected(G).ok:
            return G


def _check_two_sum(case):
    G1, G2 = from_json(case["g1"]), from_json(case["g2"])
    S = two_sum(G1, case["edge"], G2, case["u2"], case["v2"], case["flip"]).graph
    stats = {"reduced_pairs": 0, "reduced_checked": 0}
    d = is_z3_connected(S)
    if d.ok:
        return _failure(S, "2-sum of non-Z3-connected graphs is Z3-connected", operands=case), stats
    if is_z3_reduced(G1).reduced and is_z3_reduced(G2).reduced:
        stats["reduced_pairs"] = 1
        verdict = is_z3_reduced(S)
        if not verdict.reduced:
            return _failure(S, "2-sum of reduced graphs is not reduced", subgraph=sorted(verdict.subgraph)), stats
        stats["reduced_checked"] = 1
        msg = _reduced_bounds_failure(S)
        if msg:
            return _failure(S, msg), stats
    return None, stats


def suite_lemma_2sum(seed: int, count: int = 100, max_n: int = 6) -> SuiteReport:
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        G1 = _non_z3(rng, max_n)
        G2 = _non_z3(rng, max_n)
        u2, v2 = rng.sample(range(G2.n), 2)
        cases.append(
            {
                "g1": to_json(G1),
                "edge": rng.randrange(G1.m),
                "g2": to_json(G2),
                "u2": u2,
                "v2": v2,
                "flip": rng.random() < 0.5,
            }
        )
    report = SuiteReport("lemma-2sum", seed, count)
    return _run(report, _check_two_sum, cases)


# --------------------------------------------------------------------------
# partial orientations at z0


def _ltwz_instance(rng: random.Random, max_n: int):
    n = rng.randint(3, max_n)
    k = n - 1
    base = random_connected_multigraph(rng, k, rng.randint(2 * k, 4 * k + 2))
    if base is None:
        return None
    z0 = n - 1
    d0 = rng.randint(1, 7)
    edges = list(base.edges) + [(rng.randrange(k), z0) for _ in range(d0)]
    G = build(n, edges)
    options = [b for b in range(3) if d0 <= 4 + tau_abs(b, d0)]
    b0 = rng.choice(options)
    rest = random_zero_sum(rng, k)
    beta = list(rest[:-1]) + [(rest[-1] - b0) % 3, b0]
    outs = [o for o in range(d0 + 1) if (2 * o - d0 - b0) % 3 == 0]
    if not outs:
        return None
    out = rng.choice(outs)
    at = list(G.incidence[z0])
    leaving = set(rng.sample(at, out))
    arcs = {}
    for e in at:
        w = G.other(e, z0)
        arcs[e] = (z0, w) if e in leaving else (w, z0)
    pre = PreOrientation(z0, arcs)
    if not ltwz_conditions(G, z0, beta, pre).ok:
        return None
    return G, z0, beta, pre


def _check_ltwz(case):
    G = from_json(case["graph"])
    z0 = case["z0"]
    pre = PreOrientation(z0, {int(e): tuple(a) for e, a in case["pre"].items()})
    D = find_beta_orientation(G, case["beta"], fixed=pre)
    if D is None:
        return _failure(G, "pre-orientation does not extend", z0=z0, beta=case["beta"], pre=case["pre"]), {}
    ok = D.is_beta_orientation(case["beta"]) and all(D.arcs[e] == a for e, a in pre.arcs.items())
    if not ok:
        return _failure(G, "returned orientation fails re-validation", z0=z0, beta=case["beta"]), {}
    return None, {}


def suite_ltwz(seed: int, count: int = 100, max_n: int = 8) -> SuiteReport:
    rng = random.Random(seed)
    cases = []
    tries = 0
    while len(cases) < count:
        tries += 1
        if tries > 5000 * count:
            raise RuntimeError("could not sample enough instances")
        inst = _ltwz_instance(rng, max_n)
        if inst is None:
            continue
        G, z0, beta, pre = inst
        cases.append(
            {
                "graph": to_json(G),
                "z0": z0,
                "beta": list(beta),
                "pre": {str(e): list(a) for e, a in sorted(pre.arcs.items())},
            }
        )
    report = SuiteReport("ltwz", seed, count)
    report.stats["draws"] = tries
    return _run(report, _check_ltwz, cases)


# --------------------------------------------------------------------------
# reduced graphs


def _check_density(obj):
    G = from_json(obj)
    stats = {"reduced_seen": 0}
    red = z3_reduce(G)
    seen = [red.graph]
    if not red.trace:
        seen = [G]
    for H in seen:
        if H.n >= 3:
            stats["reduced_seen"] += 1
            msg = _reduced_bounds_failure(H)
            if msg:
                return _failure(H, msg, source=obj), stats
    return None, stats


def suite_density(seed: int, count: int = 50, max_n: int = 10) -> SuiteReport:
    rng = random.Random(seed)
    graphs = []
    while len(graphs) < count:
        n = rng.randint(3, max_n)
        G = random_connected_multigraph(rng, n, rng.randint(n - 1, 3 * n))
        if G is not None:
            graphs.append(G)
    report = SuiteReport("density", seed, count)
    return _run(report, _check_density, [to_json(G) for G in graphs])


# --------------------------------------------------------------------------
# splitting off


def _qualifying_vertex(G: Multigraph):
    for z in range(G.n):
        if G.degree(z) >= 4 and len(G.neighbors(z)) >= 2 and delete_vertex(G, z)[0].is_connected():
            return z
    return None


def _nx_lambda(G: Multigraph, x: int, y: int) -> int:
    D = nx.DiGraph()
    D.add_nodes_from(range(G.n))
    for (u, v), t in G.multiplicity.items():
        D.add_edge(u, v, capacity=t)
        D.add_edge(v, u, capacity=t)
    return int(nx.maximum_flow_value(D, x, y))


def _check_mader(case):
    G = from_json(case["graph"])
    z = case["z"]
    try:
        e1, e2, H = mader_split(G, z)
    except NoPairFound:
        return _failure(G, "no admissible split pair", z=z), {}
    # independent check with networkx flows
    keep = [v for v in range(G.n) if v != z]
    for i, x in enumerate(keep):
        for y in keep[i + 1 :]:
            if _nx_lambda(G, x, y) != _nx_lambda(H, x, y):
                return _failure(G, f"split ({e1}, {e2}) changes lambda({x}, {y})", z=z), {}
    return None, {"pairs": len(keep) * (len(keep) - 1) // 2}


def suite_mader(seed: int, count: int = 50, max_n: int = 8) -> SuiteReport:
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        n = rng.randint(3, max_n)
        G = random_connected_multigraph(rng, n, rng.randint(n + 1, 3 * n))
        if G is None:
            continue
        z = _qualifying_vertex(G)
        if z is not None:
            cases.append({"graph": to_json(G), "z": z})
    report = SuiteReport("mader", seed, count)
    return _run(report, _check_mader, cases)


# --------------------------------------------------------------------------
# strong Z5


STRONG_Z5_EXHAUSTIVE = ((2, 12), (3, 6), (4, 4), (5, 2), (6, 1))


def _check_strong_z5(obj):
    G = from_json(obj)
    if not G.is_connected() or not is_strongly_zm_connected(G, 5).ok:
        return None, {"strong": 0}
    stats = {"strong": 1, f"strong_n{G.n}": 1}
    if deficiency(G, 4)[0] != 0:
        return _failure(G, "strongly Z5-connected but F(G,4) > 0"), stats
    if not is_z3_connected(G).ok:
        return _failure(G, "strongly Z5-connected but not Z3-connected"), stats
    return None, stats


def strong_z5_family(seed: int, count: int):
    """Every labelled multigraph with the listed vertex count and pair
    multiplicity cap, then ``count`` denser samples each on five and six
    vertices."""
    for n, mult in STRONG_Z5_EXHAUSTIVE:
        for G in multiplicity_family(n, mult):
            if G.is_connected():
                yield G
    rng = random.Random(seed)
    for n in (5, 6):
        made = 0
        while made < count:
            G = random_multigraph(rng, n, rng.randint(4 * (n - 1), 8 * (n - 1)))
            if G.is_connected():
                made += 1
                yield G


def suite_strong_z5(seed: int, count: int = 100) -> SuiteReport:
    graphs = [to_json(G) for G in strong_z5_family(seed, count)]
    report = SuiteReport("strong-z5", seed, count)
    return _run(report, _check_strong_z5, graphs)


# --------------------------------------------------------------------------
# cross-checks of the engines


def _check_dp(case):
    G = from_json(case["graph"])
    oracle = CycleSpaceOracle(G)
    reach = achievable_boundaries(G) if G.n >= 1 else None
    for beta in case["betas"]:
        D = find_beta_orientation(G, beta)
        slow = oracle.exists(beta)
        table = bool(reach[tuple(beta[:-1])]) if reach is not None and G.is_connected() else slow
        if (D is not None) != slow or table != slow:
            return _failure(G, f"beta {beta}: dp {D is not None}, cycle space {slow}, table {table}"), {}
        if D is not None and not D.is_beta_orientation(beta):
            return _failure(G, f"beta {beta}: orientation fails re-validation"), {}
    return None, {"betas": len(case["betas"])}


def suite_dp_oracle(seed: int, count: int = 300, max_m: int = 12, betas: int = 20) -> SuiteReport:
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        n = rng.randint(2, 8)
        G = random_multigraph(rng, n, rng.randint(1, max_m))
        cases.append({"graph": to_json(G), "betas": [list(random_zero_sum(rng, n)) for _ in range(betas)]})
    report = SuiteReport("dp-oracle", seed, count)
    return _run(report, _check_dp, cases)


def _check_pack(obj):
    G = from_json(obj)
    for k in (2, 3, 4):
        F, P = deficiency(G, k)
        slow = deficiency_by_partitions(G, k)
        if F != slow or P.value(G, k) != F:
            return _failure(G, f"k={k}: matroid union {F}, partitions {slow}, certificate {P.value(G, k)}"), {}
    return None, {}


def suite_pack_oracle(seed: int, count: int = 100, max_n: int = 6) -> SuiteReport:
    """Every connected simple graph up to ``max_n`` vertices plus ``count``
    random connected multigraphs on seven."""
    graphs = list(connected_simple_graphs(max_n))
    rng = random.Random(seed)
    extra = 0
    while extra < count:
        G = random_connected_multigraph(rng, 7, rng.randint(6, 27))
        if G is not None:
            graphs.append(G)
            extra += 1
    report = SuiteReport("pack-oracle", seed, len(graphs))
    return _run(report, _check_pack, [to_json(G) for G in graphs])


SUITES = {
    "thm-4trees": suite_thm_4trees,
    "thm-f4le3": suite_thm_f4le3,
    "prop-extend": suite_prop_extend,
    "lemma-2sum": suite_lemma_2sum,
    "ltwz": suite_ltwz,
    "density": suite_density,
    "mader": suite_mader,
    "strong-z5": suite_strong_z5,
    "dp-oracle": suite_dp_oracle,
    "pack-oracle": suite_pack_oracle,
}


def run_suite(name: str, seed: int, count: int | None = None) -> SuiteReport:
    fn = SUITES[name]
    start = time.perf_counter()
    report = fn(seed) if count is None else fn(seed, count)
    report.seconds = time.perf_counter() - start
    return report


def dump(report: SuiteReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True)
