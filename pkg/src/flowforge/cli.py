"""``flowforge`` command line: analyze, decide, construct, verify, search.

Exit codes: 0 yes/pass, 1 no/fail, 2 error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import gadgets
from .connectivity import edge_connectivity, essential_edge_connectivity
from .errors import BudgetExceeded, FlowforgeError, NoPairFound
from .graphcore import Multigraph, delete_vertex, parse, serialize
from .orient import (
    find_beta_orientation,
    has_mod_orientation,
    is_extendable_at,
    is_strongly_zm_connected,
    is_z3_connected,
)
from .reduce import density_check, is_z3_reduced, z3_reduce
from .search import TARGETS, replay_journal, search
from .suites import SUITES, run_suite
from .treepack import deficiency, tree_packing_number

YES, NO, ERROR = 0, 1, 2


class CliError(FlowforgeError):
    pass


# --------------------------------------------------------------------------
# input and output


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load(path: str, fmt: str) -> Multigraph:
    return parse(_read_text(path), fmt)


def _guard(G: Multigraph, args):
    if G.n > args.budget_n or G.m > args.budget_m:
        raise BudgetExceeded(
            f"graph has n={G.n}, m={G.m}; exponential routines are capped at "
            f"n <= {args.budget_n}, m <= {args.budget_m} (raise --budget-n/--budget-m)"
        )


def _emit(obj: dict, args, lines: list[str] | None = None):
    if args.json or lines is None:
        print(json.dumps(obj, sort_keys=True))
    else:
        print("\n".join(lines))


def _finite(x):
    return "inf" if x == math.inf else x


# --------------------------------------------------------------------------
# analyze


def analyze_report(G: Multigraph, ks=(4,)) -> dict:
    degrees = G.degrees()
    report = {"n": G.n, "m": G.m}
    report["degree"] = {
        "min": min(degrees) if degrees else 0,
        "max": max(degrees) if degrees else 0,
        "sequence": sorted(degrees, reverse=True),
    }
    connected = G.is_connected()
    report["connected"] = connected
    if G.n >= 2:
        k, cut = edge_connectivity(G)
        report["edge_connectivity"] = {"value": k, "cut": cut.to_json()}
        ek, ecut = essential_edge_connectivity(G)
        report["essential_edge_connectivity"] = {
            "value": _finite(ek),
            "cut": ecut.to_json() if ecut is not None else None,
        }
    if connected and G.n >= 2:
        report["tree_packing_number"] = tree_packing_number(G)[0]
        report["deficiency"] = {}
        for k in ks:
            F, P = deficiency(G, k)
            report["deficiency"][str(k)] = {"value": F, "partition": P.to_json()}
    z3 = is_z3_connected(G)
    report["z3_connected"] = z3.ok
    if z3.ok:
        report["z3_reduction_trace"] = z3_reduce(G).to_json()["trace"]
    else:
        report["z3_witness"] = list(z3.witness)
    red = is_z3_reduced(G)
    report["z3_reduced"] = red.reduced
    if not red.reduced:
        report["z3_connected_subgraph"] = sorted(red.subgraph)
    if G.n >= 3:
        report["density"] = {"m": G.m, "bound": 4 * G.n - 8, "ok": density_check(G)}
    D = has_mod_orientation(G, 3)
    report["mod3_orientation"] = D is not None
    report["nz3flow"] = D is not None
    if D is not None:
        report["orientation"] = D.to_json()
    return report


def cmd_analyze(args) -> int:
    G = _load(args.input, args.format)
    _guard(G, args)
    report = analyze_report(G, args.k or [4])
    lines = [f"{key}: {json.dumps(value)}" for key, value in report.items()]
    _emit(report, args, lines)
    return YES


# --------------------------------------------------------------------------
# decide


def decide(G: Multigraph, question: str, m: int | None = None) -> dict:
    if question == "z3":
        d = is_z3_connected(G)
        return {"question": "z3", "answer": d.ok, "witness": list(d.witness) if d.witness else None}
    if question in ("mod3", "mod5"):
        modulus = int(question[-1])
        D = has_mod_orientation(G, modulus)
        return {"question": question, "answer": D is not None, "orientation": D.to_json() if D else None}
    if question == "strong-zm":
        if m is None:
            raise CliError("strong-zm needs --m")
        d = is_strongly_zm_connected(G, m)
        return {"question": f"strong-z{m}", "answer": d.ok, "witness": list(d.witness) if d.witness else None}
    if question.startswith("extendable@"):
        try:
            z0 = int(question.split("@", 1)[1])
        except ValueError:
            raise CliError(f"bad vertex in {question!r}") from None
        ok = is_extendable_at(G, z0)
        out = {"question": question, "answer": ok}
        if not ok:
            rest, mapping = delete_vertex(G, z0)
            beta = is_z3_connected(rest).witness
            back = [v for v in range(G.n) if v != z0]
            out["witness"] = {"graph_minus_z0_vertices": back, "beta": list(beta)}
            assert all(mapping[v] == i for i, v in enumerate(back))
            assert find_beta_orientation(rest, beta) is None
        return out
    raise CliError(f"unknown question {question!r}")


def cmd_decide(args) -> int:
    G = _load(args.input, args.format)
    _guard(G, args)
    result = decide(G, args.question, args.m)
    lines = [f"{'yes' if result['answer'] else 'no'}"] + [
        f"{k}: {json.dumps(v)}" for k, v in result.items() if k not in ("question", "answer") and v is not None
    ]
    _emit(result, args, lines)
    return YES if result["answer"] else NO


# --------------------------------------------------------------------------
# construct


def _ints(values, count=None, name="values"):
    if values is None:
        raise CliError(f"missing {name}")
    flat = []
    try:
        for v in values:
            flat += [int(x) for x in str(v).split(",") if x != ""]
    except ValueError:
        raise CliError(f"{name} must be integers") from None
    if count is not None and len(flat) != count:
        raise CliError(f"{name} needs {count} integers, got {len(flat)}")
    return flat


def construct(args) -> Multigraph:
    g = args.gadget
    if g == "jaeger":
        return gadgets.jaeger_graph()
    if g == "two-sum":
        if not args.g1 or not args.g2 or args.edge is None:
            raise CliError("two-sum needs --g1, --edge, --g2 and --anchors")
        u2, v2 = _ints(args.anchors, 2, "--anchors")
        G1, G2 = _load(args.g1, args.format), _load(args.g2, args.format)
        return gadgets.two_sum(G1, args.edge, G2, u2, v2, flip=args.flip).graph
    G = _load(args.input, args.format)
    if g == "kochol":
        if args.vertex is None:
            raise CliError("kochol needs --vertex and --pair")
        v1, v2 = _ints(args.pair, 2, "--pair")
        return gadgets.kochol_composite(G, args.vertex, v1, v2).G
    if g == "h-gadget":
        return gadgets.h_gadget(G, _ints(args.anchors, None, "--anchors")).graph
    if g == "g-star":
        return gadgets.g_star(gadgets.h_gadget(G, _ints(args.anchors, None, "--anchors")))
    if g == "subdivide-identify":
        return gadgets.subdivide_identify(G, _ints(args.edges, None, "--edges"))[0]
    raise CliError(f"unknown gadget {g!r}")


def cmd_construct(args) -> int:
    G = construct(args)
    print(serialize(G, "json"))
    return YES


# --------------------------------------------------------------------------
# verify and search


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.seed, args.count)
    body = report.to_json()
    lines = [
        f"{report.suite}: {'pass' if report.passed else 'FAIL'} "
        f"({report.checked} checked, {len(report.failures)} failures, {report.seconds:.1f}s)"
    ]
    for f in report.failures:
        lines.append(f"  {f['message']}: {json.dumps(f['graph'], separators=(',', ':'))}")
    _emit(body, args, lines)
    return YES if report.passed else NO


def cmd_search(args) -> int:
    if args.replay:
        same, report = replay_journal(args.replay)
        body = report.to_json()
        body["replay_matches"] = same
        _emit(body, args, [f"replay {'matches' if same else 'DIFFERS'}: examined {report.examined}"])
        return YES if same else NO
    if args.target is None:
        raise CliError("search needs a target or --replay")
    report = search(args.target, args.seed, args.budget, args.max_n, args.journal)
    body = report.to_json()
    lines = [f"{body['result']}: examined {report.examined} ({report.distinct} distinct)"]
    lines += [json.dumps(h["graph"], separators=(",", ":")) for h in report.hits]
    _emit(body, args, lines)
    return YES


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="graph file, or - for stdin")
    common.add_argument("--format", choices=["json", "graph6"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int, default=None)
    common.add_argument("--budget-n", type=int, default=14)
    common.add_argument("--budget-m", type=int, default=30)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--k", type=int, action="append", help="F(G,k) for this k (repeatable)")

    parser = argparse.ArgumentParser(prog="flowforge", description="Group connectivity toolkit for multigraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report on one graph")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decide", parents=[common], help="yes/no question with certificate")
    p.add_argument("question", help="z3, mod3, mod5, strong-zm or extendable@V")
    p.add_argument("--m", type=int, default=None, help="odd modulus for strong-zm")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("construct", parents=[common], help="emit a gadget as a json edge list")
    p.add_argument("gadget", choices=["jaeger", "two-sum", "kochol", "h-gadget", "g-star", "subdivide-identify"])
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.add_argument("--edge", type=int)
    p.add_argument("--flip", action="store_true")
    p.add_argument("--anchors", nargs="+")
    p.add_argument("--vertex", type=int)
    p.add_argument("--pair", nargs="+")
    p.add_argument("--edges", nargs="+")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="run a seeded property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="seeded counterexample search")
    p.add_argument("target", nargs="?", choices=TARGETS)
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--journal")
    p.add_argument("--replay")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else YES
    try:
        return args.func(args)
    except (FlowforgeError, NoPairFound, OSError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err) if getattr(args, "json", False) else f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
