import io
import json
import subprocess
import sys

import pytest

from flowforge.cli import main
from flowforge.graphcore import complete_graph, cycle_graph, edge_cut, parse, serialize, to_graph6
from flowforge.orient import Orientation


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, G in {"k4": complete_graph(4), "c3": cycle_graph(3), "c2": cycle_graph(2)}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(serialize(G))
        out[name] = str(p)
    return out


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_jaeger(capsys, tmp_path):
    code, out, _ = run(["construct", "jaeger"], capsys)
    path = tmp_path / "J.json"
    path.write_text(out)
    code, out, _ = run(["analyze", "--input", str(path), "--json"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["edge_connectivity"]["value"] == 4
    assert report["essential_edge_connectivity"]["value"] == 4
    assert report["tree_packing_number"] == 2
    assert report["deficiency"]["4"]["value"] == 20
    assert report["z3_connected"] is False and len(report["z3_witness"]) == 12
    assert report["z3_reduced"] is True
    assert report["density"] == {"m": 24, "bound": 40, "ok": True}


def test_analyze_certificates_replay(capsys, files):
    G = complete_graph(4)
    _, out, _ = run(["analyze", "--input", files["k4"], "--json", "--k", "2", "--k", "4"], capsys)
    report = json.loads(out)
    assert report["edge_connectivity"]["value"] == 3
    assert report["deficiency"]["4"]["value"] == 6
    assert report["deficiency"]["2"]["value"] == 0
    assert report["nz3flow"] is False
    cut = report["edge_connectivity"]["cut"]
    assert list(edge_cut(G, cut["side"]).cut_edges) == cut["cut_edges"]
    parts = report["deficiency"]["4"]["partition"]
    where = {v: i for i, p in enumerate(parts) for v in p}
    cross = sum(1 for u, v in G.edges if where[u] != where[v])
    assert 4 * (len(parts) - 1) - cross == 6


def test_analyze_two_cycle_orientation_replays(capsys, files):
    _, out, _ = run(["analyze", "--input", files["c2"], "--json"], capsys)
    report = json.loads(out)
    assert report["z3_connected"] is True
    assert report["z3_reduction_trace"] == [[0, 1]]
    D = Orientation(cycle_graph(2), tuple(map(tuple, report["orientation"]["edges"])))
    assert D.is_beta_orientation((0, 0))


def test_analyze_text_output(capsys, files):
    code, out, _ = run(["analyze", "--input", files["k4"]], capsys)
    assert code == 0 and "z3_connected: false" in out


def test_decide_triangle(capsys, files):
    code, out, _ = run(["decide", "z3", "--input", files["c3"], "--json"], capsys)
    assert code == 1 and json.loads(out)["witness"] == [1, 1, 1]
    code, out, _ = run(["decide", "extendable@0", "--input", files["c3"]], capsys)
    assert code == 1
    code, out, _ = run(["decide", "mod3", "--input", files["c3"], "--json"], capsys)
    arcs = json.loads(out)["orientation"]["edges"]
    assert code == 0 and sorted(arcs) in ([[0, 1], [1, 2], [2, 0]], [[0, 2], [1, 0], [2, 1]])


def test_decide_other_questions(capsys, files):
    assert run(["decide", "z3", "--input", files["c2"]], capsys)[0] == 0
    assert run(["decide", "mod5", "--input", files["k4"]], capsys)[0] == 1
    code, out, _ = run(["decide", "strong-zm", "--m", "5", "--input", files["c2"], "--json"], capsys)
    assert code == 1 and json.loads(out)["witness"] == [1, 4]
    assert run(["decide", "strong-zm", "--input", files["c2"]], capsys)[0] == 2
    assert run(["decide", "strong-zm", "--m", "4", "--input", files["c2"]], capsys)[0] == 2
    assert run(["decide", "extendable@x", "--input", files["c2"]], capsys)[0] == 2
    assert run(["decide", "what", "--input", files["c2"]], capsys)[0] == 2


def test_stdin_and_graph6(capsys, monkeypatch):
    code, out, _ = run(["decide", "z3", "--format", "graph6"], capsys, to_graph6(complete_graph(4)), monkeypatch)
    assert code == 1
    code, _, _ = run(["decide", "z3"], capsys, serialize(cycle_graph(2)), monkeypatch)
    assert code == 0


def test_errors_exit_two(capsys, monkeypatch, tmp_path):
    code, _, err = run(["analyze", "--json"], capsys, '{"n": 2, "edges": [', monkeypatch)
    assert code == 2 and json.loads(err)["error"] == "ParseError"
    code, _, err = run(["analyze"], capsys, '{"n": 2, "edges": [[0, 0]]}', monkeypatch)
    assert code == 2 and "loop" in err.lower()
    assert run(["analyze", "--input", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["bogus"], capsys)[0] == 2


def test_budget_guard(capsys, monkeypatch):
    big = serialize(complete_graph(15))
    code, _, err = run(["analyze", "--json"], capsys, big, monkeypatch)
    assert code == 2 and json.loads(err)["error"] == "BudgetExceeded"
    ring = serialize(cycle_graph(15))
    assert run(["decide", "mod3"], capsys, ring, monkeypatch)[0] == 2
    assert run(["decide", "mod3", "--budget-n", "15"], capsys, ring, monkeypatch)[0] == 0


def test_construct(capsys, files):
    code, out, _ = run(["construct", "jaeger"], capsys)
    G = parse(out)
    assert code == 0 and (G.n, G.m) == (12, 24)
    _, out, _ = run(
        ["construct", "two-sum", "--g1", files["k4"], "--edge", "0", "--g2", files["k4"], "--anchors", "0", "1"], capsys
    )
    G = parse(out)
    assert (G.n, G.m) == (6, 11)
    _, out, _ = run(["construct", "subdivide-identify", "--input", files["k4"], "--edges", "0,1,2"], capsys)
    G = parse(out)
    assert (G.n, G.m) == (5, 9)
    _, out, _ = run(["construct", "kochol", "--input", files["k4"], "--vertex", "0", "--pair", "1", "2"], capsys)
    assert parse(out).n == 6 * 4 - 2
    _, out, _ = run(["construct", "h-gadget", "--input", files["k4"], "--anchors", "0", "1", "2", "3"], capsys)
    assert parse(out).n == 6
    _, out, _ = run(["construct", "g-star", "--input", files["k4"], "--anchors", "0,1,2,3"], capsys)
    assert parse(out).n == 36


def test_construct_errors(capsys, files):
    assert run(["construct", "two-sum", "--g1", files["k4"]], capsys)[0] == 2
    assert run(["construct", "kochol", "--input", files["k4"], "--pair", "1", "2"], capsys)[0] == 2
    assert run(["construct", "h-gadget", "--input", files["k4"], "--anchors", "0", "1"], capsys)[0] == 2
    assert run(["construct", "subdivide-identify", "--input", files["k4"], "--edges", "a"], capsys)[0] == 2
    assert run(["construct", "two-sum", "--g1", files["k4"], "--edge", "0", "--g2", files["k4"], "--anchors", "1", "1"], capsys)[0] == 2


def test_verify(capsys):
    code, out, _ = run(["verify", "density", "--seed", "3", "--count", "5"], capsys)
    assert code == 0 and out.startswith("density: pass")
    code, out, _ = run(["verify", "mader", "--seed", "3", "--count", "3", "--json"], capsys)
    assert code == 0 and json.loads(out)["passed"] is True


def test_search(capsys, tmp_path):
    code, out, _ = run(["search", "reduced-min-degree-5", "--budget", "0"], capsys)
    assert code == 0 and out.startswith("none in budget: examined 0")
    journal = tmp_path / "j.jsonl"
    code, out, _ = run(["search", "non-z3-5ec", "--budget", "5", "--seed", "2", "--journal", str(journal), "--json"], capsys)
    first = json.loads(out)
    code, out, _ = run(["search", "--replay", str(journal), "--json"], capsys)
    again = json.loads(out)
    assert code == 0 and again["replay_matches"] and again["examined"] == first["examined"] == 5
    assert run(["search"], capsys)[0] == 2


def test_console_script_exit_codes(files):
    done = subprocess.run(["flowforge", "decide", "z3", "--input", files["c3"]], capture_output=True, text=True)
    assert done.returncode == 1 and done.stdout.startswith("no")
    done = subprocess.run([sys.executable, "-m", "flowforge.cli", "decide", "z3", "--input", files["c2"]], capture_output=True)
    assert done.returncode == 0
