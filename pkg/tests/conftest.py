import pytest

from flowforge import build, complete_graph, cycle_graph
from flowforge.gadgets import jaeger_graph

ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def K4():
    return complete_graph(4)


@pytest.fixture
def triangle():
    return cycle_graph(3)


@pytest.fixture
def two_cycle():
    return cycle_graph(2)


@pytest.fixture(scope="session")
def J():
    return jaeger_graph()


@pytest.fixture
def bowtie():
    # two triangles sharing vertex 2
    return build(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


@pytest.fixture
def acceptance_log(request):
    """Record one summary line per acceptance criterion."""
    return request.config.stash.setdefault(ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter):
    lines = terminalreporter.config.stash.get(ACCEPTANCE, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])
