"""Hypothesis strategies for small loopless multigraphs."""

from hypothesis import strategies as st

from flowforge import build


@st.composite
def multigraphs(draw, min_n=1, max_n=6, max_m=10, connected=False):
    n = draw(st.integers(min_n, max_n))
    if n < 2:
        return build(n)
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pair, max_size=max_m))
    if connected:
        # a random spanning path first keeps the graph connected
        order = draw(st.permutations(range(n)))
        edges = [(order[i], order[i + 1]) for i in range(n - 1)] + edges
    return build(n, edges)
