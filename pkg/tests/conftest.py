from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from aalpha.graph import Graph, GraphFamily, generate_family

DIMS = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]


@st.composite
def graphs(draw, dims=DIMS, min_edges=1):
    d1, d2 = draw(st.sampled_from(dims))
    n = d1 * d2
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=min_edges, max_size=len(pairs), unique=True))
    ws = draw(st.lists(st.integers(1, 100), min_size=len(chosen), max_size=len(chosen)))
    return Graph(n, d1, d2, [(u, v, Fraction(w, 100)) for (u, v), w in zip(chosen, ws)])



@pytest.fixture
def path4():
    return generate_family(GraphFamily("path", 4), 2, 2)


@pytest.fixture
def k4():
    return generate_family(GraphFamily("complete", 4), 2, 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.summary_line(num))
