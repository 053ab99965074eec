import sys
from itertools import combinations
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from rainbowkit.graph_core import EdgeColoring, Graph  # noqa: E402

settings.register_profile(
    "default", max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def connected_graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    tree = [(draw(st.integers(0, i - 1)), i) for i in range(1, n)]
    extra = draw(st.lists(st.sampled_from(list(combinations(range(n), 2)) or [(0, 0)]), max_size=n + 2))
    edges = set(tree) | {e for e in extra if e[0] != e[1]}
    return Graph(n, tuple(edges))


@st.composite
def colored_graphs(draw, min_n=2, max_n=6, max_k=4):
    g = draw(connected_graphs(min_n, max_n))
    k = draw(st.integers(1, max_k))
    colors = draw(st.lists(st.integers(0, k - 1), min_size=g.m, max_size=g.m))
    return g, EdgeColoring(g, tuple(colors), k)


@st.composite
def colored_digraphs(draw, max_n=5, max_k=3):
    n = draw(st.integers(2, max_n))
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.lists(st.sampled_from(slots), unique=True, min_size=1, max_size=2 * n))
    g = Graph(n, tuple(arcs), directed=True)
    k = draw(st.integers(1, max_k))
    colors = draw(st.lists(st.integers(0, k - 1), min_size=g.m, max_size=g.m))
    return g, EdgeColoring(g, tuple(colors), k)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
