from __future__ import annotations

import itertools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from starpcg.families import SetFamily
from starpcg.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Path a-b-c-d on vertices 0..3; the worked ordering c,a,b,d is (2, 0, 1, 3).
P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
P4_ORDER = (2, 0, 1, 3)
K3 = Graph.complete(3)
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
K13 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
TWO_K2 = Graph.from_edges(4, [(0, 1), (2, 3)])
TWO_TRIANGLES = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
C5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if mask >> k & 1])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def families(draw, max_ground: int = 7, max_sets: int = 6):
    ground = draw(st.integers(1, max_ground))
    sets = draw(st.lists(st.frozensets(st.integers(0, ground - 1), min_size=1), max_size=max_sets))
    return SetFamily.of(ground, sets)


@st.composite
def graph_and_order(draw, min_n: int = 1, max_n: int = 7):
    g = draw(graphs(min_n, max_n))
    return g, tuple(draw(st.permutations(range(g.n))))


# Acceptance criteria record one line each here; printed in the terminal summary.
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
