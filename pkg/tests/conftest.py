from __future__ import annotations

import itertools

from hypothesis import HealthCheck, settings, strategies as st

from qgraph.graph import graph_from_edges

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 5):
    ell = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(1, ell + 1), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph_from_edges(ell, [e for e, keep in zip(pairs, mask) if keep])


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
