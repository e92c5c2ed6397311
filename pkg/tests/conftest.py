from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tightcycle.hypergraph import partitioned
from tightcycle.linegraph import LineGraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def report():
    """Record the one-line verdict for an acceptance criterion."""

    def record(number: int, ok: bool, text: str, label: str | None = None) -> None:
        verdict = label or ("PASS" if ok else "FAIL")
        ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {verdict}  {text}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@st.composite
def line_graphs(draw, r=None, max_part=4, max_vertices=40, min_vertices=0):
    r = draw(st.integers(2, 4)) if r is None else r
    sizes = draw(st.lists(st.integers(1, max_part), min_size=r, max_size=r))
    cells = [tuple(draw(st.integers(0, s - 1)) for s in sizes)
             for _ in range(draw(st.integers(min_vertices, max_vertices)))]
    return LineGraph(r, sizes, cells)


@st.composite
def nonempty_line_graphs(draw, **kw):
    kw.setdefault("min_vertices", 1)
    return draw(line_graphs(**kw))


@st.composite
def partitioned_hypergraphs(draw, r=None, max_part=4, max_edges=30):
    G = draw(line_graphs(r=r, max_part=max_part, max_vertices=max_edges))
    return G.to_hypergraph()


def grid_edges(sizes):
    import itertools

    start, ranges = 0, []
    for s in sizes:
        ranges.append(range(start, start + s))
        start += s
    return list(itertools.product(*ranges))


def partite(sizes, edges):
    return partitioned(len(sizes), sizes, edges)
