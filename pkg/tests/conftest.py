import itertools

import pytest

from signedwalks import build_graph, example_triangle, make_walk
from signedwalks.errors import WalkError

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def tri():
    return example_triangle()[0]


@pytest.fixture
def sigma():
    return example_triangle()[1]


@pytest.fixture
def delta0(tri):
    return make_walk(tri, "v0", ["e01", "e12", "e20"])


@pytest.fixture
def loop_graph():
    return build_graph(["v0"], [("l", ("v0", "v0"))])


@pytest.fixture
def digon():
    """Two parallel edges plus a loop: exercises both multigraph features."""
    return build_graph(["a", "b"], [("p", ("a", "b")), ("q", ("a", "b")), ("r", ("b", "b"))])


def brute_walks(graph, x, lmax):
    """All walks from x of length <= lmax by trying every edge sequence."""
    out = []
    for k in range(lmax + 1):
        for seq in itertools.product(list(graph.edges), repeat=k):
            try:
                out.append(make_walk(graph, x, seq))
            except WalkError:
                pass
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
