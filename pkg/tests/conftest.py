import pytest

from rootedmaps.core import VERTEX_MAP, build_map


@pytest.fixture
def vertex_map():
    return VERTEX_MAP


@pytest.fixture
def edge_map():
    return build_map(1, [0, 1], 0)


@pytest.fixture
def loop_map():
    return build_map(1, [1, 0], 0)


@pytest.fixture
def torus_two_loops():
    # sigma = (0 2 1 3)
    return build_map(2, [2, 3, 1, 0], 0)


@pytest.fixture
def double_loop():
    # sigma = (0 1 2 3): two nested-free loops at one vertex
    return build_map(2, [1, 2, 3, 0], 0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
