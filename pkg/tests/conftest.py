import itertools

import pytest
from hypothesis import settings

from cohesion_lab.graph import Graph

settings.register_profile("ci", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("ci")


def complete(n):
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def fig1():
    """Worked-example graph: square 0-1-2-3 with diagonal 0-1, apex 4 on 1,3.

    Vertices: 0 and 1 are diagonal corners, 2 and 3 the other two corners,
    4 the apex. Triangles: {0,1,2}, {0,1,3}, {1,3,4}. For S = {0,1,2,3}:
    inside 2, outbound 1.
    """
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (1, 4), (1, 3)])


FIG1_SQUARE = (0, 1, 2, 3)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def k4_minus_edge():
    """K4 with the (2, 3) edge removed; still connected, two triangles."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def two_k5_bridge():
    edges = list(itertools.combinations(range(5), 2))
    edges += [(u + 5, v + 5) for u, v in itertools.combinations(range(5), 2)]
    edges.append((4, 5))
    return Graph.from_edges(10, edges)
