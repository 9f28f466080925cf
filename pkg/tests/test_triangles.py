import itertools
from random import Random

import pytest
from hypothesis import given, strategies as st

from cohesion_lab.errors import DomainError
from cohesion_lab.graph import Graph
from cohesion_lab.harness import all_graphs, naive_census, random_graph
from cohesion_lab.triangles import (
    add_vertex_delta,
    census,
    edge_triangle_count,
    remove_vertex_delta,
    total_triangles,
)

from conftest import FIG1_SQUARE, complete


def test_census_fig1_square(fig1):
    c = census(fig1, FIG1_SQUARE)
    assert (c.inside, c.outbound, c.touching_one, c.outside) == (2, 1, 0, 0)


def test_census_complete_graph_full_set():
    c = census(complete(5), range(5))
    assert c.inside == 10 and c.outbound == c.touching_one == c.outside == 0


def test_census_empty_set_counts_all_outside(fig1):
    c = census(fig1, [])
    assert c.inside == c.outbound == c.touching_one == 0
    assert c.outside == 3


def test_census_matches_naive_exhaustive_small():
    for n in range(5):
        for g in all_graphs(n):
            for bits in range(1 << n):
                s = [v for v in range(n) if (bits >> v) & 1]
                assert census(g, s) == naive_census(g, s)


def test_census_matches_naive_random():
    rng = Random(17)
    for t in range(300):
        g = random_graph(rng.randint(1, 12), (0.3, 0.5, 0.7)[t % 3], rng)
        s = [v for v in range(g.n) if rng.random() < 0.5]
        assert census(g, s) == naive_census(g, s)


def test_bucket_sum_is_total_triangles():
    rng = Random(23)
    for _ in range(60):
        g = random_graph(rng.randint(1, 11), 0.5, rng)
        total = census(g, []).outside
        s = [v for v in range(g.n) if rng.random() < 0.4]
        assert census(g, s).total == total == total_triangles(g)


def test_edge_triangle_count_triangle():
    assert edge_triangle_count(complete(3), 0, 1) == 1


@pytest.mark.parametrize("n", [4, 5, 8])
def test_edge_triangle_count_complete(n):
    assert edge_triangle_count(complete(n), 1, 3) == n - 2


def test_edge_triangle_count_fig1_full_table(fig1):
    # hand-enumerated common-neighbor counts for every edge of the figure
    expected = {
        (0, 1): 2,
        (0, 2): 1,
        (0, 3): 1,
        (1, 2): 1,
        (1, 3): 2,
        (1, 4): 1,
        (3, 4): 1,
    }
    for (u, v), want in expected.items():
        assert edge_triangle_count(fig1, u, v) == want
        assert edge_triangle_count(fig1, v, u) == want


def test_edge_triangle_count_requires_edge(fig1):
    with pytest.raises(DomainError):
        edge_triangle_count(fig1, 2, 3)


def test_triangle_count_conservation():
    # sum of per-edge triangle counts is 3 * total triangles
    rng = Random(31)
    for _ in range(60):
        g = random_graph(rng.randint(1, 12), 0.5, rng)
        acc = sum(edge_triangle_count(g, u, v) for u, v in g.edges())
        assert acc == 3 * total_triangles(g)


def test_add_delta_from_empty_set(fig1):
    c = census(fig1, [])
    d = add_vertex_delta(fig1, [], c, 1)
    assert d.d_inside == 0 and d.d_outbound == 0


def test_add_delta_k4(k4):
    c = census(k4, [0, 1, 2])
    d = add_vertex_delta(k4, [0, 1, 2], c, 3)
    assert (d.d_inside, d.d_outbound) == (3, -3)
    assert c.apply(d) == census(k4, [0, 1, 2, 3])


def test_add_delta_rejects_member(k4):
    with pytest.raises(DomainError):
        add_vertex_delta(k4, [0, 1], census(k4, [0, 1]), 1)


def test_remove_delta_rejects_non_member(k4):
    with pytest.raises(DomainError):
        remove_vertex_delta(k4, [0, 1], census(k4, [0, 1]), 3)


def test_delta_matches_recomputation_random():
    rng = Random(47)
    for t in range(1000):
        g = random_graph(rng.randint(1, 10), (0.3, 0.5, 0.7)[t % 3], rng)
        if g.n < 1:
            continue
        s = {v for v in range(g.n) if rng.random() < 0.5}
        outside = [v for v in range(g.n) if v not in s]
        if not outside:
            continue
        v = outside[rng.randrange(len(outside))]
        c = census(g, s)
        d = add_vertex_delta(g, s, c, v)
        assert c.apply(d) == census(g, s | {v})


def test_add_remove_round_trip():
    rng = Random(53)
    for _ in range(200):
        g = random_graph(rng.randint(2, 10), 0.5, rng)
        s = {v for v in range(g.n) if rng.random() < 0.5}
        outside = [v for v in range(g.n) if v not in s]
        if not outside:
            continue
        v = outside[0]
        c = census(g, s)
        grown = c.apply(add_vertex_delta(g, s, c, v))
        back = grown.apply(remove_vertex_delta(g, s | {v}, grown, v))
        assert back == c


@st.composite
def graph_and_subset(draw):
    n = draw(st.integers(0, 8))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])
    s = draw(st.sets(st.integers(0, max(0, n - 1)), max_size=n)) if n else set()
    return g, s


@given(graph_and_subset())
def test_census_oracle_property(gs):
    g, s = gs
    assert census(g, s) == naive_census(g, s)
