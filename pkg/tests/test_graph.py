import json
from random import Random

import numpy as np
import pytest

from cohesion_lab.errors import EdgeListParseError, GraphValidationError
from cohesion_lab.graph import (
    Graph,
    VertexSet,
    connected_components,
    induced_subgraph,
    is_connected,
    parse_edge_list,
)
from cohesion_lab.harness import random_graph

from conftest import FIG1_SQUARE


def test_parse_triangle():
    g = parse_edge_list("0 1\n1 2\n0 2")
    assert g.n == 3 and g.m == 3
    assert sorted(g.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_parse_empty_input():
    g = parse_edge_list("")
    assert g.n == 0 and g.m == 0


def test_parse_duplicate_edge_rejected():
    with pytest.raises(GraphValidationError, match="duplicate"):
        parse_edge_list("a b\nb a")


def test_parse_self_loop_rejected():
    with pytest.raises(GraphValidationError, match="self-loop"):
        parse_edge_list("a b\nc c")


def test_parse_malformed_line_carries_number():
    with pytest.raises(EdgeListParseError, match="line 3"):
        parse_edge_list("a b\nb c\na b c\n")


def test_parse_skips_comments_and_blanks():
    g = parse_edge_list("# header\n\n  a b\n# mid\nb c\n")
    assert g.n == 3 and g.m == 2


def test_labels_first_appearance_order():
    g = parse_edge_list("b a\na c")
    assert g.labels == ("b", "a", "c")
    assert g.id_of_label("c") == 2
    with pytest.raises(GraphValidationError, match="unknown vertex token"):
        g.id_of_label("zz")


def test_from_edges_validation():
    with pytest.raises(GraphValidationError, match="out of range"):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphValidationError, match="self-loop"):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphValidationError, match="duplicate"):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_adjacency_invariants_random():
    rng = Random(11)
    for _ in range(50):
        g = random_graph(rng.randint(0, 12), 0.5, rng)
        degsum = sum(g.degree(v) for v in range(g.n))
        assert degsum == 2 * g.m
        for v in range(g.n):
            row = g.neighbors(v)
            assert (np.diff(row) > 0).all()  # sorted, no duplicates
            for u in row:
                assert g.has_edge(int(u), v)  # symmetry


def test_json_round_trip_is_identity():
    rng = Random(5)
    for _ in range(25):
        n = rng.randint(0, 10)
        g = random_graph(n, 0.4, rng)
        assert Graph.from_json_dict(g.to_json_dict()) == g
    labeled = parse_edge_list("x y\ny z\nz x")
    assert Graph.from_json_dict(labeled.to_json_dict()) == labeled


def test_json_golden_bytes():
    g = parse_edge_list("b a\na c")
    golden = (
        '{"n": 3, "edges": [[0, 1], [1, 2]], '
        '"labels": {"0": "b", "1": "a", "2": "c"}}'
    )
    assert json.dumps(g.to_json_dict()) == golden


def test_edge_list_round_trip_preserves_labeled_structure():
    rng = Random(9)
    for _ in range(25):
        n = rng.randint(2, 10)
        g = random_graph(n, 0.5, rng)
        if g.m == 0:
            continue
        # drop isolated vertices: the text format cannot carry them
        kept = sorted({v for e in g.edges() for v in e})
        g = induced_subgraph(g, kept)
        h = parse_edge_list(g.to_edge_list_text())
        as_labels = lambda gr: {
            frozenset((gr.label_of(u), gr.label_of(v))) for u, v in gr.edges()
        }
        assert h.n == g.n and as_labels(h) == as_labels(g)


def test_induced_subgraph_of_clique(k4):
    sub = induced_subgraph(k4, [0, 1, 2])
    assert sub.n == 3 and sub.m == 3


def test_induced_subgraph_fig1_square(fig1):
    assert induced_subgraph(fig1, FIG1_SQUARE).m == 5


def test_induced_subgraph_empty_set(fig1):
    sub = induced_subgraph(fig1, [])
    assert sub.n == 0 and sub.m == 0


def test_induced_edge_count_bound():
    rng = Random(3)
    for _ in range(40):
        g = random_graph(rng.randint(1, 10), 0.6, rng)
        s = [v for v in range(g.n) if rng.random() < 0.5]
        sub = induced_subgraph(g, s)
        assert sub.m <= len(s) * (len(s) - 1) // 2


def test_induced_subgraph_out_of_range(k4):
    with pytest.raises(GraphValidationError):
        induced_subgraph(k4, [0, 7])


def test_is_connected_examples(k4, two_triangles):
    assert is_connected(k4, [0, 1, 2, 3])
    assert not is_connected(two_triangles, range(6))
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert not is_connected(path, [0, 2])
    assert is_connected(path, [])
    assert is_connected(path, [2])


def _union_find_connected(g):
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        parent[find(u)] = find(v)
    return len({find(v) for v in range(g.n)}) <= 1


def test_is_connected_against_union_find():
    rng = Random(42)
    for t in range(1000):
        g = random_graph(rng.randint(1, 12), (0.1, 0.3, 0.5)[t % 3], rng)
        assert is_connected(g) == _union_find_connected(g)


def test_connected_components():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (3, 4), (5, 6)])
    assert connected_components(g) == [[0, 1, 2], [3, 4], [5, 6]]


def test_vertex_set_basics():
    s = VertexSet([3, 1, 1, 2])
    assert s.size == 3 and list(s) == [1, 2, 3]
    assert 2 in s and 0 not in s
    assert s.with_vertex(0).sorted_members == (0, 1, 2, 3)
    assert s.without_vertex(3).sorted_members == (1, 2)
    with pytest.raises(GraphValidationError):
        VertexSet([-1])
