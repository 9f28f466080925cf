import itertools
import json
from fractions import Fraction
from random import Random

import pytest

from cohesion_lab.errors import DomainError, SearchGuardError, TimeBudgetExceeded
from cohesion_lab.graph import Graph, VertexSet, is_connected
from cohesion_lab.harness import all_graphs, random_graph, subset_score_tables
from cohesion_lab.metric import cohesion_of_set
from cohesion_lab.solvers import (
    SearchConfig,
    SolverResult,
    solve_exact,
    solve_heuristic,
)

from conftest import complete


def oracle_best(g, superset_of=frozenset(), connected_only=True):
    """All-subsets brute force with the solver's tie-break. Size >= 3 only."""
    best = None
    for r in range(max(3, len(superset_of)), g.n + 1):
        for combo in itertools.combinations(range(g.n), r):
            s = set(combo)
            if not superset_of <= s:
                continue
            if connected_only and not is_connected(g, s):
                continue
            cand = (cohesion_of_set(g, s), len(s), tuple(sorted(s)))
            if (
                best is None
                or cand[0] > best[0]
                or (cand[0] == best[0] and cand[1] < best[1])
                or (cand[0] == best[0] and cand[1] == best[1] and cand[2] < best[2])
            ):
                best = cand
    return best


def oracle_max_over_all_subsets(g):
    """Maximum score over ALL 2^n subsets via the naive-triangle tables."""
    _, _, num, den = subset_score_tables(g)
    best = Fraction(0)
    for m in range(1 << g.n):
        v = Fraction(int(num[m]), int(den[m]))
        if v > best:
            best = v
    return best


def test_k5_is_its_own_best(two_k5_bridge):
    r = solve_exact(complete(5))
    assert r.best_value == 1 and r.best_set.sorted_members == (0, 1, 2, 3, 4)
    assert r.exact and r.found_positive


def test_triangle_free_returns_smallest_triple_with_flag(c6):
    r = solve_exact(c6)
    assert r.best_value == 0
    assert r.best_set.sorted_members == (0, 1, 2)
    assert not r.found_positive


def test_no_connected_triple_at_all():
    matching = Graph.from_edges(4, [(0, 1), (2, 3)])
    r = solve_exact(matching)
    assert r.best_value == 0 and r.best_set.size == 0 and not r.found_positive


def test_exact_equals_oracle_all_small_graphs():
    for n in range(6):
        for g in all_graphs(n):
            r = solve_exact(g)
            assert r.best_value == oracle_max_over_all_subsets(g)
            want = oracle_best(g)
            if want is None:
                assert r.best_set.size == 0
            else:
                assert (r.best_value, r.best_set.size, r.best_set.sorted_members) == want


def test_exact_equals_oracle_random():
    rng = Random(61)
    for t in range(200):
        g = random_graph(rng.randint(4, 7), (0.3, 0.5, 0.7)[t % 3], rng)
        r = solve_exact(g)
        assert r.best_value == oracle_max_over_all_subsets(g)
        assert is_connected(g, r.best_set)
        want = oracle_best(g)
        if want is not None:
            assert (r.best_value, r.best_set.size, r.best_set.sorted_members) == want


def test_explored_counts_connected_subsets():
    rng = Random(67)
    for _ in range(30):
        g = random_graph(rng.randint(3, 7), 0.5, rng)
        want = sum(
            1
            for r in range(3, g.n + 1)
            for combo in itertools.combinations(range(g.n), r)
            if is_connected(g, combo)
        )
        assert solve_exact(g).explored == want


def test_max_subset_size_cap():
    g = complete(6)
    r = solve_exact(g, SearchConfig(max_subset_size=4))
    assert r.best_set.size <= 4
    # K4 inside K6: i=4, o=6*2=12 -> 16/(4*16) = 1/4
    assert r.best_value == Fraction(1, 4)


def test_determinism_and_worker_merge(two_k5_bridge):
    a = solve_exact(two_k5_bridge, SearchConfig(rng_seed=1))
    b = solve_exact(two_k5_bridge, SearchConfig(rng_seed=1))
    c = solve_exact(two_k5_bridge, SearchConfig(rng_seed=1), workers=4)
    for other in (b, c):
        assert (a.best_value, a.best_set, a.explored, a.exact) == (
            other.best_value,
            other.best_set,
            other.explored,
            other.exact,
        )
    payload = json.dumps(a.to_json_dict(two_k5_bridge))
    assert payload == json.dumps(b.to_json_dict(two_k5_bridge))
    assert "elapsed" not in payload


def test_guard_and_force():
    path = Graph.from_edges(33, [(i, i + 1) for i in range(32)])
    with pytest.raises(SearchGuardError, match="guard"):
        solve_exact(path)
    r = solve_exact(path, force=True)
    assert r.best_value == 0 and r.best_set.sorted_members == (0, 1, 2)


def test_hard_cap_refuses_even_forced():
    path = Graph.from_edges(60, [(i, i + 1) for i in range(59)])
    with pytest.raises(SearchGuardError, match="hard cap"):
        solve_exact(path, force=True)


def test_time_budget_partial_result(two_k5_bridge):
    with pytest.raises(TimeBudgetExceeded) as exc:
        solve_exact(two_k5_bridge, SearchConfig(time_budget=0.0))
    partial = exc.value.partial
    assert isinstance(partial, SolverResult)
    assert not partial.exact


def test_seeded_matches_oracle():
    rng = Random(71)
    from cohesion_lab.graph import connected_components

    for t in range(120):
        g = random_graph(rng.randint(4, 6), 0.55, rng)
        comp = connected_components(g)[0]
        seed = frozenset(rng.sample(comp, min(2, len(comp))))
        r = solve_exact(g, SearchConfig(seed_set=VertexSet(seed)))
        want = oracle_best(g, superset_of=seed)
        if want is None:
            assert r.best_set.size == 0
        else:
            assert (r.best_value, r.best_set.size, r.best_set.sorted_members) == want
        if r.best_set.size:
            assert seed <= r.best_set.members


def test_seeded_across_components_rejected():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    with pytest.raises(DomainError, match="components"):
        solve_exact(g, SearchConfig(seed_set=VertexSet([0, 5])))


def test_heuristic_finds_clique(two_k5_bridge):
    r = solve_heuristic(complete(5))
    assert r.best_value == 1 and not r.exact
    r2 = solve_heuristic(two_k5_bridge)
    assert r2.best_value == 1
    assert r2.best_set.sorted_members in ((0, 1, 2, 3, 4), (5, 6, 7, 8, 9))


def test_heuristic_triangle_free_flag(c6):
    r = solve_heuristic(c6)
    assert r.best_value == 0 and not r.found_positive
    assert r.best_set.sorted_members == (0, 1, 2)


def test_heuristic_never_beats_exact_and_is_sound():
    rng = Random(83)
    gaps = []
    for t in range(120):
        g = random_graph(rng.randint(4, 7), (0.3, 0.5, 0.7)[t % 3], rng)
        he = solve_heuristic(g, SearchConfig(rng_seed=t, heuristic_restarts=4))
        ex = solve_exact(g)
        assert he.best_value <= ex.best_value
        assert he.best_value == cohesion_of_set(g, he.best_set) or he.best_set.size == 0
        gaps.append(ex.best_value - he.best_value)
    hit = sum(1 for gap in gaps if gap == 0)
    print(f"\nheuristic matched exact on {hit}/{len(gaps)} random graphs; "
          f"max gap {max(gaps)}")


def test_heuristic_respects_seed_members(two_k5_bridge):
    seed = VertexSet([4, 5])  # the bridge: a bad set the heuristic may not shed
    r = solve_heuristic(two_k5_bridge, SearchConfig(seed_set=seed))
    assert {4, 5} <= r.best_set.members
    assert r.best_value < 1


def test_heuristic_determinism():
    rng = Random(5)
    g = random_graph(12, 0.4, rng)
    a = solve_heuristic(g, SearchConfig(rng_seed=9, heuristic_restarts=6))
    b = solve_heuristic(g, SearchConfig(rng_seed=9, heuristic_restarts=6))
    assert (a.best_value, a.best_set, a.explored) == (b.best_value, b.best_set, b.explored)
