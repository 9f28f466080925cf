"""Maximum-cohesion search.

``solve_exact`` enumerates exactly the connected subsets of the graph (each
once, grow-from-anchor), which is sound because a maximum-cohesion set is
always connected when the maximum is positive; restricting to connected
candidates loses nothing. Censuses are maintained incrementally during the
walk. The search space still explodes with n, so anything above
``EXACT_GUARD_N`` vertices is refused unless forced.

``solve_heuristic`` is multi-restart local search for graphs the exact
solver cannot touch: seed at a triangle of a most-triangle-heavy edge (or at
a caller-provided seed set), then greedily apply the best single-vertex
add/remove move by exact score delta until nothing improves.

Both solvers are deterministic given the config's rng_seed, break ties by
higher score, then smaller set, then lexicographic members, and re-derive
the reported score from scratch before returning it.

The seeded variant (``SearchConfig.seed_set``) restricts the search to
connected supersets of the given vertices; the heuristic additionally
refuses to remove them.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Optional

import numpy as np

from . import _kernels
from .errors import DomainError, SearchGuardError, TimeBudgetExceeded
from .graph import Graph, VertexSet, connected_components, is_connected
from .metric import cohesion, cohesion_of_set
from .triangles import add_vertex_delta, census, edge_triangle_count, remove_vertex_delta

__all__ = [
    "EXACT_GUARD_N",
    "SearchConfig",
    "SolverResult",
    "solve_exact",
    "solve_heuristic",
]

EXACT_GUARD_N = 32

# force= lifts the guard, but never past this: above it the kernel's int64
# cross-multiplied score comparisons could overflow (and the subset count is
# beyond hope anyway).
KERNEL_SAFE_N = 50


@dataclass(frozen=True)
class SearchConfig:
    max_subset_size: Optional[int] = None
    time_budget: Optional[float] = None
    seed_set: Optional[VertexSet] = None
    heuristic_restarts: int = 8
    rng_seed: int = 0


@dataclass
class SolverResult:
    best_set: VertexSet
    best_value: Fraction
    explored: int
    elapsed: float
    exact: bool
    found_positive: bool

    def to_json_dict(self, g: Graph) -> dict:
        """Deterministic payload. Wall time deliberately stays out of it so
        identical runs emit byte-identical JSON; it goes to stderr instead."""
        from .metric import cohesion_to_json

        ids = list(self.best_set.sorted_members)
        return {
            "exact": self.exact,
            "best_set": ids,
            "best_labels": [g.label_of(v) for v in ids],
            "size": len(ids),
            "best_value": cohesion_to_json(self.best_value),
            "found_positive": self.found_positive,
            "explored": self.explored,
        }


# candidate tuples are (value, size, members); smaller sorts better on
# size/members once values tie
def _better(cand, best) -> bool:
    if best is None:
        return True
    if cand[0] != best[0]:
        return cand[0] > best[0]
    if cand[1] != best[1]:
        return cand[1] < best[1]
    return cand[2] < best[2]


def _empty_result(elapsed: float, exact: bool, explored: int = 0) -> SolverResult:
    return SolverResult(
        best_set=VertexSet(),
        best_value=Fraction(0),
        explored=explored,
        elapsed=elapsed,
        exact=exact,
        found_positive=False,
    )


def _finalize(g, best, explored, t0, exact) -> SolverResult:
    elapsed = time.perf_counter() - t0
    if best is None:
        return _empty_result(elapsed, exact, explored)
    best_set = VertexSet(best[2])
    value = cohesion_of_set(g, best_set)
    if value != best[0]:
        raise RuntimeError(
            f"solver bookkeeping drifted: recomputed {value}, tracked {best[0]}"
        )
    return SolverResult(
        best_set=best_set,
        best_value=value,
        explored=explored,
        elapsed=elapsed,
        exact=exact,
        found_positive=value > 0,
    )


def _run_anchor(g: Graph, anchor: int, max_size: int):
    out = np.zeros(5, np.int64)
    members = np.zeros(g.n + 1, np.int32)
    _kernels.exact_anchor(g.indptr, g.indices, anchor, max_size, out, members)
    cand = None
    if out[0]:
        size = int(out[3])
        cand = (
            cohesion(size, int(out[1]), int(out[2])),
            size,
            tuple(int(v) for v in members[:size]),
        )
    return cand, int(out[4])


def solve_exact(
    g: Graph,
    cfg: Optional[SearchConfig] = None,
    *,
    force: bool = False,
    workers: int = 1,
) -> SolverResult:
    """Exhaustive search over connected subsets of size >= 3.

    Raises SearchGuardError for n > EXACT_GUARD_N without force=True, and
    TimeBudgetExceeded (carrying the best-so-far partial result) when the
    config's time budget runs out between anchor subtrees.
    """
    cfg = cfg or SearchConfig()
    if g.n > EXACT_GUARD_N and not force:
        raise SearchGuardError(
            f"exact search over n={g.n} vertices refused "
            f"(guard at {EXACT_GUARD_N}); pass force/--force to override"
        )
    if g.n > KERNEL_SAFE_N:
        raise SearchGuardError(
            f"exact search over n={g.n} vertices is not supported "
            f"(hard cap at {KERNEL_SAFE_N}: exact score comparison would "
            f"overflow int64)"
        )
    t0 = time.perf_counter()
    if cfg.seed_set is not None and cfg.seed_set.size > 0:
        return _solve_exact_seeded(g, cfg, t0)

    max_size = min(cfg.max_subset_size or g.n, g.n)
    if max_size < 3 or g.n < 3:
        return _empty_result(time.perf_counter() - t0, True)

    best = None
    explored = 0

    def over_budget():
        return (
            cfg.time_budget is not None
            and time.perf_counter() - t0 > cfg.time_budget
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_anchor, g, a, max_size) for a in range(g.n)
            ]
            results = []
            for fut in futures:
                results.append(fut.result())
                if over_budget():
                    for later in futures:
                        later.cancel()
                    break
        for cand, count in results:
            explored += count
            if cand is not None and _better(cand, best):
                best = cand
        if len(results) < g.n:
            raise TimeBudgetExceeded(
                "time budget exhausted during exact search",
                partial=_finalize(g, best, explored, t0, exact=False),
            )
    else:
        for anchor in range(g.n):
            cand, count = _run_anchor(g, anchor, max_size)
            explored += count
            if cand is not None and _better(cand, best):
                best = cand
            if anchor + 1 < g.n and over_budget():
                raise TimeBudgetExceeded(
                    "time budget exhausted during exact search",
                    partial=_finalize(g, best, explored, t0, exact=False),
                )
    return _finalize(g, best, explored, t0, exact=True)


def _solve_exact_seeded(g: Graph, cfg: SearchConfig, t0: float) -> SolverResult:
    """Exhaustive search over connected supersets of cfg.seed_set.

    Same take-now-or-never growth scheme as the anchored kernel, but rooted
    at the seed and without the min-vertex restriction. Pure Python: the
    seeded variant is a desk-scale feature.
    """
    seed = VertexSet.coerce(cfg.seed_set)
    seed.validate_for(g)
    comps = connected_components(g)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    spanned = {comp_of[v] for v in seed}
    if len(spanned) > 1:
        raise DomainError(
            "seed set spans multiple connected components; "
            "no connected superset exists"
        )
    max_size = min(cfg.max_subset_size or g.n, g.n)
    if max_size < max(3, seed.size):
        return _empty_result(time.perf_counter() - t0, True)

    seed_connected = is_connected(g, seed)
    members = set(seed)
    claimed = bytearray(g.n)
    for v in seed:
        claimed[v] = 1
    ext0 = sorted(
        {int(u) for v in seed for u in g.neighbors(v)} - members
    )
    for u in ext0:
        claimed[u] = 1

    c0 = census(g, seed)
    state = {"i": c0.inside, "o": c0.outbound, "explored": 0, "best": None}

    def evaluate():
        size = len(members)
        if size < 3:
            return
        if not seed_connected and not is_connected(g, members):
            return
        state["explored"] += 1
        cand = (
            cohesion(size, state["i"], state["o"]),
            size,
            tuple(sorted(members)),
        )
        if _better(cand, state["best"]):
            state["best"] = cand

    def grow(ext):
        for idx, w in enumerate(ext):
            d_within, d_cross = _pair_counts(g, members, w)
            state["i"] += d_within
            state["o"] += d_cross - d_within
            members.add(w)
            fresh = [int(u) for u in g.neighbors(w) if not claimed[u]]
            for u in fresh:
                claimed[u] = 1
            if len(members) <= max_size:
                evaluate()
            if len(members) < max_size:
                grow(ext[idx + 1:] + fresh)
            for u in fresh:
                claimed[u] = 0
            members.discard(w)
            state["i"] -= d_within
            state["o"] -= d_cross - d_within

    evaluate()
    grow(ext0)
    return _finalize(g, state["best"], state["explored"], t0, exact=True)


def _pair_counts(g: Graph, members: set, w: int):
    """(edges within S∩N(w), edges S∩N(w) -> N(w)∖S∖{w}) for the add delta."""
    nbrs = g.neighbors(w)
    nbr_set = set(int(x) for x in nbrs)
    within2 = 0
    cross = 0
    for a in nbrs:
        a = int(a)
        if a in members:
            for b in g.neighbors(a):
                b = int(b)
                if b in nbr_set:
                    if b in members:
                        within2 += 1
                    else:
                        cross += 1
    return within2 // 2, cross


def _lex_smallest_connected_triple(g: Graph):
    """First {a,b,c} (set-sorted lex order) whose induced subgraph is connected."""
    for a in range(g.n):
        na = set(int(x) for x in g.neighbors(a))
        for b in range(a + 1, g.n):
            ab = b in na
            nb = set(int(x) for x in g.neighbors(b))
            if ab:
                pool = {c for c in na | nb if c > b}
            else:
                pool = {c for c in na & nb if c > b}
            if pool:
                return (a, b, min(pool))
    return None


def solve_heuristic(g: Graph, cfg: Optional[SearchConfig] = None) -> SolverResult:
    """Multi-restart greedy local search; exact=False.

    Restart 0 starts from a triangle on the edge in the most triangles
    (deterministic); later restarts start from rng-chosen triangles. With a
    seed set there is exactly one start (the seed) and its members are never
    removed. Moves: best strictly-improving single-vertex add (neighbors of
    S) or remove (keeping S connected and >= 3 vertices); add beats remove
    and lower vertex id wins among equal-value moves.
    """
    cfg = cfg or SearchConfig()
    rng = Random(cfg.rng_seed)
    t0 = time.perf_counter()
    seed = cfg.seed_set if cfg.seed_set is not None and cfg.seed_set.size else None
    if seed is not None:
        seed.validate_for(g)

    tri_edges = []
    for u, v in g.edges():
        t = edge_triangle_count(g, u, v)
        if t > 0:
            tri_edges.append((t, u, v))

    if seed is None and not tri_edges:
        # triangle-free: report the canonical zero-score set with the flag down
        triple = _lex_smallest_connected_triple(g)
        best = (
            (Fraction(0), 3, triple) if triple is not None else None
        )
        return _finalize(g, best, 0, t0, exact=False)

    max_size = min(cfg.max_subset_size or g.n, g.n)
    restarts = 1 if seed is not None else max(1, cfg.heuristic_restarts)
    best = None
    explored = 0

    for r in range(restarts):
        if seed is not None:
            start = set(seed)
        else:
            if r == 0:
                t, u, v = max(tri_edges, key=lambda e: (e[0], -e[1], -e[2]))
            else:
                t, u, v = tri_edges[rng.randrange(len(tri_edges))]
            common = sorted(
                int(w)
                for w in np.intersect1d(
                    g.neighbors(u), g.neighbors(v), assume_unique=True
                )
            )
            w = common[0] if r == 0 else common[rng.randrange(len(common))]
            start = {u, v, w}

        cur_set = VertexSet(start)
        cur_census = census(g, cur_set)
        cur_value = cohesion(cur_set.size, cur_census.inside, cur_census.outbound)
        explored += 1

        while True:
            move = None  # (value, kind, v, delta); kind 0 = add, 1 = remove
            in_nbrs = sorted(
                {int(u) for v in cur_set for u in g.neighbors(v)}
                - cur_set.members
            )
            if cur_set.size < max_size:
                for v in in_nbrs:
                    d = add_vertex_delta(g, cur_set, cur_census, v)
                    val = cohesion(
                        cur_set.size + 1,
                        cur_census.inside + d.d_inside,
                        cur_census.outbound + d.d_outbound,
                    )
                    explored += 1
                    if val > cur_value and (move is None or val > move[0]):
                        move = (val, 0, v, d)
            if cur_set.size > 3:
                removable = [
                    v
                    for v in cur_set.sorted_members
                    if (seed is None or v not in seed)
                ]
                for v in removable:
                    if not is_connected(g, cur_set.without_vertex(v)):
                        continue
                    d = remove_vertex_delta(g, cur_set, cur_census, v)
                    val = cohesion(
                        cur_set.size - 1,
                        cur_census.inside + d.d_inside,
                        cur_census.outbound + d.d_outbound,
                    )
                    explored += 1
                    if val > cur_value and (move is None or val > move[0]):
                        move = (val, 1, v, d)
            if move is None:
                break
            val, kind, v, d = move
            cur_census = cur_census.apply(d)
            cur_set = (
                cur_set.with_vertex(v) if kind == 0 else cur_set.without_vertex(v)
            )
            cur_value = val

        cand = (cur_value, cur_set.size, cur_set.sorted_members)
        if _better(cand, best):
            best = cand
        if (
            cfg.time_budget is not None
            and time.perf_counter() - t0 > cfg.time_budget
        ):
            break

    return _finalize(g, best, explored, t0, exact=False)
