"""Brute-force oracles and property suites.

Everything here exists to check the rest of the library -- and the claims
it is built on -- by blunt force at desk scale. The oracles deliberately
avoid the optimized code paths: ``naive_census`` walks all C(n,3) vertex
triples with its own edge set, and the subset score tables are built from
that same naive triangle listing, so a kernel bug cannot vouch for itself.

Properties checked:

* census_oracle -- optimized census == naive census, field by field.
* lemma1 -- for disjoint, mutually non-adjacent S1, S2 (both >= 2 vertices):
  score(S1) <= score(S1 ∪ S2) implies score(S2) > score(S1 ∪ S2).
  Pairs whose union contains no triangle at all are counted separately as
  degenerate, not as violations: with every score 0 the implication is
  falsified trivially (0 <= 0 holds, 0 > 0 fails) while the statement's own
  derivation needs at least one triangle in the union, so an all-zero pair
  carries no information about the claim.
* theorem1 -- every maximum-score subset over ALL 2^n subsets is connected
  whenever the maximum is positive (with an all-zero score landscape every
  subset ties at the maximum, disconnected ones included, so the claim is
  meaningful only for a positive maximum), and the connected-only exact
  solver reproduces the all-subsets maximum value either way.
* theorem3 -- clique existence in g versus existence of a connected set
  scoring >= lambda in the transformed graph, at a given gadget size.
  A spurious cohesive set without a clique is classified "gadget-too-small";
  a missing cohesive set despite a clique would be "logic-failure" and must
  never occur since the forward witness is gadget-size independent.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from random import Random
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import DomainError, UsageError
from .graph import Graph, VertexSet, VertexSetLike, is_connected
from .metric import cohesion_of_set, cohesion_to_json
from .reduction import reduce_clique, forward_witness
from .solvers import SearchConfig, solve_exact
from .triangles import TriangleCensus, census

__all__ = [
    "NAIVE_GUARD_N",
    "PropertyReport",
    "naive_census",
    "naive_triangles",
    "subset_score_tables",
    "check_lemma1",
    "check_theorem1",
    "check_theorem3",
    "gadget_size_frontier",
    "random_graph",
    "random_connected_graph",
    "all_graphs",
    "run_suite",
    "SUITE_NAMES",
]

NAIVE_GUARD_N = 500

# transformed graphs above this are too big for full connected-subset search
THEOREM3_ENUM_CAP = 26


@dataclass
class PropertyReport:
    property_name: str
    instances_checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "property_name": self.property_name,
            "instances_checked": self.instances_checked,
            "failures": self.failures,
            "passed": self.passed,
            "details": self.details,
        }

    def merge(self, other: "PropertyReport") -> None:
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)
        for key, val in other.details.items():
            if isinstance(val, int) and isinstance(self.details.get(key), int):
                self.details[key] += val
            else:
                self.details.setdefault(key, val)


def naive_triangles(g: Graph) -> list:
    """All triangles of g by the cubic triple scan. Oracle-side only."""
    if g.n > NAIVE_GUARD_N:
        raise DomainError(
            f"naive triangle scan refused for n={g.n} (guard {NAIVE_GUARD_N})"
        )
    edges = set(g.edges())

    def adj(a, b):
        return (a, b) in edges

    out = []
    for a, b, c in itertools.combinations(range(g.n), 3):
        if adj(a, b) and adj(a, c) and adj(b, c):
            out.append((a, b, c))
    return out


def naive_census(g: Graph, s: VertexSetLike) -> TriangleCensus:
    """Cubic reference census. The optimized engine is validated against this."""
    s = VertexSet.coerce(s)
    s.validate_for(g)
    buckets = [0, 0, 0, 0]
    members = s.members
    for a, b, c in naive_triangles(g):
        buckets[(a in members) + (b in members) + (c in members)] += 1
    return TriangleCensus(
        inside=buckets[3],
        outbound=buckets[2],
        touching_one=buckets[1],
        outside=buckets[0],
    )


def subset_score_tables(g: Graph):
    """Per-subset inside/outbound counts for all 2^n bitmask subsets.

    Built from the naive triangle listing. Returns (i_arr, o_arr, num, den)
    where num/den encode the exact score i^2 / (C(|S|,3)(i+o)) with the
    0-score convention folded in (den = 1 whenever i = 0), safe for int64
    cross-multiplied comparisons up to n = 10.
    """
    n = g.n
    if n > 10:
        raise DomainError("subset tables are limited to n <= 10")
    size = 1 << n
    masks = np.arange(size, dtype=np.uint32)
    i_arr = np.zeros(size, np.int64)
    o_arr = np.zeros(size, np.int64)
    for a, b, c in naive_triangles(g):
        tm = np.uint32((1 << a) | (1 << b) | (1 << c))
        cnt = np.bitwise_count(masks & tm)
        i_arr += cnt == 3
        o_arr += cnt == 2
    sizes = np.bitwise_count(masks).astype(np.int64)
    c3 = np.array([comb(int(t), 3) for t in range(n + 1)], np.int64)
    num = i_arr * i_arr
    den = np.where(i_arr > 0, c3[sizes] * (i_arr + o_arr), 1)
    return i_arr, o_arr, num, den


def _mask_ids(mask: int, n: int) -> list:
    return [v for v in range(n) if (mask >> v) & 1]


def check_lemma1(g: Graph) -> PropertyReport:
    """Scan all qualifying (S1, S2) pairs of g for implication violations."""
    if g.n > 10:
        raise DomainError("lemma1 check enumerates pairs; limited to n <= 10")
    report = PropertyReport("lemma1", details={"degenerate_skipped": 0, "graphs": 1})
    n = g.n
    if n < 4:
        return report
    i_arr, _, num, den = subset_score_tables(g)
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    sizes = np.bitwise_count(masks.astype(np.uint32)).astype(np.int64)
    nbr_reach = np.zeros(size, np.int64)
    vertex_reach = [0] * n
    for v in range(n):
        r = 0
        for u in g.neighbors(v):
            r |= 1 << int(u)
        vertex_reach[v] = r
    for m in range(1, size):
        low = (m & -m).bit_length() - 1
        nbr_reach[m] = nbr_reach[m & (m - 1)] | vertex_reach[low]
    full = size - 1

    big = sizes >= 2
    for s1 in range(1, size):
        if sizes[s1] < 2:
            continue
        allowed = full & ~(s1 | int(nbr_reach[s1]))
        cand = masks[big & ((masks & ~allowed) == 0)]
        if cand.size == 0:
            continue
        union = cand | s1
        degenerate = i_arr[union] == 0
        premise = num[s1] * den[union] <= num[union] * den[s1]
        conclusion = num[cand] * den[union] > num[union] * den[cand]
        viol = premise & ~conclusion & ~degenerate
        report.instances_checked += int(np.count_nonzero(~degenerate))
        report.details["degenerate_skipped"] += int(np.count_nonzero(degenerate))
        if viol.any():
            for s2 in cand[viol][:5]:
                s2 = int(s2)
                u = s1 | s2
                report.failures.append(
                    {
                        "property": "lemma1",
                        "s1": _mask_ids(s1, n),
                        "s2": _mask_ids(s2, n),
                        "score_s1": cohesion_to_json(Fraction(int(num[s1]), int(den[s1]))),
                        "score_s2": cohesion_to_json(Fraction(int(num[s2]), int(den[s2]))),
                        "score_union": cohesion_to_json(Fraction(int(num[u]), int(den[u]))),
                        "graph": g.to_edge_list_text(),
                    }
                )
    return report


def check_theorem1(g: Graph, rng_seed: int = 0) -> PropertyReport:
    """All-subsets argmax of the score must be connected when positive, and
    the connected-only exact solver must reproduce the maximum value."""
    if g.n > 8:
        raise DomainError("theorem1 check scans all subsets; limited to n <= 8")
    report = PropertyReport(
        "theorem1", details={"graphs": 1, "vacuous_zero_max": 0}
    )
    n = g.n
    _, _, num, den = subset_score_tables(g)
    size = 1 << n
    best_num, best_den = 0, 1
    for m in range(size):
        if num[m] * best_den > best_num * den[m]:
            best_num, best_den = int(num[m]), int(den[m])
    vmax = Fraction(best_num, best_den)
    ties = [
        m
        for m in range(size)
        if num[m] * best_den == best_num * den[m]
    ]
    report.instances_checked += size
    if vmax > 0:
        for m in ties:
            if not is_connected(g, _mask_ids(m, n)):
                report.failures.append(
                    {
                        "property": "theorem1",
                        "kind": "disconnected-argmax",
                        "subset": _mask_ids(m, n),
                        "score": cohesion_to_json(vmax),
                        "graph": g.to_edge_list_text(),
                    }
                )
    else:
        report.details["vacuous_zero_max"] += 1

    solver_value = solve_exact(g, SearchConfig(rng_seed=rng_seed)).best_value
    if solver_value != vmax:
        report.failures.append(
            {
                "property": "theorem1",
                "kind": "solver-maximum-mismatch",
                "solver": cohesion_to_json(solver_value),
                "oracle": cohesion_to_json(vmax),
                "graph": g.to_edge_list_text(),
            }
        )
    return report


def _has_clique(g: Graph, k: int) -> Optional[tuple]:
    """Lexicographically first k-clique of g, or None. Brute force."""
    rows = [set(int(x) for x in g.neighbors(v)) for v in range(g.n)]
    for combo in itertools.combinations(range(g.n), k):
        if all(b in rows[a] for a, b in itertools.combinations(combo, 2)):
            return combo
    return None


def check_theorem3(g: Graph, k: int, gadget_size: int) -> PropertyReport:
    """Does (clique of size k in g) iff (connected set scoring >= lambda in
    the transformed graph) hold at this gadget size?

    The cohesive side is decided by full connected-subset enumeration of the
    materialized instance, so the transformed graph must stay small (cap
    THEOREM3_ENUM_CAP vertices).
    """
    if g.n > 6:
        raise DomainError("theorem3 check is limited to n <= 6 originals")
    inst = reduce_clique(g, k, gadget_size=gadget_size, cap=THEOREM3_ENUM_CAP)
    if not inst.materialized:
        raise DomainError(
            f"transformed graph has {inst.transformed_vertices} vertices; "
            f"full enumeration is capped at {THEOREM3_ENUM_CAP}, choose a "
            f"smaller gadget"
        )
    report = PropertyReport(
        f"theorem3[k={k},gadget={gadget_size}]",
        details={"lambda": cohesion_to_json(inst.lam), "gadget_size": gadget_size},
    )
    clique = _has_clique(g, k)
    result = solve_exact(inst.transformed, force=True)
    cohesive = result.best_value >= inst.lam
    report.instances_checked += 1
    report.details["clique_exists"] = clique is not None
    report.details["cohesive_exists"] = cohesive
    report.details["max_score"] = cohesion_to_json(result.best_value)
    report.details["max_score_set"] = list(result.best_set.sorted_members)

    if clique is not None:
        # forward direction: the clique's image must reach lambda exactly
        image, value = forward_witness(inst, clique)
        report.details["forward_witness"] = list(image.sorted_members)
        if value != inst.lam or not cohesive:
            report.failures.append(
                {
                    "property": "theorem3",
                    "classification": "logic-failure",
                    "detail": "clique exists but no connected set reaches lambda",
                    "graph": g.to_edge_list_text(),
                }
            )
            report.details["classification"] = "logic-failure"
        else:
            report.details["classification"] = "ok"
    elif cohesive:
        report.failures.append(
            {
                "property": "theorem3",
                "classification": "gadget-too-small",
                "detail": (
                    f"no {k}-clique in the original graph, yet "
                    f"{list(result.best_set.sorted_members)} scores "
                    f"{result.best_value} >= lambda {inst.lam}"
                ),
                "graph": g.to_edge_list_text(),
            }
        )
        report.details["classification"] = "gadget-too-small"
    else:
        report.details["classification"] = "ok"

    # the construction's poison analysis, made concrete: score of one whole
    # gadget block together with its two attachment vertices
    if inst.non_edges:
        u, v = inst.non_edges[0]
        base = inst.original_n
        block = VertexSet([u, v] + list(range(base, base + gadget_size)))
        block_score = cohesion_of_set(inst.transformed, block)
        bound = Fraction(1, 2 * comb(inst.original_n, 3) ** 2)
        report.details["gadget_block_score"] = cohesion_to_json(block_score)
        report.details["claimed_poison_bound"] = cohesion_to_json(bound)
        report.details["poison_bound_holds"] = block_score <= bound
    return report


def gadget_size_frontier(g: Graph, k: int, sizes: Iterable[int]) -> dict:
    """Sweep gadget sizes and record where (if anywhere) the iff holds.

    Returns details per size plus ``confirming_size`` (first size whose
    check passes, None if none in the sweep) and ``forward_ok`` (the
    clique-side direction never failed at any size).
    """
    per_size = []
    confirming = None
    forward_ok = True
    for s in sizes:
        rep = check_theorem3(g, k, s)
        cls = rep.details.get("classification")
        per_size.append(
            {
                "gadget_size": s,
                "passed": rep.passed,
                "classification": cls,
                "max_score": rep.details.get("max_score"),
            }
        )
        if cls == "logic-failure":
            forward_ok = False
        if rep.passed and confirming is None:
            confirming = s
    return {
        "k": k,
        "sizes": per_size,
        "confirming_size": confirming,
        "forward_ok": forward_ok,
    }


# -- graph sources -------------------------------------------------------


def random_graph(n: int, p: float, rng: Random) -> Graph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, p: float, rng: Random, max_tries: int = 10_000) -> Graph:
    for _ in range(max_tries):
        g = random_graph(n, p, rng)
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected G({n},{p}) after {max_tries} tries")


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on n vertices, in edge-bitmask order."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(
            n, [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
        )


_PS = (0.3, 0.5, 0.7)


def _map_ordered(fn, items, workers: int):
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- suites ---------------------------------------------------------------


def suite_census_oracle(
    trials: int = 200,
    rng_seed: int = 0,
    exhaustive_n: int = 4,
    random_max_n: int = 12,
    workers: int = 1,
) -> PropertyReport:
    """Optimized census == naive census: exhaustively on small graphs over
    all subsets, then on random (graph, subset) pairs."""
    report = PropertyReport(
        "census_oracle", details={"exhaustive_n": exhaustive_n}
    )

    def compare(g, s):
        got = census(g, s)
        want = naive_census(g, s)
        report.instances_checked += 1
        if got != want:
            report.failures.append(
                {
                    "property": "census_oracle",
                    "subset": sorted(s),
                    "optimized": vars(got),
                    "naive": vars(want),
                    "graph": g.to_edge_list_text(),
                }
            )

    for n in range(exhaustive_n + 1):
        for g in all_graphs(n):
            for bits in range(1 << n):
                compare(g, _mask_ids(bits, n))

    rng = Random(rng_seed)
    for t in range(trials):
        n = rng.randint(1, random_max_n)
        g = random_graph(n, _PS[t % len(_PS)], rng)
        s = [v for v in range(n) if rng.random() < 0.5]
        compare(g, s)
    return report


def suite_lemma1(
    trials: int = 200,
    rng_seed: int = 0,
    exhaustive_n: int = 4,
    random_max_n: int = 10,
    workers: int = 1,
) -> PropertyReport:
    report = PropertyReport("lemma1", details={"degenerate_skipped": 0, "graphs": 0})
    graphs = []
    for n in range(4, exhaustive_n + 1):
        graphs.extend(all_graphs(n))
    rng = Random(rng_seed)
    for t in range(trials):
        n = rng.randint(4, random_max_n)
        graphs.append(random_graph(n, _PS[t % len(_PS)], rng))
    for sub in _map_ordered(check_lemma1, graphs, workers):
        report.merge(sub)
    return report


def suite_theorem1(
    trials: int = 300,
    rng_seed: int = 0,
    random_max_n: int = 8,
    workers: int = 1,
) -> PropertyReport:
    report = PropertyReport(
        "theorem1", details={"graphs": 0, "vacuous_zero_max": 0}
    )
    rng = Random(rng_seed)
    graphs = []
    for t in range(trials):
        n = rng.randint(4, random_max_n)
        graphs.append(random_graph(n, _PS[t % len(_PS)], rng))
    for sub in _map_ordered(
        lambda g: check_theorem1(g, rng_seed=rng_seed), graphs, workers
    ):
        report.merge(sub)
    return report


def suite_theorem3(
    trials: int = 0,
    rng_seed: int = 0,
    workers: int = 1,
) -> PropertyReport:
    """Desk-scale iff check on the two canonical instances.

    K4-minus-an-edge (k=3) is a yes-instance: both sides hold at every
    gadget size. The 5-cycle (k=3) is a no-instance: the sweep looks for a
    gadget size whose transformed graph carries no connected set scoring
    >= 1/7. The sweep records, honestly, that no such size exists in range:
    a gadget block plus its two attachment vertices is a near-isolated
    clique whose score grows toward 1 with the gadget, so the reverse
    direction stays broken no matter the size (see README).
    """
    report = PropertyReport("theorem3", details={})
    k4me = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])

    front_yes = gadget_size_frontier(k4me, 3, range(2, 9))
    report.details["k4_minus_edge"] = front_yes
    report.instances_checked += len(front_yes["sizes"])
    if not front_yes["forward_ok"]:
        report.failures.append(
            {"property": "theorem3", "classification": "logic-failure",
             "detail": "forward direction failed on K4-minus-edge"}
        )
    if front_yes["confirming_size"] is None:
        report.failures.append(
            {"property": "theorem3", "classification": "gadget-too-small",
             "detail": "no confirming gadget size for K4-minus-edge"}
        )

    c5_sizes = [s for s in range(2, 7) if 5 + 5 * s <= THEOREM3_ENUM_CAP]
    front_no = gadget_size_frontier(c5, 3, c5_sizes)
    report.details["c5"] = front_no
    report.instances_checked += len(front_no["sizes"])
    if not front_no["forward_ok"]:
        report.failures.append(
            {"property": "theorem3", "classification": "logic-failure",
             "detail": "forward direction failed on C5"}
        )
    if front_no["confirming_size"] is None:
        report.failures.append(
            {"property": "theorem3", "classification": "gadget-too-small",
             "detail": (
                 "no gadget size in the sweep eliminates spurious cohesive "
                 "sets in the C5 instance (gadget cliques score near 1)"
             )}
        )
    return report


_SUITES = {
    "census_oracle": suite_census_oracle,
    "lemma1": suite_lemma1,
    "theorem1": suite_theorem1,
    "theorem3": suite_theorem3,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(
    names: Iterable[str],
    trials: int = 200,
    rng_seed: int = 0,
    workers: int = 1,
) -> list:
    """Run the named property suites; deterministic for a fixed rng_seed."""
    reports = []
    for name in names:
        fn = _SUITES.get(name)
        if fn is None:
            raise UsageError(
                f"unknown property suite {name!r}; known: {', '.join(SUITE_NAMES)}"
            )
        reports.append(fn(trials=trials, rng_seed=rng_seed, workers=workers))
    return reports
