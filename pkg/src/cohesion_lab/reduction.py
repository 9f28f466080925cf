"""Clique-instance transformer and its witnesses.

``reduce_clique(g, k)`` turns a clique-search instance (G, k) into a
threshold instance (G', lambda): every non-adjacent pair (u, v) of G gets
the edge uv plus a fresh clique of ``gadget_size`` vertices fully joined to
both u and v. The completed original core makes any true k-clique of G score
exactly lambda = C(k,3) / (C(k,3) + C(k,2)(n-k)) in G', while the poison
edges are meant to drag every cheating set below it.

The canonical gadget size is 2*C(n,3)^4, which is far too large to build
for anything but toy n, so instances are materialized only while the
transformed vertex count stays under a cap; beyond it you get a virtual
instance carrying the closed-form vertex/edge counts. Overriding
``gadget_size`` gives desk-scale instances the verification harness can
brute-force; the harness maps where small gadgets break the reduction's
reverse direction (see ``harness.check_theorem3``).

Layout of a materialized instance: originals keep their ids 0..n-1 (the
embedding is the identity), gadget block e for the e-th non-edge occupies
ids n + e*s .. n + (e+1)*s - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from .errors import (
    DomainError,
    UnsupportedInstanceError,
    WitnessError,
)
from .graph import Graph, VertexSet, VertexSetLike, connected_components, is_connected
from .metric import cohesion_of_set, cohesion_to_json, lambda_threshold
from .triangles import census

__all__ = [
    "DEFAULT_MATERIALIZATION_CAP",
    "ReductionInstance",
    "default_gadget_size",
    "reduce_clique",
    "verify_instance",
    "forward_witness",
    "backward_witness",
    "instance_to_json",
]

DEFAULT_MATERIALIZATION_CAP = 10_000


def default_gadget_size(n: int) -> int:
    """Canonical gadget clique size, 2*C(n,3)^4. Astronomical beyond toy n."""
    return 2 * comb(n, 3) ** 4


# small per-size arrays recur across the exhaustive sweeps; cache them
@lru_cache(maxsize=256)
def _triu_pairs(k: int):
    iu, iv = np.triu_indices(k, k=1)
    iu = iu.astype(np.int64)
    iv = iv.astype(np.int64)
    iu.setflags(write=False)
    iv.setflags(write=False)
    return iu, iv


@lru_cache(maxsize=64)
def _default_labels(n: int):
    return tuple(str(i) for i in range(n))


@lru_cache(maxsize=64)
def _peers_without_self(s: int):
    idx = np.arange(s)
    peers = np.tile(idx, (s, 1))[~np.eye(s, dtype=bool)].reshape(s, s - 1)
    peers.setflags(write=False)
    return peers


@dataclass(frozen=True)
class ReductionInstance:
    original_n: int
    k: int
    lam: Fraction
    gadget_size: int
    non_edges: tuple
    embedding: tuple
    transformed_vertices: int
    transformed_edges: int
    transformed: Optional[Graph]

    @property
    def materialized(self) -> bool:
        return self.transformed is not None

    def original_has_edge(self, u: int, v: int) -> bool:
        if u == v or not (0 <= u < self.original_n and 0 <= v < self.original_n):
            return False
        key = (u, v) if u < v else (v, u)
        return key not in self._non_edge_set()

    def _non_edge_set(self):
        # tiny cache; frozen dataclass, so stash on the instance dict-free way
        cached = getattr(self, "_ne_cache", None)
        if cached is None:
            cached = frozenset(self.non_edges)
            object.__setattr__(self, "_ne_cache", cached)
        return cached


# frozen dataclass needs the cache slot declared via __setattr__ above;
# dataclass without __slots__ keeps a __dict__, so this is fine.


def _complement_pairs(g: Graph):
    out = []
    for u in range(g.n):
        nbrs = set(int(x) for x in g.neighbors(u))
        for v in range(u + 1, g.n):
            if v not in nbrs:
                out.append((u, v))
    return tuple(out)


def _gadget_labels(g: Graph, count: int):
    if count == 0:
        return g.labels
    if g.labels is None:
        base = _default_labels(g.n)
        # synthesized labels are bare digits, never "w<j>": no collisions
        return base + tuple(f"w{j}" for j in range(count))
    base = g.labels
    taken = set(base)
    fresh = []
    for j in range(count):
        t = f"w{j}"
        while t in taken:
            t += "_"
        taken.add(t)
        fresh.append(t)
    return base + tuple(fresh)


def _materialize(g: Graph, non_edges, s: int) -> Graph:
    n = g.n
    n_prime = n + len(non_edges) * s
    iu, iv = _triu_pairs(n)
    src = [iu]
    dst = [iv]
    tu, tv = _triu_pairs(s)
    for e, (u, v) in enumerate(non_edges):
        base = n + e * s
        src.append(tu + base)
        dst.append(tv + base)
        gadget = np.arange(base, base + s, dtype=np.int64)
        src.append(np.full(s, u, np.int64))
        dst.append(gadget)
        src.append(np.full(s, v, np.int64))
        dst.append(gadget)
    edges = np.stack([np.concatenate(src), np.concatenate(dst)], axis=1)
    return Graph.from_edges(n_prime, edges, _gadget_labels(g, n_prime - n))


def reduce_clique(
    g: Graph,
    k: int,
    gadget_size: Optional[int] = None,
    cap: int = DEFAULT_MATERIALIZATION_CAP,
) -> ReductionInstance:
    """Transform (g, k) into a threshold instance.

    Requires n >= 4, 3 <= k <= n and a connected input graph; disconnected
    graphs must be reduced one component at a time, which the error spells
    out. The instance is materialized only when the transformed vertex count
    fits under ``cap``; otherwise the result is virtual (stats only), which
    is not an error.
    """
    n = g.n
    if n < 4:
        raise DomainError(f"reduction needs n >= 4 original vertices, got {n}")
    if k < 3 or k > n:
        raise DomainError(f"need 3 <= k <= n, got k={k}, n={n}")
    if not is_connected(g):
        comps = connected_components(g)
        sizes = ", ".join(str(len(c)) for c in comps)
        raise DomainError(
            f"input graph is disconnected ({len(comps)} components, sizes "
            f"{sizes}); run the reduction separately on each connected "
            f"component"
        )
    if gadget_size is None:
        gadget_size = default_gadget_size(n)
    gadget_size = int(gadget_size)
    if gadget_size < 1:
        raise DomainError("gadget size must be a positive integer")

    non_edges = _complement_pairs(g)
    ne = len(non_edges)
    v_prime = n + ne * gadget_size
    e_prime = comb(n, 2) + ne * (comb(gadget_size, 2) + 2 * gadget_size)
    transformed = None
    if v_prime <= cap:
        transformed = _materialize(g, non_edges, gadget_size)
    return ReductionInstance(
        original_n=n,
        k=int(k),
        lam=lambda_threshold(k, n),
        gadget_size=gadget_size,
        non_edges=non_edges,
        embedding=tuple(range(n)),
        transformed_vertices=v_prime,
        transformed_edges=e_prime,
        transformed=transformed,
    )


def verify_instance(inst: ReductionInstance):
    """Audit a materialized instance against its structural invariants.

    Returns (all_passed, report) where report is one entry per check:
    vertex count, edge count, completed original core, and exact gadget
    adjacency (each gadget vertex sees its s-1 peers plus both endpoints
    of its non-edge, nothing else).
    """
    if not inst.materialized:
        raise UnsupportedInstanceError(
            "cannot verify a virtual instance; materialize it first "
            "(smaller gadget size or higher cap)"
        )
    tg = inst.transformed
    n = inst.original_n
    s = inst.gadget_size
    ne = len(inst.non_edges)
    report = []

    want_v = n + ne * s
    report.append(
        {
            "check": "vertex-count-formula",
            "passed": tg.n == want_v,
            "detail": f"transformed n={tg.n}, formula {want_v}",
        }
    )
    want_e = comb(n, 2) + ne * (comb(s, 2) + 2 * s)
    report.append(
        {
            "check": "edge-count-formula",
            "passed": tg.m == want_e,
            "detail": f"transformed m={tg.m}, formula {want_e}",
        }
    )

    emb = np.asarray(inst.embedding, dtype=np.int64)
    in_core = np.zeros(tg.n, bool)
    in_core[emb] = True
    core_edges = sum(
        int(np.count_nonzero(in_core[tg.neighbors(int(u))])) for u in emb
    ) // 2
    report.append(
        {
            "check": "core-clique",
            "passed": core_edges == comb(n, 2),
            "detail": f"{core_edges} edges among original images, "
            f"complete needs {comb(n, 2)}",
        }
    )

    gadget_ok = True
    detail = "all gadget vertices check out"
    degrees = np.diff(tg.indptr)
    if tg.n > n and not (degrees[n:] == s + 1).all():
        gadget_ok = False
        bad = n + int((degrees[n:] != s + 1).argmax())
        detail = f"vertex {bad} has degree {int(degrees[bad])}, expected {s + 1}"
    else:
        peers = _peers_without_self(s)
        for e, (u, v) in enumerate(inst.non_edges):
            base = n + e * s
            actual = tg.indices[tg.indptr[base]:tg.indptr[base + s]].reshape(s, s + 1)
            if not (
                (actual[:, 0] == u).all()
                and (actual[:, 1] == v).all()
                and np.array_equal(actual[:, 2:], base + peers)
            ):
                gadget_ok = False
                detail = f"gadget block {e} (non-edge {u},{v}) adjacency differs"
                break
    report.append(
        {"check": "gadget-adjacency", "passed": gadget_ok, "detail": detail}
    )

    return all(r["passed"] for r in report), report


def forward_witness(inst: ReductionInstance, clique: VertexSetLike):
    """Image of an original k-clique in the transformed graph plus its score.

    The score is computed analytically -- inside = C(k,3) because the core
    is complete, outbound = C(k,2)(n-k) because no gadget vertex neighbors
    both endpoints of a true original edge -- and cross-checked against a
    real census whenever the instance is materialized. Always equals lambda.
    """
    clique = VertexSet.coerce(clique)
    k, n = inst.k, inst.original_n
    if clique.size != k:
        raise WitnessError(f"witness has {clique.size} vertices, expected k={k}")
    ms = clique.sorted_members
    if ms and ms[-1] >= n:
        raise WitnessError(f"witness vertex {ms[-1]} is not an original vertex")
    for a, b in combinations(ms, 2):
        if not inst.original_has_edge(a, b):
            raise WitnessError(
                f"witness is not a clique in the original graph: ({a}, {b}) missing"
            )
    image = VertexSet(inst.embedding[v] for v in ms)
    inside = comb(k, 3)
    outbound = comb(k, 2) * (n - k)
    value = Fraction(inside * inside, comb(k, 3) * (inside + outbound))
    if value != inst.lam:
        raise RuntimeError("witness score drifted from the instance threshold")
    if inst.materialized:
        c = census(inst.transformed, image)
        if c.inside != inside or c.outbound != outbound:
            raise RuntimeError(
                f"census cross-check failed: got i={c.inside}, o={c.outbound}, "
                f"expected i={inside}, o={outbound}"
            )
    return image, value


def backward_witness(inst: ReductionInstance, s: VertexSetLike):
    """Recover an original k-clique from a high-scoring connected set, if any.

    Returns None when the set scores below lambda, and also when it scores
    >= lambda but no k original vertices inside it form a clique -- with the
    canonical gadget size the construction's case analysis says the latter
    never happens, with small override gadgets it can (spurious cohesive
    sets). Among several recoverable cliques the lexicographically smallest
    is returned.
    """
    if not inst.materialized:
        raise UnsupportedInstanceError(
            "backward witness extraction needs a materialized instance"
        )
    s = VertexSet.coerce(s)
    s.validate_for(inst.transformed)
    if not is_connected(inst.transformed, s):
        raise DomainError("candidate set is not connected in the transformed graph")
    value = cohesion_of_set(inst.transformed, s)
    if value < inst.lam:
        return None
    inverse = {t: o for o, t in enumerate(inst.embedding)}
    originals = sorted(inverse[v] for v in s if v in inverse)
    for combo in combinations(originals, inst.k):
        if all(inst.original_has_edge(a, b) for a, b in combinations(combo, 2)):
            return VertexSet(combo)
    return None


def instance_to_json(inst: ReductionInstance) -> dict:
    """Stable JSON form; astronomically large counts ride as decimal strings."""
    return {
        "n": inst.original_n,
        "k": inst.k,
        "lambda": cohesion_to_json(inst.lam),
        "gadget_size": str(inst.gadget_size),
        "non_edges": [[u, v] for u, v in inst.non_edges],
        "materialized": inst.materialized,
        "transformed_vertices": str(inst.transformed_vertices),
        "transformed_edges": str(inst.transformed_edges),
        "embedding": list(inst.embedding),
    }
