"""Immutable simple undirected graphs with dense integer vertex ids.

Vertices are always 0..n-1 internally. External string tokens survive as
labels so CLI input/output can speak the user's names.

Two serial forms:

* edge-list text -- one edge per line, two whitespace-separated tokens;
  blank lines and lines starting with ``#`` are ignored. Tokens are densely
  renumbered in first-appearance order.
* JSON -- ``{"n": int, "edges": [[u, v], ...], "labels": {"0": ...}}`` with
  u < v in every pair and edges sorted lexicographically, so equal graphs
  serialize to byte-identical documents.

Self-loops and duplicate edges are rejected outright: the cohesion metric
presumes a simple graph, and silently cleaning input hides data bugs.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .errors import EdgeListParseError, GraphValidationError

__all__ = [
    "Graph",
    "VertexSet",
    "VertexSetLike",
    "parse_edge_list",
    "induced_subgraph",
    "is_connected",
    "connected_components",
]


class VertexSet:
    """Immutable set of vertex ids, iterated in ascending order."""

    __slots__ = ("_members", "_sorted")

    def __init__(self, members: Iterable[int] = ()):
        ms = frozenset(int(v) for v in members)
        if any(v < 0 for v in ms):
            raise GraphValidationError("vertex ids must be non-negative")
        self._members = ms
        self._sorted = tuple(sorted(ms))

    @classmethod
    def coerce(cls, value: "VertexSetLike") -> "VertexSet":
        if isinstance(value, VertexSet):
            return value
        return cls(value)

    @property
    def size(self) -> int:
        return len(self._members)

    @property
    def members(self) -> frozenset:
        return self._members

    @property
    def sorted_members(self) -> tuple:
        return self._sorted

    def validate_for(self, graph: "Graph") -> None:
        if self._sorted and self._sorted[-1] >= graph.n:
            bad = self._sorted[-1]
            raise GraphValidationError(
                f"vertex {bad} out of range for graph with n={graph.n}"
            )

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, np.uint8)
        if self._sorted:
            m[list(self._sorted)] = 1
        return m

    def as_array(self) -> np.ndarray:
        return np.asarray(self._sorted, dtype=np.int32)

    def with_vertex(self, v: int) -> "VertexSet":
        return VertexSet(self._members | {int(v)})

    def without_vertex(self, v: int) -> "VertexSet":
        return VertexSet(self._members - {int(v)})

    def __contains__(self, v) -> bool:
        return v in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self._sorted)

    def __len__(self) -> int:
        return len(self._members)

    def __eq__(self, other) -> bool:
        if isinstance(other, VertexSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        return f"VertexSet({list(self._sorted)})"


VertexSetLike = Union[VertexSet, Iterable[int]]


class Graph:
    """Simple undirected graph in CSR form. Immutable after construction."""

    __slots__ = ("n", "m", "indptr", "indices", "labels", "_fwd", "_label_ids")

    def __init__(self, n, m, indptr, indices, labels):
        self.n = int(n)
        self.m = int(m)
        self.indptr = indptr
        self.indices = indices
        self.labels = labels
        self._fwd = None
        self._label_ids = None
        indptr.setflags(write=False)
        indices.setflags(write=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        """Build and validate a graph from unordered vertex pairs."""
        n = int(n)
        if n < 0:
            raise GraphValidationError("vertex count must be non-negative")
        if labels is not None:
            labels = tuple(str(t) for t in labels)
            if len(labels) != n:
                raise GraphValidationError(
                    f"got {len(labels)} labels for {n} vertices"
                )
        if isinstance(edges, np.ndarray):
            arr = edges.astype(np.int64, copy=False)
        else:
            arr = np.asarray(list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GraphValidationError("edges must be pairs of vertex ids")
        m = arr.shape[0]
        if m:
            if arr.min() < 0 or arr.max() >= n:
                raise GraphValidationError("edge endpoint out of range")
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            if (lo == hi).any():
                v = int(lo[(lo == hi).argmax()])
                raise GraphValidationError(f"self-loop at vertex {v}")
            order = np.lexsort((hi, lo))
            lo, hi = lo[order], hi[order]
            dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if dup.any():
                j = int(dup.argmax())
                raise GraphValidationError(
                    f"duplicate edge ({int(lo[j])}, {int(hi[j])})"
                )
        else:
            lo = hi = np.empty(0, np.int64)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        indices = dst[order].astype(np.int32)
        indptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, m, indptr, indices, labels)

    # -- basic accessors -------------------------------------------------

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < row.size and row[i] == v)

    def edges(self) -> Iterator[tuple]:
        """Yield edges as (u, v) with u < v, lexicographically sorted."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if v > u:
                    yield (u, int(v))

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def id_of_label(self, token: str) -> int:
        if self._label_ids is None:
            if self.labels is not None:
                self._label_ids = {t: i for i, t in enumerate(self.labels)}
            else:
                self._label_ids = {str(i): i for i in range(self.n)}
        try:
            return self._label_ids[token]
        except KeyError:
            raise GraphValidationError(f"unknown vertex token {token!r}") from None

    def forward_csr(self) -> tuple:
        """Degree-ordered orientation: each edge once, from lower (deg, id) rank.

        Cached; this is what keeps the triangle kernels at O(m^(3/2)).
        """
        if self._fwd is None:
            deg = np.diff(self.indptr)
            order = np.lexsort((np.arange(self.n), deg))
            rank = np.empty(self.n, np.int64)
            rank[order] = np.arange(self.n)
            src = np.repeat(np.arange(self.n), deg)
            dst = self.indices.astype(np.int64)
            keep = rank[src] < rank[dst]
            fsrc = src[keep]
            findptr = np.zeros(self.n + 1, np.int64)
            np.cumsum(np.bincount(fsrc, minlength=self.n), out=findptr[1:])
            findices = dst[keep].astype(np.int32)
            findptr.setflags(write=False)
            findices.setflags(write=False)
            self._fwd = (findptr, findices)
        return self._fwd

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [[u, v] for u, v in self.edges()],
            "labels": (
                {str(i): t for i, t in enumerate(self.labels)}
                if self.labels is not None
                else {}
            ),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Graph":
        n = int(doc["n"])
        raw = doc.get("labels") or {}
        labels = None
        if raw:
            labels = tuple(str(raw.get(str(i), str(i))) for i in range(n))
        return cls.from_edges(n, doc.get("edges", []), labels)

    def to_edge_list_text(self) -> str:
        lines = [f"{self.label_of(u)} {self.label_of(v)}" for u, v in self.edges()]
        return "\n".join(lines) + ("\n" if lines else "")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.m, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format into a Graph.

    Tokens are renumbered densely in first-appearance order; the original
    tokens are kept as labels. Malformed lines raise
    :class:`EdgeListParseError`; self-loops and duplicate edges raise
    :class:`GraphValidationError`, both with their line number.
    """
    ids: dict = {}
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"expected two vertex tokens, got {len(parts)}", lineno
            )
        a, b = parts
        if a == b:
            raise GraphValidationError(f"line {lineno}: self-loop on token {a!r}")
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphValidationError(
                f"line {lineno}: duplicate edge {a!r} -- {b!r}"
            )
        seen.add(key)
        edges.append(key)
    labels = tuple(ids)
    return Graph.from_edges(len(labels), edges, labels or None)


def induced_subgraph(g: Graph, s: VertexSetLike) -> Graph:
    """Subgraph induced by ``s``, renumbered to 0..|s|-1 in ascending id order.

    Labels of the kept vertices carry over, so the result still speaks the
    original tokens.
    """
    s = VertexSet.coerce(s)
    s.validate_for(g)
    members = s.as_array()
    remap = np.full(g.n, -1, np.int64)
    remap[members] = np.arange(members.size)
    in_s = s.mask(g.n).astype(bool)
    edges = []
    for new_u, u in enumerate(members):
        nb = g.neighbors(u)
        for v in nb[(nb > u) & in_s[nb]]:
            edges.append((new_u, int(remap[v])))
    labels = tuple(g.label_of(int(u)) for u in members) if members.size else None
    return Graph.from_edges(members.size, edges, labels)


def is_connected(g: Graph, s: Optional[VertexSetLike] = None) -> bool:
    """True iff the subgraph induced by ``s`` (default: all of g) is connected.

    Empty and singleton sets count as connected by convention.
    """
    if s is None:
        members = np.arange(g.n, dtype=np.int32)
    else:
        s = VertexSet.coerce(s)
        s.validate_for(g)
        members = s.as_array()
    return bool(_kernels.subset_connected(g.indptr, g.indices, members))


def connected_components(g: Graph) -> list:
    """Vertex lists of the connected components, each ascending, ordered by minimum."""
    seen = np.zeros(g.n, bool)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in g.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        comps.append(sorted(comp))
    return comps
