"""Hot numeric kernels: triangle classification and connected-subset search.

Each kernel exists twice: a tight loop compiled with numba (@njit, nogil so
worker threads actually run in parallel) and a NumPy fallback. The active
path is chosen at import time; set ``COHESION_LAB_NO_NUMBA=1`` to force the
fallback even when numba is installed. ``benchmarks/bench_kernels.py`` times
one path against the other on the same inputs.

Graphs arrive here as CSR arrays: ``indptr`` (int64, length n+1) and
``indices`` (int32, neighbors sorted ascending per row). Triangle kernels
take the degree-ordered forward orientation (each edge stored once, from the
lower-rank endpoint), which bounds the intersection work by O(m^(3/2)).

All counters are int64. The search kernel compares cohesion values by
cross-multiplication in int64, which is overflow-safe only while
C(n,3)^2 * C(n,3) * 3*C(n,3) < 2^63, i.e. n <= ~50; callers guard this
(exact search refuses n > 32 anyway) and fall back to exact big-int
arithmetic beyond it.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USING_NUMBA",
    "census_buckets",
    "census_buckets_numpy",
    "subset_connected",
    "subset_connected_numpy",
    "exact_anchor",
    "exact_anchor_py",
]

_DISABLED = os.environ.get("COHESION_LAB_NO_NUMBA", "") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("numba disabled by COHESION_LAB_NO_NUMBA")
    from numba import njit

    USING_NUMBA = True
except ImportError:
    njit = None
    USING_NUMBA = False


def _census_buckets_loop(fwd_indptr, fwd_indices, mask):
    """Classify every triangle by how many of its vertices carry ``mask``.

    Returns int64[4]: counts of triangles with 0, 1, 2, 3 marked vertices.
    Enumerates each triangle once: a forward edge (u, v) plus a common
    forward neighbor w, lists intersected two-pointer (rows are sorted).
    """
    n = fwd_indptr.shape[0] - 1
    counts = np.zeros(4, np.int64)
    for u in range(n):
        for ei in range(fwd_indptr[u], fwd_indptr[u + 1]):
            v = fwd_indices[ei]
            base = np.int64(mask[u]) + np.int64(mask[v])
            a = fwd_indptr[u]
            a_end = fwd_indptr[u + 1]
            b = fwd_indptr[v]
            b_end = fwd_indptr[v + 1]
            while a < a_end and b < b_end:
                wa = fwd_indices[a]
                wb = fwd_indices[b]
                if wa == wb:
                    counts[base + mask[wa]] += 1
                    a += 1
                    b += 1
                elif wa < wb:
                    a += 1
                else:
                    b += 1
    return counts


def census_buckets_numpy(fwd_indptr, fwd_indices, mask):
    """NumPy fallback for :func:`census_buckets`: intersect1d per forward edge."""
    n = fwd_indptr.shape[0] - 1
    counts = np.zeros(4, np.int64)
    rows = [fwd_indices[fwd_indptr[u]:fwd_indptr[u + 1]] for u in range(n)]
    for u in range(n):
        row_u = rows[u]
        if row_u.size == 0:
            continue
        base = int(mask[u])
        for v in row_u:
            common = np.intersect1d(row_u, rows[v], assume_unique=True)
            if common.size:
                hits = np.bincount(mask[common], minlength=2)
                b = base + int(mask[v])
                counts[b] += hits[0]
                counts[b + 1] += hits[1] if hits.size > 1 else 0
    return counts


def _subset_connected_loop(indptr, indices, members):
    """1 if the subgraph induced by ``members`` (sorted int32) is connected.

    Sets of size 0 and 1 count as connected.
    """
    k = members.shape[0]
    if k <= 1:
        return 1
    n = indptr.shape[0] - 1
    in_set = np.zeros(n, np.uint8)
    for t in range(k):
        in_set[members[t]] = 1
    stack = np.empty(k, np.int32)
    stack[0] = members[0]
    in_set[members[0]] = 2
    top = 1
    seen = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for ei in range(indptr[u], indptr[u + 1]):
            v = indices[ei]
            if in_set[v] == 1:
                in_set[v] = 2
                stack[top] = v
                top += 1
                seen += 1
    return 1 if seen == k else 0


def subset_connected_numpy(indptr, indices, members):
    """NumPy fallback for :func:`subset_connected`: frontier-at-a-time BFS."""
    k = members.shape[0]
    if k <= 1:
        return 1
    n = indptr.shape[0] - 1
    in_set = np.zeros(n, bool)
    in_set[members] = True
    visited = np.zeros(n, bool)
    frontier = members[:1]
    visited[frontier[0]] = True
    seen = 1
    while frontier.size:
        nbrs = np.concatenate(
            [indices[indptr[u]:indptr[u + 1]] for u in frontier]
        )
        fresh = np.unique(nbrs[in_set[nbrs] & ~visited[nbrs]])
        visited[fresh] = True
        seen += fresh.size
        frontier = fresh
    return 1 if seen == k else 0


def _exact_anchor_loop(indptr, indices, anchor, max_size, out, out_members):
    """Enumerate every connected subset whose minimum vertex is ``anchor``.

    Duplicate-free grow-from-anchor scheme: candidates are restricted to ids
    above the anchor and to vertices not already claimed on the current
    recursion path, and each popped candidate is branched take-now-or-never.
    The inside/outbound triangle counters are maintained incrementally: when
    w joins S, d_inside = edges within S cap N(w) and d_outbound = edges from
    S cap N(w) to N(w) minus S minus {w}, minus d_inside.

    Every subset of size >= 3 (and <= max_size) is scored by the exact
    rational i^2 / (C(|S|,3) * (i + o)) via int64 cross-multiplication.
    Ties prefer the smaller set, then the lexicographically smaller sorted
    member list.

    Results land in ``out`` = [found, best_i, best_o, best_size, explored]
    and ``out_members`` (sorted best members in the first best_size slots).
    """
    n = indptr.shape[0] - 1
    in_s = np.zeros(n, np.uint8)
    claimed = np.zeros(n, np.uint8)
    nbr_mark = np.zeros(n, np.uint8)
    s_stack = np.empty(n + 1, np.int32)
    cand_sorted = np.empty(n + 1, np.int32)
    ext_buf = np.empty(n * n + n + 1, np.int32)
    f_lo = np.empty(n + 2, np.int64)
    f_hi = np.empty(n + 2, np.int64)
    f_cur = np.empty(n + 2, np.int64)
    f_excl = np.empty(n + 2, np.int64)
    f_di = np.empty(n + 2, np.int64)
    f_do = np.empty(n + 2, np.int64)

    in_s[anchor] = 1
    claimed[anchor] = 1
    s_stack[0] = anchor
    size = 1
    cur_i = np.int64(0)
    cur_o = np.int64(0)

    hi = 0
    for ei in range(indptr[anchor], indptr[anchor + 1]):
        u = indices[ei]
        if u > anchor:
            ext_buf[hi] = u
            hi += 1
            claimed[u] = 1
    d = 0
    f_lo[0] = 0
    f_hi[0] = hi
    f_cur[0] = 0
    f_excl[0] = 0
    f_di[0] = 0
    f_do[0] = 0

    best_found = 0
    best_num = np.int64(0)
    best_den = np.int64(1)
    best_i = np.int64(0)
    best_o = np.int64(0)
    best_size = 0
    explored = np.int64(0)

    while True:
        if f_cur[d] < f_hi[d] and size < max_size:
            w = ext_buf[f_cur[d]]
            f_cur[d] += 1

            # incremental census delta for adding w
            for ei in range(indptr[w], indptr[w + 1]):
                nbr_mark[indices[ei]] = 1
            ii2 = np.int64(0)
            cross = np.int64(0)
            for ei in range(indptr[w], indptr[w + 1]):
                a = indices[ei]
                if in_s[a] == 1:
                    for ej in range(indptr[a], indptr[a + 1]):
                        b = indices[ej]
                        if nbr_mark[b] == 1:
                            if in_s[b] == 1:
                                ii2 += 1
                            else:
                                cross += 1
            for ei in range(indptr[w], indptr[w + 1]):
                nbr_mark[indices[ei]] = 0
            di = ii2 // 2
            do = cross - di

            cur_i += di
            cur_o += do
            in_s[w] = 1
            s_stack[size] = w
            size += 1

            child_lo = f_hi[d]
            pos = child_lo
            for t in range(f_cur[d], f_hi[d]):
                ext_buf[pos] = ext_buf[t]
                pos += 1
            excl_start = pos
            for ei in range(indptr[w], indptr[w + 1]):
                u = indices[ei]
                if u > anchor and claimed[u] == 0:
                    claimed[u] = 1
                    ext_buf[pos] = u
                    pos += 1
            d += 1
            f_lo[d] = child_lo
            f_hi[d] = pos
            f_cur[d] = child_lo
            f_excl[d] = excl_start
            f_di[d] = di
            f_do[d] = do

            if size >= 3:
                explored += 1
                if cur_i == 0:
                    num_c = np.int64(0)
                    den_c = np.int64(1)
                else:
                    c3 = np.int64(size) * (size - 1) * (size - 2) // 6
                    num_c = cur_i * cur_i
                    den_c = c3 * (cur_i + cur_o)
                take = False
                compare_lex = False
                if best_found == 0:
                    take = True
                else:
                    lhs = num_c * best_den
                    rhs = best_num * den_c
                    if lhs > rhs:
                        take = True
                    elif lhs == rhs:
                        if size < best_size:
                            take = True
                        elif size == best_size:
                            compare_lex = True
                if take or compare_lex:
                    for t in range(size):
                        cand_sorted[t] = s_stack[t]
                    for t in range(1, size):
                        key = cand_sorted[t]
                        j = t - 1
                        while j >= 0 and cand_sorted[j] > key:
                            cand_sorted[j + 1] = cand_sorted[j]
                            j -= 1
                        cand_sorted[j + 1] = key
                    if compare_lex:
                        for t in range(size):
                            if cand_sorted[t] < out_members[t]:
                                take = True
                                break
                            if cand_sorted[t] > out_members[t]:
                                break
                    if take:
                        best_found = 1
                        best_num = num_c
                        best_den = den_c
                        best_i = cur_i
                        best_o = cur_o
                        best_size = size
                        for t in range(size):
                            out_members[t] = cand_sorted[t]
        else:
            if d == 0:
                break
            for t in range(f_excl[d], f_hi[d]):
                claimed[ext_buf[t]] = 0
            cur_i -= f_di[d]
            cur_o -= f_do[d]
            d -= 1
            size -= 1
            in_s[s_stack[size]] = 0

    out[0] = best_found
    out[1] = best_i
    out[2] = best_o
    out[3] = best_size
    out[4] = explored


# Fallback: the very same loop runs uncompiled. Exposed under a stable name
# so the benchmark and the equivalence tests can target both paths.
exact_anchor_py = _exact_anchor_loop

if USING_NUMBA:
    census_buckets = njit(cache=True, nogil=True)(_census_buckets_loop)
    subset_connected = njit(cache=True, nogil=True)(_subset_connected_loop)
    exact_anchor = njit(cache=True, nogil=True)(_exact_anchor_loop)
else:
    census_buckets = census_buckets_numpy
    subset_connected = subset_connected_numpy
    exact_anchor = exact_anchor_py
