#!/usr/bin/env python3
"""Benchmark the numba kernels against their NumPy/loop fallbacks.

Two workloads:
  1. triangle census of a G(n, p) graph against a random subset
  2. exhaustive connected-subset search on a small dense graph

Both paths are checked for exact agreement before timing.

Usage:
    python benchmarks/bench_kernels.py [--n 1200] [--p 0.02] [--iters 5]
                                       [--search-n 18] [--search-p 0.45]
"""

from __future__ import annotations

import argparse
import time
from random import Random

import numpy as np

from cohesion_lab import _kernels
from cohesion_lab.harness import random_graph


def timeit(fn, iters):
    best = float("inf")
    for _ in range(iters):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_census(n, p, iters, rng):
    g = random_graph(n, p, rng)
    mask = np.array([1 if rng.random() < 0.5 else 0 for _ in range(n)], np.uint8)
    fp, fi = g.forward_csr()
    print(f"census workload: G({n}, {p}) with m={g.m}")

    if _kernels.USING_NUMBA:
        _kernels.census_buckets(fp, fi, mask)  # JIT warmup
        t_jit, out_jit = timeit(lambda: _kernels.census_buckets(fp, fi, mask), iters)
    else:
        t_jit, out_jit = None, None
    t_np, out_np = timeit(lambda: _kernels.census_buckets_numpy(fp, fi, mask), iters)

    if out_jit is not None:
        assert np.array_equal(out_jit, out_np), "paths disagree!"
        print(f"  numba : {t_jit * 1e3:10.2f} ms")
    print(f"  numpy : {t_np * 1e3:10.2f} ms")
    if out_jit is not None:
        print(f"  speedup {t_np / t_jit:8.1f}x   buckets={out_np.tolist()}")


def bench_search(n, p, iters, rng):
    g = random_graph(n, p, rng)
    print(f"search workload: G({n}, {p}) with m={g.m}")

    def run(fn):
        explored = 0
        for anchor in range(g.n):
            out = np.zeros(5, np.int64)
            members = np.zeros(g.n + 1, np.int32)
            fn(g.indptr, g.indices, anchor, g.n, out, members)
            explored += int(out[4])
        return explored

    if _kernels.USING_NUMBA:
        run(_kernels.exact_anchor)  # JIT warmup
        t_jit, n_jit = timeit(lambda: run(_kernels.exact_anchor), iters)
    else:
        t_jit, n_jit = None, None
    t_py, n_py = timeit(lambda: run(_kernels.exact_anchor_py), max(1, iters // 5))

    if n_jit is not None:
        assert n_jit == n_py, "paths disagree!"
        print(f"  numba : {t_jit * 1e3:10.2f} ms")
    print(f"  python: {t_py * 1e3:10.2f} ms")
    if n_jit is not None:
        print(f"  speedup {t_py / t_jit:8.1f}x   connected subsets={n_py}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1200, help="census graph size")
    ap.add_argument("--p", type=float, default=0.02, help="census edge probability")
    ap.add_argument("--search-n", type=int, default=18, help="search graph size")
    ap.add_argument("--search-p", type=float, default=0.45,
                    help="search edge probability")
    ap.add_argument("--iters", type=int, default=5)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    print(f"numba active: {_kernels.USING_NUMBA} "
          f"(set COHESION_LAB_NO_NUMBA=1 to disable)\n")
    rng = Random(args.seed)
    bench_census(args.n, args.p, args.iters, rng)
    print()
    bench_search(args.search_n, args.search_p, args.iters, rng)


if __name__ == "__main__":
    main()
