"""Command-line front end.

Subcommands: ``cohesion``, ``solve``, ``reduce``, ``verify``, ``stats``.
Machine-readable JSON goes to stdout (or a human-readable rendering with
--human); all diagnostics go to stderr. Exit codes are stable:

    0  success
    1  property or solver failure (failed suite, exhausted time budget)
    2  usage error (bad flags, unknown suite, refused guard)
    3  input error (unparseable graph, unknown vertex token, bad domain)

Payload shapes are published in ``schemas/payloads.schema.json`` next to
this module. Identical inputs plus identical --rng-seed produce
byte-identical payloads; wall-clock timings never enter the payload.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .errors import (
    CohesionLabError,
    DomainError,
    EdgeListParseError,
    GraphValidationError,
    SearchGuardError,
    TimeBudgetExceeded,
    UnsupportedInstanceError,
    UsageError,
    WitnessError,
)
from .graph import Graph, VertexSet, connected_components, parse_edge_list
from .harness import SUITE_NAMES, run_suite
from .metric import cohesion, cohesion_to_json
from .reduction import instance_to_json, reduce_clique
from .solvers import SearchConfig, solve_exact, solve_heuristic
from .triangles import census, total_triangles

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

_INPUT_ERRORS = (
    EdgeListParseError,
    GraphValidationError,
    DomainError,
    WitnessError,
    UnsupportedInstanceError,
    FileNotFoundError,
    IsADirectoryError,
)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_graph(path: str) -> Graph:
    text = Path(path).read_text()
    if path.endswith(".json"):
        return Graph.from_json_dict(json.loads(text))
    return parse_edge_list(text)


def _parse_set(g: Graph, spec: str) -> VertexSet:
    tokens = [t for t in (p.strip() for p in spec.split(",")) if t]
    return VertexSet(g.id_of_label(t) for t in tokens)


def _emit(payload, human_lines, args) -> None:
    if getattr(args, "human", False):
        for line in human_lines:
            print(line)
    else:
        print(json.dumps(payload, indent=2))


def _workers_default() -> int:
    raw = os.environ.get("COHESION_LAB_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _add_common(p: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        p.add_argument("--graph", required=True, help="edge-list (or .json) graph file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="human", action="store_false",
                     help="JSON payload on stdout (default)")
    fmt.add_argument("--human", dest="human", action="store_true",
                     help="human-readable rendering instead of JSON")
    p.set_defaults(human=False)
    p.add_argument("--workers", type=int, default=_workers_default(),
                   help="worker threads (default: $COHESION_LAB_WORKERS or 1)")
    p.add_argument("--rng-seed", type=int, default=0, help="deterministic seed")
    p.add_argument("--force", action="store_true",
                   help="override the exact-search size guard")


def _cmd_cohesion(args) -> int:
    g = _load_graph(args.graph)
    s = _parse_set(g, args.set)
    c = census(g, s)
    value = cohesion(s.size, c.inside, c.outbound)
    payload = {
        "size": s.size,
        "inside": c.inside,
        "outbound": c.outbound,
        "cohesion": cohesion_to_json(value),
    }
    _emit(
        payload,
        [
            f"set size      {s.size}",
            f"inside        {c.inside}",
            f"outbound      {c.outbound}",
            f"cohesion      {value} (~{float(value):.6g})",
        ],
        args,
    )
    return EXIT_OK


def _cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    seed_set = _parse_set(g, args.seed_set) if args.seed_set else None
    cfg = SearchConfig(
        max_subset_size=args.max_size,
        time_budget=args.time_budget,
        seed_set=seed_set,
        heuristic_restarts=args.restarts,
        rng_seed=args.rng_seed,
    )
    t0 = time.perf_counter()
    code = EXIT_OK
    if args.mode == "exact":
        try:
            result = solve_exact(g, cfg, force=args.force, workers=args.workers)
        except TimeBudgetExceeded as exc:
            _log("time budget exhausted; emitting best-so-far partial result")
            result = exc.partial
            code = EXIT_FAILURE
    else:
        result = solve_heuristic(g, cfg)
    _log(f"{args.mode} search finished in {time.perf_counter() - t0:.3f}s "
         f"({result.explored} subsets evaluated)")
    payload = result.to_json_dict(g)
    _emit(
        payload,
        [
            f"mode          {args.mode} (exact={result.exact})",
            f"best set      {' '.join(payload['best_labels']) or '(empty)'}",
            f"cohesion      {result.best_value} (~{float(result.best_value):.6g})",
            f"positive      {result.found_positive}",
            f"explored      {result.explored}",
        ],
        args,
    )
    return code


def _cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    inst = reduce_clique(g, args.k, gadget_size=args.gadget_size, cap=args.cap)
    payload = instance_to_json(inst)
    if args.out:
        out = Path(args.out)
        out.write_text(json.dumps(payload, indent=2) + "\n")
        _log(f"instance written to {out}")
        if inst.materialized:
            stem = str(out)[:-5] if str(out).endswith(".json") else str(out)
            edges_path = Path(stem + ".edges")
            edges_path.write_text(inst.transformed.to_edge_list_text())
            _log(f"transformed graph written to {edges_path}")
    if not inst.materialized:
        _log(
            f"virtual instance: transformed graph has "
            f"{inst.transformed_vertices} vertices (cap {args.cap}), stats only"
        )
    _emit(
        payload,
        [
            f"n (original)  {inst.original_n}",
            f"k             {inst.k}",
            f"lambda        {inst.lam}",
            f"gadget size   {inst.gadget_size}",
            f"non-edges     {len(inst.non_edges)}",
            f"materialized  {inst.materialized}",
            f"transformed   {inst.transformed_vertices} vertices, "
            f"{inst.transformed_edges} edges",
        ],
        args,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = [t for t in (p.strip() for p in args.suite.split(",")) if t]
    reports = run_suite(
        names, trials=args.trials, rng_seed=args.rng_seed, workers=args.workers
    )
    payload = [r.to_json_dict() for r in reports]
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status}  {r.property_name}: {r.instances_checked} instances, "
            f"{len(r.failures)} failures"
        )
    _emit(payload, lines, args)
    for r in reports:
        _log(
            f"suite {r.property_name}: "
            f"{'passed' if r.passed else 'FAILED'} "
            f"({r.instances_checked} instances)"
        )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


def _cmd_stats(args) -> int:
    g = _load_graph(args.graph)
    degrees = [g.degree(v) for v in range(g.n)]
    comps = connected_components(g)
    payload = {
        "n": g.n,
        "m": g.m,
        "min_degree": min(degrees) if degrees else 0,
        "max_degree": max(degrees) if degrees else 0,
        "triangles": total_triangles(g),
        "components": len(comps),
    }
    _emit(
        payload,
        [f"{key:<12} {val}" for key, val in payload.items()],
        args,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohesion-lab",
        description="Triangle-based group cohesion: score sets, search for "
        "maximum-cohesion groups, generate clique-reduction instances, and "
        "run the brute-force verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohesion", help="score one vertex set")
    _add_common(p)
    p.add_argument("--set", required=True,
                   help="comma-separated vertex tokens (file labels)")
    p.set_defaults(fn=_cmd_cohesion)

    p = sub.add_parser("solve", help="search for a maximum-cohesion set")
    _add_common(p)
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    p.add_argument("--max-size", type=int, default=None,
                   help="cap on candidate set size")
    p.add_argument("--time-budget", type=float, default=None,
                   help="seconds before exact search bails with a partial result")
    p.add_argument("--seed-set", default=None,
                   help="comma-separated tokens the result must contain")
    p.add_argument("--restarts", type=int, default=8,
                   help="heuristic restarts (default 8)")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("reduce", help="transform a clique instance (G, k)")
    _add_common(p)
    p.add_argument("-k", type=int, required=True, help="clique size to embed")
    p.add_argument("--gadget-size", type=int, default=None,
                   help="override the canonical 2*C(n,3)^4 gadget clique size")
    p.add_argument("--cap", type=int, default=10_000,
                   help="materialize only under this many transformed vertices")
    p.add_argument("--out", default=None,
                   help="write instance JSON here (plus .edges when materialized)")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("verify", help="run property suites")
    _add_common(p, graph=False)
    p.add_argument("--suite", required=True,
                   help=f"comma-separated from: {', '.join(SUITE_NAMES)}")
    p.add_argument("--trials", type=int, default=200,
                   help="random trials per suite (default 200)")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("stats", help="basic facts about a graph file")
    _add_common(p)
    p.set_defaults(fn=_cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize anything else
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except (UsageError, SearchGuardError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except _INPUT_ERRORS as exc:
        _log(f"error: {exc}")
        return EXIT_INPUT
    except CohesionLabError as exc:
        _log(f"error: {exc}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
