"""Triangle-based cohesion of vertex groups.

A group S scores i(S)^2 / (C(|S|,3) * (i(S) + o(S))) where i counts
triangles inside S and o counts triangles with exactly two vertices in S:
1 for an isolated clique, 0 for anything triangle-free. The package bundles
the exact-rational metric, an exhaustive connected-subset solver with a
local-search heuristic for bigger graphs, a clique-to-threshold instance
transformer with witness mapping, and a brute-force verification harness.

See the README for the CLI (``cohesion-lab``) and for two documented
discrepancies in the source material this package implements.
"""

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
from .graph import (
    Graph,
    VertexSet,
    connected_components,
    induced_subgraph,
    is_connected,
    parse_edge_list,
)
from .metric import (
    CohesionValue,
    cohesion,
    cohesion_of_set,
    cohesion_to_json,
    compare,
    lambda_threshold,
)
from .reduction import (
    ReductionInstance,
    backward_witness,
    default_gadget_size,
    forward_witness,
    instance_to_json,
    reduce_clique,
    verify_instance,
)
from .solvers import (
    EXACT_GUARD_N,
    SearchConfig,
    SolverResult,
    solve_exact,
    solve_heuristic,
)
from .triangles import (
    CensusDelta,
    TriangleCensus,
    add_vertex_delta,
    census,
    edge_triangle_count,
    remove_vertex_delta,
    total_triangles,
)
from .harness import (
    PropertyReport,
    check_lemma1,
    check_theorem1,
    check_theorem3,
    gadget_size_frontier,
    naive_census,
    run_suite,
)

__version__ = "0.1.0"
