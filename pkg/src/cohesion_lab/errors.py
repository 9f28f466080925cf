"""Exception hierarchy shared across the library.

The CLI maps these onto its exit-code contract: usage problems exit 2,
input problems exit 3, property/solver failures exit 1.
"""


class CohesionLabError(Exception):
    """Base class for all library errors."""


class EdgeListParseError(CohesionLabError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GraphValidationError(CohesionLabError):
    """Structurally invalid graph data: self-loops, duplicate edges, ids out of range."""


class DomainError(CohesionLabError):
    """Arguments outside an operation's domain (bad k, vertex already in set, ...)."""


class WitnessError(DomainError):
    """A claimed witness does not certify what it should."""


class UnsupportedInstanceError(CohesionLabError):
    """Operation requires a materialized reduction instance but got a virtual one."""


class SearchGuardError(CohesionLabError):
    """Exact search refused: the graph exceeds the safety bound and no override was given."""


class UsageError(CohesionLabError):
    """Caller asked for something that does not exist (suite names, modes)."""


class TimeBudgetExceeded(CohesionLabError):
    """Search ran out of its time budget. ``partial`` holds the best-so-far result."""

    def __init__(self, message: str, partial):
        super().__init__(message)
        self.partial = partial
