"""
Exception hierarchy for flowhom.

Everything raised on bad input derives from FlowhomError and ValueError.
Outcomes that are answers rather than faults (flow-graph rejections,
verification claims) are returned as values instead.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from flowhom.homology import BettiProfile


class FlowhomError(Exception):
    """Base class for all flowhom errors."""


class GraphParseError(FlowhomError, ValueError):
    """Malformed digraph text."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None and col is not None:
            message = f"{message} at line {line}, col {col}"
        elif line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


class SelfLoopError(GraphParseError):
    """A loop (v, v) reached a loopless context."""

    def __init__(self, vertex: str, line: int | None = None, col: int | None = None):
        self.vertex = vertex
        super().__init__(
            f"self-loop on vertex '{vertex}' (use --allow-loops to rewrite loops as 2-cycles)",
            line,
            col,
        )


class EmptyDigraphError(FlowhomError, ValueError):
    """Operation undefined on the empty digraph."""

    def __init__(self, operation: str):
        self.operation = operation
        super().__init__(f"{operation} is undefined for the empty digraph")


class InvalidFlowGraphError(FlowhomError, ValueError):
    """Digraph failed flow-graph validation."""

    def __init__(self, violations: list[Any]):
        self.violations = list(violations)
        detail = "; ".join(str(v) for v in self.violations)
        super().__init__(f"not a flow graph: {detail}")


class DimensionMismatchError(FlowhomError, ValueError):
    """Bases passed for the wrong dimensions."""


class PathLimitExceeded(FlowhomError):
    """|A_p| grew past the configured cap."""

    def __init__(self, dimension: int, count: int, limit: int):
        self.dimension = dimension
        self.count = count
        self.limit = limit
        self.partial: BettiProfile | None = None
        super().__init__(
            f"allowed {dimension}-paths exceed the limit of {limit} (reached {count})"
        )


class GuardRailError(FlowhomError, ValueError):
    """Input outside the sizes an operation is willing to run on."""


class SkeletonError(FlowhomError, ValueError):
    """Malformed program skeleton."""


class ConfigError(FlowhomError, ValueError):
    """Invalid configuration file or flag combination."""
