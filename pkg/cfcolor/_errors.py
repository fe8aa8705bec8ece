from __future__ import annotations

from enum import IntEnum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable

    from ._graph import StarWitness
    from ._lll import TimeoutReport


class ExitCode(IntEnum):
    """Process exit codes of the command line interface."""

    OK = 0
    INVALID_COLORING = 1
    INPUT_ERROR = 2
    PRECONDITION = 3
    RESAMPLING_TIMEOUT = 4


class GraphFormatError(ValueError):
    """An error indicating a graph or coloring file could not be parsed."""

    line: int | None
    """The 1-based line number of the offending input, if known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        """Creates a new GraphFormatError.

        Args:
            message: The error message.
            line: The 1-based line number of the offending input.
        """
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(ValueError):
    """An error indicating an input violates a hypothesis of a coloring lemma."""

    condition: str
    """The violated condition, for example `lemma3(iii)`."""

    vertex: int | None
    """The offending vertex, if the condition is about a single vertex."""

    def __init__(self, message: str, condition: str, vertex: int | None = None) -> None:
        """Creates a new PreconditionError.

        Args:
            message: The error message.
            condition: The name of the violated condition.
            vertex: The offending vertex.
        """
        super().__init__(f"{condition}: {message}")
        self.condition = condition
        self.vertex = vertex


class IsolatedVertexError(PreconditionError):
    """An error indicating the graph has isolated vertices where none are allowed."""

    vertices: tuple[int, ...]
    """The isolated vertices."""

    def __init__(self, vertices: Iterable[int]) -> None:
        self.vertices = tuple(sorted(vertices))
        shown = ", ".join(str(v) for v in self.vertices[:10])
        if len(self.vertices) > 10:
            shown += ", ..."
        super().__init__(
            f"graph has {len(self.vertices)} isolated vertices: {shown}",
            "no-isolated-vertices",
            self.vertices[0] if self.vertices else None,
        )


class NotClawFreeError(PreconditionError):
    """An error indicating the graph contains an induced K_{1,k}."""

    witness: StarWitness
    """The induced star found in the graph."""

    def __init__(self, witness: StarWitness) -> None:
        self.witness = witness
        k = len(witness.leaves)
        super().__init__(
            f"induced K_1,{k} centered at {witness.center} with leaves {list(witness.leaves)}",
            f"K_1,{k}-free",
            witness.center,
        )


class ResamplingTimeout(TimeoutError):
    """An error indicating the resampling loop did not converge within its round limit."""

    report: TimeoutReport
    """Diagnostics of the interrupted run."""

    def __init__(self, report: TimeoutReport) -> None:
        super().__init__(
            f"resampling did not converge after {report.resamples} resamples, "
            f"{report.bad_edges} bad edges remain"
        )
        self.report = report


class OracleLimitError(ValueError):
    """An error indicating an instance is too large for exhaustive search."""


class BoundViolationError(AssertionError):
    """An error indicating a proven bound or a certificate did not hold.

    This always indicates a bug in the constructions rather than bad input.
    """
