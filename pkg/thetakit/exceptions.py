"""Exceptions raised by thetakit."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .verifier.report import BoundReport


class ThetaKitError(Exception):
    """Base error with a message that defaults to the class name."""

    def __init__(self, message: str | None = None) -> None:
        """Initialize the error."""
        super().__init__(message or type(self).__name__)


class ArgumentError(ThetaKitError, ValueError):
    """Error to indicate an argument is outside the operation's domain."""


class Graph6Error(ArgumentError):
    """Error to indicate a graph6 string could not be decoded."""

    def __init__(self, message: str, offset: int) -> None:
        """Initialize the error."""
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class FormatError(ArgumentError):
    """Error to indicate a text file (family, bipartite graph, matrix) is malformed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        """Initialize the error."""
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class UnsupportedSizeError(ArgumentError):
    """Error to indicate the input is larger than the supported size."""


class PreconditionError(ThetaKitError):
    """Error to indicate an operation precondition does not hold."""


class InvariantViolation(ThetaKitError):
    """Error to indicate a proven bound or a solver self-check failed."""

    def __init__(
        self,
        message: str | None = None,
        report: BoundReport | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        """Initialize the error."""
        super().__init__(message)
        self.report = report
        self.details = details or {}
