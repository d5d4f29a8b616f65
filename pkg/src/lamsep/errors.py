"""Exception hierarchy and the violation record shared by the validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class LamsepError(Exception):
    """Base class for every error raised by lamsep."""


class OutOfRange(LamsepError, ValueError):
    pass


class SelfLoop(LamsepError, ValueError):
    pass


class DuplicateEdge(LamsepError, ValueError):
    pass


class NotConnectedGraph(LamsepError, ValueError):
    pass


class TooLarge(LamsepError, ValueError):
    pass


class ContextMismatch(LamsepError, ValueError):
    """Two objects were built for graphs with different vertex counts."""


class BadIndexSet(LamsepError, ValueError):
    pass


class NotACutset(LamsepError, ValueError):
    pass


class NotDeciduous(LamsepError, ValueError):
    pass


class InvalidDecomposition(LamsepError, ValueError):
    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = violations or []


class CrossingPair(LamsepError, ValueError):
    pass


class NotLaminar(LamsepError, ValueError):
    def __init__(self, message: str, pair: tuple | None = None):
        super().__init__(message)
        self.pair = pair


class NotTwoSided(LamsepError, ValueError):
    pass


class BadParams(LamsepError, ValueError):
    pass


class FormatError(LamsepError, ValueError):
    """Malformed input file."""


class InternalInvariant(LamsepError, RuntimeError):
    """A result that theory guarantees could not be produced.

    Always carries a JSON-serialisable ``certificate`` describing the input
    and the failing state so the case can be replayed.
    """

    def __init__(self, message: str, certificate: dict[str, Any]):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class Violation:
    """One failed condition, with a witness (vertex, edge, node, ...)."""

    condition: str
    message: str
    witness: Any = None
    warning: bool = field(default=False)

    def __str__(self) -> str:
        tag = "warning" if self.warning else "violation"
        return f"{tag} ({self.condition}): {self.message}"
