"""Exception types raised by pezzo."""

from __future__ import annotations

from typing import Optional, Sequence


class PezzoError(Exception):
    """Base class for pezzo errors."""


class UnknownSurfaceError(PezzoError, KeyError):
    """Raised when a catalog id does not exist."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ValidationError(PezzoError, ValueError):
    """Raised when a plane spec, surface model or catalog entry is invalid.

    Parameters
    ----------
    message : str
        Summary of the failure.
    violations : sequence of str or None
        The individual failed checks, in the order they were found.
    """

    def __init__(self, message: str, violations: Optional[Sequence[str]] = None) -> None:
        self.summary = message
        self.violations = list(violations or [])
        if self.violations:
            message = f"{message}: " + "; ".join(self.violations)
        super().__init__(message)


class NonCanonicalError(ValidationError):
    """A curve of self-intersection <= -3 would appear on the blow-up."""


class ReductionBlockedError(PezzoError, ValueError):
    """No (-1)-curve allows rewriting a component onto negative curves."""
