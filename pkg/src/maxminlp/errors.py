"""Exception hierarchy shared across the package.

The CLI maps these onto stable exit codes: bad input is 2, an exceeded
size cap is 3, a violated precondition is 4, and a broken internal
invariant is 1.
"""

from __future__ import annotations


class MaxMinError(Exception):
    """Base class for all package-specific errors."""


class InputError(MaxMinError):
    """The supplied instance, file, or parameters are unusable."""


class ParseError(InputError):
    """A text file does not conform to the instance/assignment format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(InputError):
    """An operation that requires a valid instance received a broken one."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid instance: " + "; ".join(self.violations))


class UnsupportedInstanceError(InputError):
    """The instance is valid but outside the class an operation supports."""


class GenerationError(InputError):
    """The random generator could not satisfy its parameters."""


class SizeCapError(MaxMinError):
    """An instance exceeds an operation's size cap."""


class PreconditionError(MaxMinError):
    """A caller-supplied precondition could not be verified."""


class InvariantError(MaxMinError):
    """An internal guarantee failed; this always indicates a bug."""


class InfeasibleAssignmentError(InvariantError):
    """An assignment that was promised feasible violates a constraint."""
