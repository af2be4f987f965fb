"""
bmg_lab Exceptions
Error hierarchy shared by services, agents and the CLI.
"""


class BMGError(Exception):
    """Base class for all bmg_lab errors."""

    exit_code = 1


class GraphFormatError(BMGError, ValueError):
    """Malformed graph text, colour sidecar, JSON document or tree string."""

    exit_code = 2


class GraphInvariantError(BMGError, ValueError):
    """A graph violates a structural invariant (loop, duplicate, same-colour edge, range)."""

    exit_code = 2


class PreconditionError(BMGError):
    """An operation was called on a graph outside its domain."""

    exit_code = 1


class BudgetExceededError(BMGError):
    """An exhaustive scan exceeds the configured pair budget."""

    exit_code = 2


class InternalInvariantError(BMGError):
    """A property that must hold for valid inputs was violated."""

    exit_code = 1


class OneColorRemainderError(PreconditionError):
    """Removing vertices left two or more vertices that all share one color."""
