"""Shared exception types."""


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class PreconditionError(ValueError):
    """Input violates a documented hypothesis of the operation."""


class ResourceLimitError(RuntimeError):
    """A computation exceeded its configured size guard."""
