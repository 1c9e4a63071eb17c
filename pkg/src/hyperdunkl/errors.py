"""Exception types shared across modules."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed (a bug or a broken algebra table)."""


class PreconditionError(ValueError):
    """An operation was called on input outside its documented domain."""
