"""Exception types shared across the package."""


class InvalidWordError(ValueError):
    """A word, permutation, pattern or inversion sequence is malformed."""


class PreconditionError(ValueError):
    """Input contains a pattern the operation requires it to avoid."""

    def __init__(self, message, pattern=None):
        super().__init__(message)
        self.pattern = pattern


class StructureError(ValueError):
    """No structural case applies to a word that should have one."""


class InvariantError(AssertionError):
    """An internal exactness invariant was breached (e.g. nonzero remainder)."""
