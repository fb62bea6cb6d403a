"""Exception types shared by the package."""


class InputError(ValueError):
    """Malformed input: wrong lengths, bad indices, unparsable files."""


class DomainError(ArithmeticError):
    """Operation undefined at the given argument (e.g. inverse of a zero-norm octonion)."""


class PreconditionError(ValueError):
    """A required mathematical precondition does not hold."""


class ConsistencyError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""
