"""Exception hierarchy shared by all modules.

The CLI maps :class:`ComputationError` to exit status 2 and
:class:`VerificationMismatch` to exit status 3.  :class:`ParseError` is bad
user input and exits like a usage error (status 1).
"""


class QHeisError(Exception):
    """Base class for every error raised by this package."""


class ComputationError(QHeisError):
    """A requested computation cannot be carried out."""


class UnsupportedModulusError(ComputationError, ValueError):
    pass


class LimitDoesNotExistError(ComputationError, ArithmeticError):
    pass


class NotInvertibleError(ComputationError, ZeroDivisionError):
    pass


class DomainError(ComputationError, ValueError):
    """Argument outside the domain of an operation (bad index, negative
    exponent on a non-invertible generator, ...)."""


class ModeMismatchError(ComputationError, TypeError):
    """Elements with different coefficient modes were combined."""


class ValidationError(ComputationError, ValueError):
    """A malformed specification or input object."""


class InconsistencyError(ComputationError):
    """An internal consistency check failed; signals an engine bug."""


class DegenerateBlockError(ComputationError):
    pass


class ParseError(QHeisError, ValueError):
    """Malformed expression text; carries the 1-based line and column."""

    def __init__(self, msg: str, line: int = 0, column: int = 0):
        super().__init__(msg)
        self.line = line
        self.column = column


class VerificationMismatch(QHeisError):
    """Two independent routes to the same quantity disagree."""
