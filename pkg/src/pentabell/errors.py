"""Exception types shared across the package."""


class PentabellError(Exception):
    """Base class for all package errors."""


class InvalidInputError(PentabellError):
    """Raised when an argument violates an operation's preconditions."""


class CapacityError(PentabellError):
    """Raised when an input exceeds the size envelope an algorithm supports."""


class ConvergenceError(PentabellError):
    """Raised when an iterative solver exhausts its iteration budget.

    Carries the best iterate found so the caller can inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
