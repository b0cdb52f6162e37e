"""Exception hierarchy shared by all modules."""


class StairmajError(Exception):
    """Base class for errors raised by this package."""


class DomainError(StairmajError, ValueError):
    """Division by zero or an argument outside an operation's domain."""


class NotPolynomialError(StairmajError, ArithmeticError):
    """A rational value was required to be a Laurent polynomial but is not."""

    def __init__(self, message, denominator=None):
        super().__init__(message)
        self.denominator = denominator


class ValidationError(StairmajError, ValueError):
    """Invalid user-facing input (shape, parameters, CLI arguments)."""


class ResourceLimitError(StairmajError):
    """A configured size limit would be exceeded."""


class InadmissibleError(StairmajError):
    """A parameter specialization makes some denominator vanish."""


class InvariantError(StairmajError, AssertionError):
    """A result violated a mathematical invariant; indicates a bug."""
