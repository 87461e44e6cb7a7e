"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An argument violates a documented precondition (divisibility, range, ...)."""


class BudgetError(RuntimeError):
    """An enumeration or table would exceed its configured size budget."""


class RoundingError(ArithmeticError):
    """A floating-point quantity that must be an integer is not close to one."""


class VerificationError(AssertionError):
    """A checked identity or congruence failed."""
