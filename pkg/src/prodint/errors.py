class BudgetExceeded(RuntimeError):
    """An enumeration or table would exceed its configured size budget."""


class VerificationError(AssertionError):
    """A computed result disagrees with the value it is supposed to certify."""


class InfeasibleTarget(ValueError):
    """The requested exponent set cannot be a product intersection set (1 is missing)."""
