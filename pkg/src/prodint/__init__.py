"""Exact product intersection sets of finite and symbolic semigroups."""

from prodint.errors import BudgetExceeded, InfeasibleTarget, VerificationError
from prodint.natset import ALL, NONE, NatSet

__all__ = [
    "ALL",
    "NONE",
    "BudgetExceeded",
    "InfeasibleTarget",
    "NatSet",
    "VerificationError",
]
