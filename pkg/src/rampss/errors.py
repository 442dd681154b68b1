"""Exceptions and the enumeration budget shared by the exhaustive oracles."""

#: Default cap on the number of subset / candidate evaluations an exhaustive
#: oracle may perform.  Exceeding it raises BudgetExceededError; oracles never
#: silently approximate.
DEFAULT_BUDGET = 10_000_000


class RampssError(Exception):
    """Base class for all library errors."""


class ValidationError(RampssError):
    """Malformed or inconsistent input (bad field, bad matrix, bad document)."""


class BudgetExceededError(RampssError):
    """An exhaustive oracle would need more evaluations than the budget allows."""

    def __init__(self, needed, budget, what="subset evaluations"):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"oracle infeasible: {needed} {what} exceed the budget of {budget}"
        )


class NonRealizableSharesError(ValidationError):
    """Share values inconsistent with every codeword of the outer code."""


class TheoremScopeError(ValidationError):
    """Closed-form result requested outside the hypotheses it is proved for."""


class VerificationError(RampssError):
    """A verification suite found a failing check."""


def check_budget(needed, budget, what="subset evaluations"):
    if budget is not None and needed > budget:
        raise BudgetExceededError(needed, budget, what)
