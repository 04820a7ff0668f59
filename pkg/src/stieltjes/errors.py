"""Shared exception types."""


class DomainError(ValueError):
    """A point lies outside the set on which a function or measure is defined."""


class EvaluationError(ArithmeticError):
    """A user-supplied evaluator produced a non-finite value or divided by zero."""
