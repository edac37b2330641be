"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NumericalFailure(ArithmeticError):
    """A numerical procedure broke down (no bracket, singular system, ...)."""
