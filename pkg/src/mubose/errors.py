"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """A denominator of the requested expression vanishes."""


class ConvergenceError(RuntimeError):
    """A series could not be driven below the requested tolerance."""
