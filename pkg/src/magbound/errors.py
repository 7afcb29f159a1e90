"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad input value. The message names the offending field."""


class SolverError(RuntimeError):
    """A numerical solver could not produce a solution."""


class DomainError(ValidationError):
    """Argument outside the mathematical domain of a special function."""
