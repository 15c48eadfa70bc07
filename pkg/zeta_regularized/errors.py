"""Exceptions raised by the zeta_regularized package."""


class ZetaRegError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ZetaRegError, ValueError):
    """Input lies outside the domain of the requested operation."""


class PoleError(DomainError):
    """Input sits on a pole. ``pole`` holds the offending point."""

    def __init__(self, message: str, pole: int | complex | float):
        super().__init__(message)
        self.pole = pole


class CapacityError(ZetaRegError, ValueError):
    """Requested index or order exceeds a fixed table size or cap."""


class ConvergenceError(ZetaRegError, ArithmeticError):
    """Iteration or quadrature did not reach its tolerance within budget."""


class ClampOverflowError(ZetaRegError, OverflowError):
    """Argument beyond the overflow clamp, or a non-finite result."""


class ConfigError(ZetaRegError, ValueError):
    """Invalid configuration value."""
