"""Exception hierarchy.

The CLI maps each family onto an exit status: configuration problems (2),
malformed surface files (3) and numeric-domain violations (4).
"""


class FracdimError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(FracdimError, ValueError):
    """Invalid domain, grid, level range or generator description."""


class InvalidDomainError(ConfigError):
    pass


class InvalidGridError(ConfigError):
    pass


class LevelError(ConfigError):
    """Box or lag level that does not align with the sample grid."""


class GridTooLargeError(ConfigError):
    pass


class SurfaceFormatError(FracdimError):
    """A surface CSV file violates the on-disk contract."""


class NumericDomainError(FracdimError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class InvalidOrderError(NumericDomainError):
    pass


class OutOfDomainError(NumericDomainError):
    pass


class IntegrationDomainError(NumericDomainError):
    """Rectangle not anchored in the quadrant required by the integral."""
