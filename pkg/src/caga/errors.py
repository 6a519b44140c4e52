"""Exception types shared across the package."""


class CagaError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(CagaError, ValueError):
    """A configuration value is out of range or internally inconsistent."""


class BoundsError(CagaError, ValueError):
    """A design value lies outside its variable bounds."""


class StructureError(CagaError, ValueError):
    """Mismatched genome layouts, dimensions, or malformed input data."""


class EvaluationError(CagaError, ArithmeticError):
    """An objective produced a non-finite fitness value."""


class InstabilityError(CagaError, ArithmeticError):
    """The assembled stiffness system is singular (kinematically unstable)."""
