"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A problem definition or mesh parameter is invalid."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to meet its accuracy contract."""
