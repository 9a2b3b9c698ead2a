"""Exception hierarchy shared by all modules."""


class EOError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(EOError, ValueError):
    """Incompatible truncation orders, windows or other parameters."""


class DomainError(EOError, ValueError):
    """An input lies outside the domain of an operation."""


class ResourceError(EOError, RuntimeError):
    """A configured size or time ceiling would be exceeded."""


class InternalError(EOError, AssertionError):
    """A self-check failed; this indicates a bug, never bad input."""
