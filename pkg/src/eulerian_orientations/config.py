"""Ceilings shared by the library and the command line.

Values come from ``EO_*`` environment variables when set, otherwise from
the defaults below.  Command-line flags override both.
"""

import os

from .errors import ConfigurationError, ResourceError

DEFAULTS = {"EO_MAX_EDGES": 6, "EO_MAX_ORDER": 64, "EO_PRECISION_BITS": 256}


def setting(name: str) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name}={raw!r} is not an integer") from None
    if value < 0:
        raise ConfigurationError(f"{name} must be non-negative")
    return value


def max_edges() -> int:
    return setting("EO_MAX_EDGES")


def max_order() -> int:
    return setting("EO_MAX_ORDER")


def precision_bits() -> int:
    return setting("EO_PRECISION_BITS")


def require(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise ResourceError(f"{what} = {value} exceeds the ceiling {limit}")
