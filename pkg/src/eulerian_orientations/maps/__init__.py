"""Planar maps, orientations and the brute-force oracles built on them."""

from .combmap import *  # noqa: F401,F403
from .generate import *  # noqa: F401,F403
from .orientations import *  # noqa: F401,F403
from .patches import *  # noqa: F401,F403
from .graphs import *  # noqa: F401,F403
