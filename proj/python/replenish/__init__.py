"""Python bindings for the replenish inventory simulator."""

from ._replenish import *  # noqa: F401,F403
from ._replenish import __version__  # noqa: F401
