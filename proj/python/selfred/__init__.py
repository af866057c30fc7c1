"""SAT decision and exact model counting from simulated oracles."""

from ._selfred import *  # noqa: F401,F403
from ._selfred import __doc__  # noqa: F401
