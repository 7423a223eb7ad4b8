"""Nodal statistics of random arithmetic waves restricted to surfaces."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
