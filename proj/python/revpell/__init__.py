"""Exact reversibility analysis for hyperbolic toral automorphisms."""

from ._revpell import *  # noqa: F401,F403
from ._revpell import __doc__  # noqa: F401
