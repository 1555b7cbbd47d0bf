"""Orthogonal polynomials, reproducing kernels and expansions on symmetric curved domains."""

from ._symdom import *  # noqa: F401,F403
from ._symdom import SymdomError, __version__  # noqa: F401
