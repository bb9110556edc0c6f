"""Szegedy quantum walk mixing toolkit.

Quantizes finite Markov chains, computes their average mixing matrices by
independent methods, and tests for average uniform mixing.
"""

from walkmix._core import *  # noqa: F401,F403
from walkmix._core import __doc__  # noqa: F401

__version__ = "0.1.0"
