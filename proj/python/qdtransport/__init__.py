"""Steady-state transport in quantum-dot systems coupled to fermionic leads."""

from qdtransport._core import *  # noqa: F401,F403
from qdtransport._core import __version__  # noqa: F401
