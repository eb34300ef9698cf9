"""Coupled relaxation-oscillator simulation and higher-order synchronization analysis."""

from oscsync._core import *  # noqa: F401,F403
from oscsync._core import __version__  # noqa: F401
