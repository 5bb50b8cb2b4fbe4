"""N-level Friedrichs model: resonance poles, survival amplitudes and Gamov data."""

from ._friedrichs import *  # noqa: F401,F403
from ._friedrichs import __version__  # noqa: F401
