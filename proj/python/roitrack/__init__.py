"""Elliptical-ROI pan/tilt camera tracking: geometry, controller, simulator and metrics."""

from ._roitrack import *  # noqa: F401,F403
from ._roitrack import __version__  # noqa: F401
