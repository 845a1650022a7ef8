"""Batch toolkit for 50 Hz basketball player-tracking streams.

Drops inactive periods (player count, free-throw dwell, low-speed spell
criteria), labels measurements by possession type, and tunes the kinematic
thresholds V_min / T_vel against video-annotated ground truth with a
ROC/AUC + Youden-index sweep.
"""

from courtfilter._core import *  # noqa: F401,F403
from courtfilter._core import __doc__, __version__  # noqa: F401
