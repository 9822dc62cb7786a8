"""Centralized numerical tolerances.

Every operation that needs a threshold takes a ``Tolerances`` instance and
defaults to ``DEFAULT_TOL``, so acceptance runs have a single knob.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # A pivot is singular when |pivot| < pivot_scale * max|entry| * dimension.
    pivot_scale: float = 1e-13
    # Commutator check for the 2x2 commuting shortcut, relative to max entry.
    commutator: float = 1e-10


DEFAULT_TOL = Tolerances()
