"""matterwave: closed-form transient dynamics of matter waves.

Sudden-shutter diffraction in time, chopped beams and pulses, trap release,
phase-space views, resonance-pole expansions for finite-range potentials,
driven quantum sources, and Tonks-Girardeau expansion -- all built on exact
Moshinsky-function superpositions, with a reproducible CLI on top.
"""

from . import units
from .units import UnitSystem, natural, rubidium87, semiconductor, si_atomic

__version__ = "0.1.0"

__all__ = [
    "UnitSystem",
    "natural",
    "semiconductor",
    "si_atomic",
    "rubidium87",
    "units",
    "__version__",
]
