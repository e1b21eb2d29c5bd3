"""Unit systems for matter-wave calculations.

Three systems cover the usual regimes:

* ``natural()``       -- hbar = m = 1, dimensionless desk-scale work.
* ``semiconductor()`` -- eV / nm / fs with an effective-mass ratio, the
  natural scale for heterostructure resonances.
* ``si_atomic()``     -- plain SI (kg, m, s, J) for cold-atom numbers;
  ``rubidium87()`` is the common special case.

A ``UnitSystem`` only carries hbar and the particle mass expressed in its
base units; every formula in the package is written in terms of those two
constants, so switching systems never touches the physics code.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy import constants as _const

# electron rest mass in eV fs^2 / nm^2:  m_e c^2 / c^2 with c in nm/fs
_C_NM_FS = _const.c * 1e-6           # 299.792458 nm/fs
_ME_EV = _const.value("electron mass energy equivalent in MeV") * 1e6
_ME_EV_FS2_NM2 = _ME_EV / _C_NM_FS**2
_HBAR_EV_FS = _const.hbar / _const.e * 1e15   # 0.6582119569 eV fs

#: atomic mass of Rb-87 in kg
RB87_MASS_KG = 86.909180527 * _const.u


@dataclass(frozen=True)
class UnitSystem:
    """hbar and particle mass in a named set of base units."""

    name: str
    hbar: float
    mass: float
    length_unit: str
    time_unit: str
    energy_unit: str

    @property
    def hbar_over_mass(self) -> float:
        return self.hbar / self.mass

    def kinetic_energy(self, k):
        """E = hbar^2 k^2 / (2m) for a (possibly complex) wavenumber."""
        return self.hbar**2 * k * k / (2.0 * self.mass)

    def wavenumber(self, energy):
        """k = sqrt(2 m E) / hbar (principal branch for complex E)."""
        import numpy as np

        return np.sqrt(2.0 * self.mass * (energy + 0j)) / self.hbar

    def velocity(self, k):
        return self.hbar * k / self.mass

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "hbar": self.hbar,
            "mass": self.mass,
            "length_unit": self.length_unit,
            "time_unit": self.time_unit,
            "energy_unit": self.energy_unit,
        }


def natural(mass: float = 1.0) -> UnitSystem:
    """hbar = 1 units with an optional dimensionless mass."""
    return UnitSystem("natural", 1.0, mass, "L", "T", "E")


def semiconductor(mass_ratio: float = 0.067) -> UnitSystem:
    """eV / nm / fs units; ``mass_ratio`` is the effective mass in units of m_e.

    The default 0.067 is the GaAs conduction-band effective mass.
    """
    return UnitSystem(
        "semiconductor",
        _HBAR_EV_FS,
        mass_ratio * _ME_EV_FS2_NM2,
        "nm",
        "fs",
        "eV",
    )


def si_atomic(mass_kg: float) -> UnitSystem:
    """SI units (m, s, J) for a particle of the given mass in kg."""
    return UnitSystem("si", _const.hbar, mass_kg, "m", "s", "J")


def rubidium87() -> UnitSystem:
    return si_atomic(RB87_MASS_KG)


_BUILTIN = {
    "natural": natural,
    "semiconductor": semiconductor,
    "si": None,  # needs a mass
    "rb87": rubidium87,
}


def from_name(name: str, mass: float | None = None) -> UnitSystem:
    """Resolve a unit system by CLI-style name.

    ``natural``, ``semiconductor`` (optional ``mass`` = effective-mass ratio),
    ``si`` (requires ``mass`` in kg) and ``rb87`` are recognized.
    """
    key = name.strip().lower()
    if key == "natural":
        return natural(mass if mass is not None else 1.0)
    if key == "semiconductor":
        return semiconductor(mass if mass is not None else 0.067)
    if key == "si":
        if mass is None:
            raise ValueError("si units require an explicit mass in kg")
        return si_atomic(mass)
    if key in ("rb87", "rubidium87"):
        return rubidium87()
    raise ValueError(f"unknown unit system {name!r}")
