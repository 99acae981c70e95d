"""Fundamental constants, unit systems and the mass-dependent length scales.

Three unit systems are supported:

* ``SI``      -- CODATA-2018 values of hbar, G and c.
* ``PLANCK``  -- hbar = G = c = 1; masses in Planck masses, lengths in
  Planck lengths, energies in Planck energies.
* ``SOLVER``  -- hbar = G = m = 1 for a particle of mass m. Lengths are in
  units of the Diosi length and energies in units of G^2 m^5 / hbar^2. The
  speed of light is then (m_P / m)^2, so the system is mass-relative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError

__all__ = [
    "UnitSystem",
    "PhysicalConstants",
    "SI",
    "PLANCK",
    "LengthScales",
    "planck_mass",
    "planck_length",
    "planck_energy",
    "compton_reduced",
    "diosi_length",
    "diosi_length_rel",
    "scales_for_mass",
    "mass_ratio",
    "solver_length_unit",
    "solver_energy_unit",
    "solver_speed_of_light",
    "to_planck",
    "from_planck",
]

# CODATA-2018, fixed so that serialized outputs are reproducible bit for bit.
HBAR_SI = 1.054571817e-34  # J s
G_SI = 6.67430e-11  # m^3 kg^-1 s^-2
C_SI = 2.99792458e8  # m / s

_UNIT_SLACK = 8 * 2.0 ** -52


class UnitSystem(str, enum.Enum):
    SI = "si"
    PLANCK = "planck"
    SOLVER = "solver"


@dataclass(frozen=True)
class PhysicalConstants:
    """Values of hbar, G and c in a declared unit system."""

    hbar: float
    G: float
    c: float
    system: UnitSystem

    def __post_init__(self):
        for name in ("hbar", "G", "c"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"{name} must be strictly positive, got {value!r}")
        if self.system is UnitSystem.PLANCK and (self.hbar, self.G, self.c) != (1.0, 1.0, 1.0):
            raise DomainError("Planck units require hbar = G = c = 1")
        if self.system is UnitSystem.SOLVER and (self.hbar, self.G) != (1.0, 1.0):
            raise DomainError("solver units require hbar = G = 1")

    @classmethod
    def si(cls) -> "PhysicalConstants":
        return cls(HBAR_SI, G_SI, C_SI, UnitSystem.SI)

    @classmethod
    def planck(cls) -> "PhysicalConstants":
        return cls(1.0, 1.0, 1.0, UnitSystem.PLANCK)

    @classmethod
    def solver(cls, mass_over_planck: Optional[float] = None) -> "PhysicalConstants":
        """Solver units for a particle of the given mass (in Planck masses).

        Without a mass the speed of light is infinite, i.e. the
        non-relativistic limit.
        """
        if mass_over_planck is None:
            return cls(1.0, 1.0, math.inf, UnitSystem.SOLVER)
        if not mass_over_planck > 0:
            raise DomainError("mass_over_planck must be positive")
        return cls(1.0, 1.0, mass_over_planck ** -2, UnitSystem.SOLVER)


SI = PhysicalConstants.si()
PLANCK = PhysicalConstants.planck()


def _check_mass(mass):
    if not mass > 0:
        raise DomainError(f"mass must be strictly positive, got {mass!r}")


def planck_mass(consts: PhysicalConstants) -> float:
    """sqrt(hbar c / G)."""
    return math.sqrt(consts.hbar * consts.c / consts.G)


def planck_length(consts: PhysicalConstants) -> float:
    """sqrt(hbar G / c^3)."""
    return math.sqrt(consts.hbar * consts.G / consts.c ** 3)


def planck_energy(consts: PhysicalConstants) -> float:
    return planck_mass(consts) * consts.c ** 2


def mass_ratio(mass: float, consts: PhysicalConstants) -> float:
    """m / m_P computed as sqrt(G m^2 / (hbar c)); exact 1 in Planck units at m = 1."""
    _check_mass(mass)
    return mass * math.sqrt(consts.G / (consts.hbar * consts.c))


def compton_reduced(mass: float, consts: PhysicalConstants) -> float:
    """Reduced Compton wavelength hbar / (m c)."""
    _check_mass(mass)
    return consts.hbar / (mass * consts.c)


def diosi_length(mass: float, consts: PhysicalConstants) -> float:
    """Diosi length hbar^2 / (G m^3)."""
    _check_mass(mass)
    return consts.hbar ** 2 / (consts.G * mass ** 3)


def diosi_length_rel(mass: float, consts: PhysicalConstants, via: str = "mass") -> Optional[float]:
    """Relativistic Diosi length, or ``None`` above the Planck mass.

    Parameters
    ----------
    mass : float
        Particle mass in the units of `consts`.
    consts : PhysicalConstants
    via : {"mass", "compton"}
        ``"mass"`` evaluates ``l_D * sqrt(1 - (m/m_P)**4)``; ``"compton"``
        evaluates ``l_D * sqrt(1 - (lambda_C/l_D)**2)``. The two are equal
        algebraically; both are kept so each can check the other.

    Returns
    -------
    float or None
        ``None`` is the undefined marker for ``m > m_P`` where the radicand
        is negative. At ``m == m_P`` the result is exactly 0.
    """
    l_d = diosi_length(mass, consts)
    if via == "mass":
        x = mass_ratio(mass, consts) ** 2
    elif via == "compton":
        x = compton_reduced(mass, consts) / l_d
    else:
        raise ValueError(f"unknown form {via!r}")
    # a few ulps of slack so that m = m_P computed in SI still lands on 0
    if x > 1.0 + _UNIT_SLACK:
        return None
    # (1 - x)(1 + x) keeps full precision as x -> 1
    return l_d * math.sqrt(max((1.0 - x) * (1.0 + x), 0.0))


@dataclass(frozen=True)
class LengthScales:
    mass: float
    planck_length: float
    compton_reduced: float
    diosi: float
    diosi_rel: Optional[float]


def scales_for_mass(mass: float, consts: PhysicalConstants) -> LengthScales:
    return LengthScales(
        mass=mass,
        planck_length=planck_length(consts),
        compton_reduced=compton_reduced(mass, consts),
        diosi=diosi_length(mass, consts),
        diosi_rel=diosi_length_rel(mass, consts),
    )


# -- solver units -----------------------------------------------------------

def solver_length_unit(mass: float, consts: PhysicalConstants) -> float:
    """Length unit of the solver system: the Diosi length of `mass`."""
    return diosi_length(mass, consts)


def solver_energy_unit(mass: float, consts: PhysicalConstants) -> float:
    """Energy unit of the solver system, G^2 m^5 / hbar^2."""
    _check_mass(mass)
    return consts.G ** 2 * mass ** 5 / consts.hbar ** 2


def solver_speed_of_light(mass: float, consts: PhysicalConstants) -> float:
    """c expressed in solver units, hbar c / (G m^2) = (m_P / m)^2."""
    _check_mass(mass)
    return consts.hbar * consts.c / (consts.G * mass ** 2)


# -- SI <-> Planck ----------------------------------------------------------

_PLANCK_UNIT = {
    "mass": planck_mass,
    "length": planck_length,
    "energy": planck_energy,
}


def to_planck(value: float, kind: str, consts: PhysicalConstants) -> float:
    """Express `value` (a mass, length or energy in `consts` units) in Planck units."""
    return value / _PLANCK_UNIT[kind](consts)


def from_planck(value: float, kind: str, consts: PhysicalConstants) -> float:
    """Inverse of :func:`to_planck`."""
    return value * _PLANCK_UNIT[kind](consts)
