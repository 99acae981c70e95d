"""Grave de Peralta relativistic corrections for Schrodinger-type problems.

Modules
-------
unit_scales     constants, unit systems, Planck/Compton/Diosi length scales
gp_gamma        the gamma parameter and its self-consistency fixed point
box_model       particle-in-a-box spectra and reference comparison
radial_numerics radial grid, Hartree potential, ground-state eigensolver
sne_solver      self-consistent Schrodinger-Newton ground state
scale_analysis  localization-energy estimates, minimizers and mass scans
cli             command-line interface (``gpsne``)
"""

__version__ = "0.1.0"

from .unit_scales import (  # noqa: E402
    PLANCK,
    SI,
    LengthScales,
    PhysicalConstants,
    UnitSystem,
    compton_reduced,
    diosi_length,
    diosi_length_rel,
    planck_length,
    planck_mass,
    scales_for_mass,
)
from .gp_gamma import gamma_fixed_point, gamma_from_kinetic, gamma_localization, gp_kinetic_scale  # noqa: E402
from .box_model import BoxSpec, energy_expansion, energy_gp, energy_nr, gamma_box, spectrum  # noqa: E402
from .sne_solver import ScfConfig, SneSolution, energy_breakdown, solve_gp, solve_nr  # noqa: E402
from .scale_analysis import (  # noqa: E402
    curve_sample,
    energy_estimate_nr,
    energy_estimate_rel,
    mass_scan,
    minimize_estimate,
)
