"""Self-consistent ground state of the Schrodinger-Newton equation.

The stationary problem solved is::

    [-hbar^2 / ((1 + gamma) m) lap - G m^2 int |psi(x')|^2 / |x - x'| dx'] psi = E psi

with ``gamma = 1`` for the Newtonian (Schrodinger) case and gamma fixed by the
Grave de Peralta condition otherwise. Internally everything runs in solver
units (hbar = G = m = 1), where lengths are multiples of the Diosi length and
the speed of light is ``(m_P / m)^2``. Results are converted back to the units
of the caller's constants.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .errors import DomainError, NotConvergedError
from .gp_gamma import FixedPointReport, gamma_fixed_point
from .radial_numerics import (
    RadialGrid,
    RadialPotential,
    RadialWavefunction,
    hartree_potential,
    integrate,
    kinetic_expectation,
    lowest_eigenpair,
    normalize,
    potential_expectation,
    radius_diagnostics,
)
from .unit_scales import (
    PhysicalConstants,
    UnitSystem,
    diosi_length_rel,
    solver_energy_unit,
    solver_length_unit,
    solver_speed_of_light,
)

__all__ = [
    "ScfConfig",
    "SneSolution",
    "solve_nr",
    "solve_gp",
    "energy_breakdown",
    "SCALE_COLLAPSE",
    "NON_CONVERGENCE",
    "BEYOND_PLANCK",
]

log = logging.getLogger(__name__)

SCALE_COLLAPSE = "scale-collapse"
NON_CONVERGENCE = "non-convergence"
BEYOND_PLANCK = "beyond-planck-mass"

# collapse is declared when the density peak sits within this many grid steps of r = 0
COLLAPSE_STEPS = 10
# fraction of the norm allowed in the outer 10% of the box before warning
TAIL_WEIGHT_WARN = 1e-10


@dataclass(frozen=True)
class ScfConfig:
    """Numerical settings. Lengths (`r_max`, `initial_width`) are in Diosi lengths."""

    mixing: float = 0.5
    tol_energy: float = 1e-10
    tol_gamma: float = 1e-11
    max_scf_iter: int = 1000
    max_gamma_iter: int = 100
    r_max: float = 40.0
    n_points: int = 4000
    initial_width: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.mixing <= 1:
            raise DomainError("mixing must lie in (0, 1]")
        if not (self.tol_energy > 0 and self.tol_gamma > 0):
            raise DomainError("tolerances must be positive")
        if self.max_scf_iter < 1 or self.max_gamma_iter < 1:
            raise DomainError("iteration caps must be >= 1")
        if self.initial_width is not None and not self.initial_width > 0:
            raise DomainError("initial_width must be positive")

    @property
    def grid(self) -> RadialGrid:
        return RadialGrid(self.r_max, self.n_points)


@dataclass(frozen=True)
class SneSolution:
    """Ground state in the units of `consts`.

    `eigenvalue` is the Hamiltonian eigenvalue ``E = T + W``; `total_energy`
    is ``T + W/2``, which removes the double counting of the self-interaction.
    `kinetic` is the GP kinetic expectation and `kinetic_schrodinger` the bare
    ``(hbar^2/2m) int |grad psi|^2`` that enters gamma.
    """

    mass: float
    consts: PhysicalConstants
    eigenvalue: float
    total_energy: float
    kinetic: float
    potential: float
    gamma: float
    kinetic_schrodinger: float
    wavefunction: RadialWavefunction
    r_mean: float
    r_peak: float
    r_rms: float
    scf_iterations: int
    gamma_iterations: int
    converged: bool
    diagnostic: Optional[str] = None
    wavefunction_change: float = math.nan
    eigenvalue_history: Tuple[float, ...] = ()
    gamma_report: Optional[FixedPointReport] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def relativistic(self) -> bool:
        return self.gamma_report is not None


@dataclass
class _ScfState:
    # everything in solver units
    kinetic_coeff: float
    energy: float
    u: RadialWavefunction
    V: RadialPotential
    iterations: int
    converged: bool
    history: List[float]
    wavefunction_change: float


def _gaussian(grid, width):
    r = grid.nodes
    return normalize(RadialWavefunction(r * np.exp(-0.5 * (r / width) ** 2), grid))


def _scf(kinetic_coeff, config, start=None):
    """Potential-mixing SCF at a fixed kinetic prefactor, in solver units."""
    grid = config.grid
    if start is None:
        u = _gaussian(grid, config.initial_width or 1.0)
        V = hartree_potential(u, 1.0)
    else:
        u, V = start.u, start.V

    history = []
    energy_prev = None
    converged = False
    change = math.nan
    for it in range(1, config.max_scf_iter + 1):
        pair = lowest_eigenpair(V, kinetic_coeff)
        change = math.sqrt(integrate((pair.wavefunction.values - u.values) ** 2, grid))
        u = pair.wavefunction
        history.append(pair.energy)
        if energy_prev is not None and abs(pair.energy - energy_prev) < config.tol_energy * abs(pair.energy):
            converged = True
            break
        energy_prev = pair.energy
        V = RadialPotential(
            (1.0 - config.mixing) * V.values + config.mixing * hartree_potential(u, 1.0).values, grid
        )
    return _ScfState(kinetic_coeff, history[-1], u, V, it, converged, history, change)


def _tail_warnings(u):
    grid = u.grid
    outer = grid.nodes > 0.9 * grid.r_max
    weight = integrate(u.values[outer] ** 2, grid)
    if weight > TAIL_WEIGHT_WARN:
        return [f"r_max too small: {weight:.2e} of the norm lies in the outer 10% of the grid"]
    return []


def _collapsed(state):
    return radius_diagnostics(state.u).r_peak < COLLAPSE_STEPS * state.u.grid.spacing


def _check_inputs(mass, consts):
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass!r}")
    if consts.system is UnitSystem.SOLVER and mass != 1.0:
        raise DomainError("in solver units the particle mass is 1 by definition")


def _package(mass, consts, state, gamma, *, gamma_iterations=0, gamma_report=None, converged=True, diagnostic=None):
    length = solver_length_unit(mass, consts)
    energy = solver_energy_unit(mass, consts)
    u = state.u
    kinetic = kinetic_expectation(u, state.kinetic_coeff)
    potential = potential_expectation(u, state.V)
    radii = radius_diagnostics(u)
    return SneSolution(
        mass=mass,
        consts=consts,
        eigenvalue=state.energy * energy,
        total_energy=(kinetic + 0.5 * potential) * energy,
        kinetic=kinetic * energy,
        potential=potential * energy,
        gamma=gamma,
        kinetic_schrodinger=kinetic_expectation(u, 0.5) * energy,
        wavefunction=u.rescaled(length),
        r_mean=radii.r_mean * length,
        r_peak=radii.r_peak * length,
        r_rms=radii.r_rms * length,
        scf_iterations=state.iterations,
        gamma_iterations=gamma_iterations,
        converged=converged and state.converged,
        diagnostic=diagnostic if diagnostic or state.converged else NON_CONVERGENCE,
        wavefunction_change=state.wavefunction_change,
        eigenvalue_history=tuple(e * energy for e in state.history),
        gamma_report=gamma_report,
        warnings=_tail_warnings(u),
    )


def solve_nr(mass: float, consts: PhysicalConstants, config: ScfConfig = ScfConfig()) -> SneSolution:
    """Newtonian ground state (gamma = 1).

    Starts from a Gaussian of width `config.initial_width` (one Diosi length by
    default) and alternates mixed Hartree updates with ground-state solves
    until the relative eigenvalue change drops below `config.tol_energy`.
    An exhausted iteration cap gives ``converged=False``.
    """
    _check_inputs(mass, consts)
    state = _scf(0.5, config)
    return _package(mass, consts, state, 1.0)


class _Collapse(Exception):
    def __init__(self, state):
        self.state = state


def solve_gp(mass: float, consts: PhysicalConstants, config: ScfConfig = ScfConfig()) -> SneSolution:
    """Ground state with the Grave de Peralta kinetic prefactor ``hbar^2 / ((1 + gamma) m)``.

    The outer loop is :func:`gp_gamma.gamma_fixed_point`; each evaluation runs
    a full SCF at fixed gamma (warm-started from the previous one) and returns
    the Schrodinger kinetic expectation of the converged state. The returned
    state and `gamma` belong to the last evaluation.

    The result carries a `diagnostic` instead of passing as a clean number when

    * the density peak falls within ten grid steps of the origin
      (``"scale-collapse"``; ``converged`` is False),
    * either loop hits its cap (``"non-convergence"``),
    * the mass exceeds the Planck mass, where the relativistic Diosi length is
      undefined (``"beyond-planck-mass"``; the numbers are reported but flagged).
    """
    _check_inputs(mass, consts)
    c = solver_speed_of_light(mass, consts)
    last = {"evaluations": 0}

    def evaluate(gamma):
        last["evaluations"] += 1
        state = _scf(1.0 / (1.0 + gamma), config, start=last.get("state"))
        last["state"], last["gamma"] = state, gamma
        if _collapsed(state):
            raise _Collapse(state)
        if not state.converged:
            raise NotConvergedError(f"inner SCF did not converge at gamma={gamma!r}")
        return kinetic_expectation(state.u, 0.5)

    try:
        report = gamma_fixed_point(evaluate, 1.0, c, tol=config.tol_gamma, max_iter=config.max_gamma_iter)
    except _Collapse as exc:
        log.info("scale collapse at m=%g", mass)
        return _package(
            mass, consts, exc.state, last["gamma"], gamma_iterations=last["evaluations"],
            converged=False, diagnostic=SCALE_COLLAPSE,
        )
    except NotConvergedError:
        return _package(
            mass, consts, last["state"], last["gamma"], gamma_iterations=last["evaluations"],
            converged=False, diagnostic=NON_CONVERGENCE,
        )

    diagnostic = None
    if not report.converged:
        diagnostic = NON_CONVERGENCE
    elif diosi_length_rel(mass, consts) is None:
        diagnostic = BEYOND_PLANCK
    return _package(
        mass,
        consts,
        last["state"],
        # the gamma the reported state was solved with; it differs from
        # report.gamma_final by less than tol_gamma
        last["gamma"],
        gamma_iterations=report.iterations,
        gamma_report=report,
        converged=report.converged,
        diagnostic=diagnostic,
    )


def energy_breakdown(solution: SneSolution) -> dict:
    """``{"T", "W", "E", "E_total"}`` of a converged solution."""
    if not solution.converged:
        raise NotConvergedError("energy breakdown requires a converged solution")
    return {
        "T": solution.kinetic,
        "W": solution.potential,
        "E": solution.eigenvalue,
        "E_total": solution.kinetic + 0.5 * solution.potential,
    }
