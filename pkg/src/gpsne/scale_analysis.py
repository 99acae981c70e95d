"""Localization-energy estimates and their minimizers.

For a particle localized in a region of size ``l`` the energy is estimated as

* Newtonian:     ``hbar^2 / (2 m l^2) - G m^2 / l``
* relativistic:  ``hbar^2 / ([1 + sqrt(1 + (lambda_C / l)^2)] m l^2) - G m^2 / l``

The Newtonian minimizer is the Diosi length; the relativistic one is
``l_D sqrt(1 - (m / m_P)^4)`` and does not exist for ``m >= m_P``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import mpmath
import numpy as np

from .errors import BracketError, DomainError
from .unit_scales import (
    PLANCK,
    PhysicalConstants,
    compton_reduced,
    diosi_length,
    diosi_length_rel,
    planck_length,
)

__all__ = [
    "Model",
    "EstimateCurve",
    "EstimateMinimum",
    "ScanRow",
    "energy_estimate_nr",
    "energy_estimate_rel",
    "kinetic_estimate_rel",
    "golden_section",
    "minimize_estimate",
    "mass_scan",
    "curve_sample",
]

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
# working precision (decimal digits) of the objective inside minimize_estimate
_DPS = 40


class Model(str, enum.Enum):
    NR = "nr"
    REL = "rel"


def _check_length(l):
    if not l > 0:
        raise DomainError(f"l must be strictly positive, got {l!r}")


def energy_estimate_nr(l: float, mass: float, consts: PhysicalConstants) -> float:
    _check_length(l)
    return consts.hbar ** 2 / (2.0 * mass * l * l) - consts.G * mass ** 2 / l


def kinetic_estimate_rel(l: float, mass: float, consts: PhysicalConstants) -> float:
    """Relativistic localization kinetic energy.

    ``hbar^2 / ([1 + sqrt(1 + x^2)] m l^2)`` with ``x = lambda_C / l``; this
    equals ``m c^2 (sqrt(1 + x^2) - 1)`` but stays accurate for ``x -> 0``,
    where the difference form cancels.
    """
    _check_length(l)
    x = compton_reduced(mass, consts) / l
    return consts.hbar ** 2 / ((1.0 + math.hypot(1.0, x)) * mass * l * l)


def energy_estimate_rel(l: float, mass: float, consts: PhysicalConstants) -> float:
    return kinetic_estimate_rel(l, mass, consts) - consts.G * mass ** 2 / l


_ESTIMATES = {Model.NR: energy_estimate_nr, Model.REL: energy_estimate_rel}


def golden_section(
    f: Callable[[float], object],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int = 500,
) -> Tuple[float, int]:
    """Minimize a unimodal `f` on ``[lo, hi]`` to an interval of width `tol`.

    `f` may return any totally ordered values (floats, mpmath numbers). Returns
    the midpoint of the final interval and the number of iterations.
    """
    a, b = lo, hi
    x1 = b - INVPHI * (b - a)
    x2 = a + INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while b - a > tol and it < max_iter:
        it += 1
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INVPHI * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b), it


def _mp_objective(model, mass, consts):
    # The estimate is flat to ~sqrt(eps) around its minimum, so comparing
    # doubles cannot locate it better than ~1e-8; compare in 40 digits instead.
    hbar, G, c, m = (mpmath.mpf(v) for v in (consts.hbar, consts.G, consts.c, mass))
    lam = mpmath.mpf(0) if math.isinf(consts.c) else hbar / (m * c)

    def energy(log_l):
        with mpmath.workdps(_DPS):
            l = mpmath.exp(mpmath.mpf(log_l))
            if model is Model.NR:
                kin = hbar ** 2 / (2 * m * l ** 2)
            else:
                kin = hbar ** 2 / ((1 + mpmath.sqrt(1 + (lam / l) ** 2)) * m * l ** 2)
            return kin - G * m ** 2 / l

    return energy


@dataclass(frozen=True)
class EstimateMinimum:
    length: Optional[float]
    energy: Optional[float]
    iterations: int
    diagnostic: Optional[str] = None


BOUNDARY_MINIMUM = "boundary minimum"


def minimize_estimate(
    model,
    mass: float,
    consts: PhysicalConstants,
    bracket: Optional[Tuple[float, float]] = None,
    tol_rel: float = 1e-10,
) -> EstimateMinimum:
    """Golden-section minimizer of an energy estimate over the localization size.

    The search runs in ``log l`` so `tol_rel` is a relative tolerance on the
    returned length. The default bracket is ``(1e-3 l_D, 1e3 l_D)``.

    For the relativistic model at ``m >= m_P`` the estimate has no interior
    minimum; the search then ends on the lower bracket edge and the result is
    ``length=None`` with the ``"boundary minimum"`` diagnostic.

    Raises
    ------
    BracketError
        If the search ends on a bracket edge although an interior minimum
        exists (the bracket is too narrow).
    """
    model = Model(model)
    l_d = diosi_length(mass, consts)
    lo, hi = bracket if bracket is not None else (1e-3 * l_d, 1e3 * l_d)
    if not 0 < lo < hi:
        raise DomainError(f"invalid bracket ({lo!r}, {hi!r})")

    a, b = math.log(lo), math.log(hi)
    x, it = golden_section(_mp_objective(model, mass, consts), a, b, tol_rel)
    edge = 2.0 * tol_rel
    at_edge = x - a < edge or b - x < edge
    if not at_edge:
        l = math.exp(x)
        return EstimateMinimum(l, _ESTIMATES[model](l, mass, consts), it)

    closed_form = diosi_length_rel(mass, consts)
    no_interior = model is Model.REL and not closed_form
    if no_interior and x - a < edge:
        return EstimateMinimum(None, None, it, BOUNDARY_MINIMUM)
    raise BracketError(
        f"minimum of the {model.value} estimate sits on the bracket edge "
        f"({lo:.6g}, {hi:.6g}); widen the bracket"
    )


@dataclass(frozen=True)
class ScanRow:
    mass: float
    l_D: float
    lambda_C: float
    l_P: float
    l_D_rel: Optional[float]
    l_star_numeric: Optional[float]


def mass_scan(
    mass_lo: float,
    mass_hi: float,
    n_samples: int,
    spacing: str = "log",
    consts: PhysicalConstants = PLANCK,
) -> List[ScanRow]:
    """Length scales over a range of masses, with the numerical relativistic minimizer.

    Rows with ``m > m_P`` carry ``None`` for both relativistic lengths; at
    ``m = m_P`` the closed form is 0 while the numerical minimizer is ``None``.
    """
    if not 0 < mass_lo < mass_hi:
        raise DomainError(f"need 0 < mass_lo < mass_hi, got ({mass_lo!r}, {mass_hi!r})")
    if n_samples < 2:
        raise DomainError("n_samples must be >= 2")
    if spacing == "log":
        masses = np.geomspace(mass_lo, mass_hi, n_samples)
    elif spacing == "linear":
        masses = np.linspace(mass_lo, mass_hi, n_samples)
    else:
        raise DomainError(f"unknown spacing {spacing!r}")

    rows = []
    l_p = planck_length(consts)
    for m in masses:
        m = float(m)
        minimum = minimize_estimate(Model.REL, m, consts)
        rows.append(
            ScanRow(
                mass=m,
                l_D=diosi_length(m, consts),
                lambda_C=compton_reduced(m, consts),
                l_P=l_p,
                l_D_rel=diosi_length_rel(m, consts),
                l_star_numeric=minimum.length,
            )
        )
    return rows


@dataclass(frozen=True)
class EstimateCurve:
    l: np.ndarray
    energy: np.ndarray
    model: Model
    mass: float


def curve_sample(model, mass: float, consts: PhysicalConstants, l_lo: float, l_hi: float, n_samples: int) -> EstimateCurve:
    if not 0 < l_lo < l_hi:
        raise DomainError("need 0 < l_lo < l_hi")
    if n_samples < 2:
        raise DomainError("n_samples must be >= 2")
    model = Model(model)
    l = np.geomspace(l_lo, l_hi, n_samples)
    f = _ESTIMATES[model]
    return EstimateCurve(l, np.array([f(float(x), mass, consts) for x in l]), model, mass)
