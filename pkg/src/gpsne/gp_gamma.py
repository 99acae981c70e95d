"""The Grave de Peralta gamma parameter.

The relativistic kinetic operator is ``K_GP = 2/(1+gamma) * K_S`` where
``K_S`` is the Schrodinger kinetic operator, and gamma is fixed by asking the
mean GP kinetic energy to equal ``(gamma - 1) m c^2``. Solving that condition
gives ``gamma = sqrt(1 + 2 <K_S> / (m c^2))``.

Gamma is a single number per state (not a field).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List

from .errors import DomainError

__all__ = [
    "GammaValue",
    "FixedPointReport",
    "gamma_from_kinetic",
    "gp_kinetic_scale",
    "gamma_localization",
    "gamma_fixed_point",
]


@dataclass(frozen=True)
class GammaValue:
    gamma: float
    kinetic_expectation: float


@dataclass(frozen=True)
class FixedPointReport:
    gamma_final: float
    iterations: int
    residual: float
    converged: bool
    history: List[float] = field(default_factory=list)
    damping: float = 1.0


def _relativistic_ratio(kinetic, mass, c):
    # 2 K / (m c^2), zero in the c -> inf limit
    if math.isinf(c):
        return 0.0
    return 2.0 * kinetic / (mass * c * c)


def gamma_from_kinetic(kinetic_expectation: float, mass: float, c: float) -> GammaValue:
    """gamma = sqrt(1 + 2 K / (m c^2)) for a Schrodinger kinetic expectation K."""
    if kinetic_expectation < 0:
        raise DomainError(f"kinetic expectation must be >= 0, got {kinetic_expectation!r}")
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass!r}")
    gamma = math.sqrt(1.0 + _relativistic_ratio(kinetic_expectation, mass, c))
    return GammaValue(gamma, kinetic_expectation)


def gp_kinetic_scale(gamma: float) -> float:
    """Factor 2 / (1 + gamma) relating the GP and Schrodinger kinetic operators."""
    if gamma < 1:
        raise DomainError(f"gamma must be >= 1, got {gamma!r}")
    return 2.0 / (1.0 + gamma)


def gamma_localization(l: float, lambda_c: float) -> float:
    """Gamma of a particle confined to a region of size `l`.

    ``sqrt(1 + (lambda_c / l)**2)`` with `lambda_c` the reduced Compton
    wavelength.
    """
    if not (l > 0 and lambda_c > 0):
        raise DomainError("l and lambda_c must be strictly positive")
    return math.hypot(1.0, lambda_c / l)


def _oscillating(history):
    if len(history) < 4:
        return False
    d = [b - a for a, b in zip(history[-4:-1], history[-3:])]
    alternating = d[0] * d[1] < 0 and d[1] * d[2] < 0
    return alternating and abs(d[2]) > 0.9 * abs(d[1])


def gamma_fixed_point(
    kinetic_evaluator: Callable[[float], float],
    mass: float,
    c: float,
    tol: float = 1e-11,
    max_iter: int = 100,
    damping: float = 1.0,
) -> FixedPointReport:
    """Solve the gamma self-consistency condition by damped fixed-point iteration.

    Starting from ``gamma_0 = 1`` the update is::

        gamma_{k+1} = (1 - damping) * gamma_k + damping * sqrt(1 + 2 K(gamma_k) / (m c^2))

    until ``|gamma_{k+1} - gamma_k| < tol``.

    Parameters
    ----------
    kinetic_evaluator : callable
        Maps gamma to the Schrodinger kinetic expectation of the ground state
        of the gamma-parametrized Hamiltonian.
    mass, c : float
        Particle mass and speed of light in the evaluator's units.
    tol : float
        Absolute tolerance on successive gamma iterates.
    max_iter : int
        Maximum number of updates.
    damping : float
        Mixing weight in (0, 1]. An undamped iteration that starts to
        oscillate without shrinking falls back to 0.5.

    Returns
    -------
    FixedPointReport
        ``converged`` is False when `max_iter` is exhausted; the last iterate
        is reported but must not be trusted.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if max_iter < 1:
        raise DomainError("max_iter must be >= 1")
    if not 0 < damping <= 1:
        raise DomainError("damping must lie in (0, 1]")

    gamma = 1.0
    history = [gamma]
    residual = math.inf
    for k in range(1, max_iter + 1):
        target = gamma_from_kinetic(kinetic_evaluator(gamma), mass, c).gamma
        new = (1.0 - damping) * gamma + damping * target
        residual = abs(new - gamma)
        history.append(new)
        gamma = new
        if residual < tol:
            return FixedPointReport(gamma, k, residual, True, history, damping)
        if damping == 1.0 and _oscillating(history):
            damping = 0.5
    return FixedPointReport(gamma, max_iter, residual, False, history, damping)
