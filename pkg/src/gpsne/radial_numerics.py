"""Radial finite-difference machinery for spherically symmetric s-states.

The reduced radial function ``u(r) = sqrt(4 pi) r psi(r)`` lives on the
uniform interior nodes ``r_i = i h`` (``i = 1..N``, ``h = r_max / (N + 1)``)
with implicit zeros at ``r = 0`` and ``r = r_max``. With this convention
``int |psi|^2 d^3x = int u^2 dr``.

Every integrand used here carries a factor ``u^2`` and vanishes at both ends,
so the trapezoid rule reduces to ``h * sum(f_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import (
    BracketError,
    DegenerateInputError,
    DomainError,
    GridTooCoarseError,
    PreconditionError,
)

__all__ = [
    "RadialGrid",
    "RadialWavefunction",
    "RadialPotential",
    "Eigenpair",
    "RadiusDiagnostics",
    "integrate",
    "normalize",
    "hartree_potential",
    "hamiltonian_bands",
    "apply_hamiltonian",
    "sturm_count",
    "lowest_eigenpair",
    "kinetic_expectation",
    "potential_expectation",
    "radius_diagnostics",
]

MIN_POINTS = 16
NORM_TOL = 1e-6


@dataclass(frozen=True)
class RadialGrid:
    r_max: float
    n_points: int

    def __post_init__(self):
        if not self.r_max > 0:
            raise DomainError(f"r_max must be positive, got {self.r_max!r}")
        if self.n_points < MIN_POINTS:
            raise DomainError(f"need at least {MIN_POINTS} grid points, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return self.r_max / (self.n_points + 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(1, self.n_points + 1)

    def scaled(self, factor: float) -> "RadialGrid":
        """Same number of nodes on ``[0, factor * r_max]``."""
        return RadialGrid(self.r_max * factor, self.n_points)


@dataclass(frozen=True)
class RadialWavefunction:
    values: np.ndarray
    grid: RadialGrid

    def __post_init__(self):
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("values do not match the grid")

    @property
    def norm(self) -> float:
        return float(np.sqrt(integrate(self.values ** 2, self.grid)))

    def rescaled(self, length_unit: float) -> "RadialWavefunction":
        """Express the function on a grid whose lengths are multiplied by `length_unit`.

        ``u`` scales as ``length^{-1/2}`` so that the norm is unchanged.
        """
        return RadialWavefunction(self.values / np.sqrt(length_unit), self.grid.scaled(length_unit))


@dataclass(frozen=True)
class RadialPotential:
    values: np.ndarray
    grid: RadialGrid


def integrate(f: np.ndarray, grid: RadialGrid) -> float:
    """Trapezoid rule on ``[0, r_max]`` for an integrand vanishing at both ends."""
    return float(grid.spacing * np.sum(f))


def normalize(u: RadialWavefunction) -> RadialWavefunction:
    norm = u.norm
    if not norm > 0 or not np.isfinite(norm):
        raise DegenerateInputError("cannot normalize a zero (or non-finite) wavefunction")
    return RadialWavefunction(u.values / norm, u.grid)


def _check_normalized(u):
    n2 = integrate(u.values ** 2, u.grid)
    if abs(n2 - 1.0) > NORM_TOL:
        raise PreconditionError(f"wavefunction must be normalized (norm^2 = {n2:.3e})")


def hartree_potential(u: RadialWavefunction, coupling: float) -> RadialPotential:
    """Gravitational self-potential of the density ``|psi|^2``.

    By the shell theorem::

        V(r) = -coupling * [Q(r) / r + int_r^{r_max} u(s)^2 / s ds],
        Q(r) = int_0^r u(s)^2 ds

    with ``coupling = G m^2``. Both integrals are accumulated with the trapezoid
    rule in one forward and one backward pass.
    """
    _check_normalized(u)
    grid = u.grid
    h = grid.spacing
    r = grid.nodes
    rho = u.values ** 2
    g = rho / r

    # forward: Q(r_1) covers the segment from the implicit zero at r = 0
    q = np.empty_like(rho)
    q[0] = 0.5 * h * rho[0]
    q[1:] = q[0] + np.cumsum(0.5 * h * (rho[1:] + rho[:-1]))

    # backward: the last segment runs to the implicit zero at r_max
    seg = 0.5 * h * (g[1:] + g[:-1])
    tail = np.empty_like(rho)
    tail[-1] = 0.5 * h * g[-1]
    tail[:-1] = tail[-1] + np.cumsum(seg[::-1])[::-1]

    return RadialPotential(-coupling * (q / r + tail), grid)


# -- eigenproblem -----------------------------------------------------------

def hamiltonian_bands(V: RadialPotential, kinetic_coeff: float):
    """Diagonal and off-diagonal of ``-kinetic_coeff d^2/dr^2 + V`` (three-point stencil)."""
    if not kinetic_coeff > 0:
        raise DomainError(f"kinetic_coeff must be positive, got {kinetic_coeff!r}")
    h2 = V.grid.spacing ** 2
    diag = 2.0 * kinetic_coeff / h2 + V.values
    off = np.full(V.grid.n_points - 1, -kinetic_coeff / h2)
    return diag, off


def apply_hamiltonian(diag: np.ndarray, off: np.ndarray, x: np.ndarray) -> np.ndarray:
    y = diag * x
    y[:-1] += off * x[1:]
    y[1:] += off * x[:-1]
    return y


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix strictly below `x`.

    Counts negative pivots of the LDL^T factorization of ``T - x I``.
    """
    diag = np.asarray(diag, dtype=float).tolist()
    off2 = (np.asarray(off, dtype=float) ** 2).tolist()
    tiny = np.finfo(float).tiny
    count = 0
    q = diag[0] - x
    if q < 0:
        count += 1
    for i in range(1, len(diag)):
        if q == 0.0:
            q = tiny
        q = diag[i] - x - off2[i - 1] / q
        if q < 0:
            count += 1
    return count


@dataclass(frozen=True)
class Eigenpair:
    energy: float
    wavefunction: RadialWavefunction
    residual: float


def lowest_eigenpair(V: RadialPotential, kinetic_coeff: float) -> Eigenpair:
    """Ground state of ``-kinetic_coeff u'' + V u = E u`` with Dirichlet ends.

    The eigenvalue is isolated by Sturm-sequence bisection and the vector by
    inverse iteration (LAPACK ``stebz``/``stein``). The result is verified
    with an independent Sturm count, normalized, and given a positive sign.

    Raises
    ------
    BracketError
        If the Sturm counts do not confirm ``E`` as the lowest eigenvalue.
    GridTooCoarseError
        If the eigenvector has interior sign changes.
    """
    grid = V.grid
    diag, off = hamiltonian_bands(V, kinetic_coeff)
    vmax = float(np.max(np.abs(V.values)))
    abstol = 1e-12 * vmax if vmax > 0 else 0.0
    w, vec = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, 0), lapack_driver="stebz", tol=abstol
    )
    energy = float(w[0])
    x = vec[:, 0]

    # independent check that nothing lies below E and that E is an eigenvalue
    scale = max(abs(energy), vmax, 2.0 * kinetic_coeff / grid.spacing ** 2)
    delta = 1e-9 * scale
    below = sturm_count(diag, off, energy - delta)
    upto = sturm_count(diag, off, energy + delta)
    if below != 0 or upto < 1:
        raise BracketError(
            f"bisection did not bracket the ground state: E={energy!r}, "
            f"count(E-d)={below}, count(E+d)={upto}, d={delta:.3e}"
        )

    if x.sum() < 0:
        x = -x
    significant = np.abs(x) > 1e-10 * np.max(np.abs(x))
    signs = np.sign(x[significant])
    if np.any(signs < 0):
        n_changes = int(np.count_nonzero(np.diff(signs)))
        raise GridTooCoarseError(f"ground state has {n_changes} interior sign change(s)")

    residual = float(np.linalg.norm(apply_hamiltonian(diag, off, x) - energy * x) / np.linalg.norm(x))
    u = normalize(RadialWavefunction(np.abs(x), grid))
    return Eigenpair(energy, u, residual)


# -- expectations -----------------------------------------------------------

def kinetic_expectation(u: RadialWavefunction, kinetic_coeff: float) -> float:
    """``kinetic_coeff * int (du/dr)^2 dr``.

    The derivative is taken on the half nodes including the two boundary
    segments, which makes the result the exact quadratic form of the discrete
    Laplacian used in :func:`lowest_eigenpair`. Pass ``hbar^2 / (2 m)`` for the
    Schrodinger kinetic energy.
    """
    values = np.concatenate(([0.0], u.values, [0.0]))
    du = np.diff(values)
    return float(kinetic_coeff * np.sum(du * du) / u.grid.spacing)


def potential_expectation(u: RadialWavefunction, V: RadialPotential) -> float:
    return integrate(u.values ** 2 * V.values, u.grid)


@dataclass(frozen=True)
class RadiusDiagnostics:
    r_mean: float
    r_peak: float
    r_rms: float


def radius_diagnostics(u: RadialWavefunction) -> RadiusDiagnostics:
    """Mean, peak and rms radius of the density ``u^2``.

    The peak is refined by a parabola through the maximum node and its two
    neighbours.
    """
    r = u.grid.nodes
    h = u.grid.spacing
    rho = u.values ** 2
    r_mean = integrate(r * rho, u.grid)
    r_rms = float(np.sqrt(integrate(r * r * rho, u.grid)))

    i = int(np.argmax(rho))
    padded = np.concatenate(([0.0], rho, [0.0]))
    ym, y0, yp = padded[i], padded[i + 1], padded[i + 2]
    denom = ym - 2.0 * y0 + yp
    shift = 0.5 * (ym - yp) / denom if denom < 0 else 0.0
    return RadiusDiagnostics(r_mean, float(r[i] + shift * h), r_rms)
