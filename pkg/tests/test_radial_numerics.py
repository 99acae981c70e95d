import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import erf

from gpsne.errors import DegenerateInputError, DomainError, PreconditionError
from gpsne.radial_numerics import (
    RadialGrid,
    RadialPotential,
    RadialWavefunction,
    apply_hamiltonian,
    hamiltonian_bands,
    hartree_potential,
    integrate,
    kinetic_expectation,
    lowest_eigenpair,
    normalize,
    potential_expectation,
    radius_diagnostics,
    sturm_count,
)


def _wf(grid, f):
    return normalize(RadialWavefunction(f(grid.nodes), grid))


def _hydrogen(n_points, r_max=50.0):
    grid = RadialGrid(r_max, n_points)
    return lowest_eigenpair(RadialPotential(-1.0 / grid.nodes, grid), 0.5)


# -- grid and normalization ----------------------------------------------

def test_grid_layout():
    grid = RadialGrid(10.0, 99)
    assert grid.spacing == pytest.approx(0.1)
    assert grid.nodes[0] == pytest.approx(0.1) and grid.nodes[-1] == pytest.approx(9.9)
    assert np.all(np.diff(grid.nodes) > 0)
    with pytest.raises(DomainError):
        RadialGrid(10.0, 15)
    with pytest.raises(DomainError):
        RadialGrid(0.0, 100)


def test_normalize():
    grid = RadialGrid(20.0, 4000)
    u = _wf(grid, lambda r: r * np.exp(-0.5 * r * r))
    assert integrate(u.values ** 2, grid) == pytest.approx(1.0, abs=1e-10)
    again = normalize(u)
    np.testing.assert_allclose(again.values, u.values, rtol=1e-12)
    scaled = normalize(RadialWavefunction(7.0 * u.values, grid))
    np.testing.assert_allclose(scaled.values, u.values, rtol=1e-12)
    with pytest.raises(DegenerateInputError):
        normalize(RadialWavefunction(np.zeros(grid.n_points), grid))


# -- Hartree potential ----------------------------------------------------

def test_hartree_requires_normalized():
    grid = RadialGrid(20.0, 400)
    u = _wf(grid, lambda r: r * np.exp(-r))
    with pytest.raises(PreconditionError):
        hartree_potential(RadialWavefunction(1.01 * u.values, grid), 1.0)


def test_hartree_gaussian_profile():
    a = 1.3
    grid = RadialGrid(20.0, 4000)
    # psi^2 ~ exp(-r^2/a^2)  <=>  u ~ r exp(-r^2 / (2 a^2))
    u = _wf(grid, lambda r: r * np.exp(-0.5 * (r / a) ** 2))
    V = hartree_potential(u, 1.0).values
    r = grid.nodes
    exact = -erf(r / a) / r
    np.testing.assert_allclose(V, exact, rtol=1e-5)
    v0 = (4.0 * V[0] - V[1]) / 3.0  # V is even in r: extrapolate in r^2
    assert v0 == pytest.approx(-2.0 / (math.sqrt(math.pi) * a), rel=1e-5)


def test_hartree_exterior_point_like():
    grid = RadialGrid(20.0, 4000)
    u = _wf(grid, lambda r: r * np.exp(-8.0 * r))
    V = hartree_potential(u, 2.5).values
    r = grid.nodes
    outside = r > 5.0
    np.testing.assert_allclose(V[outside], -2.5 / r[outside], rtol=1e-10)
    assert np.all(V < 0)


def test_hartree_constant_inside_shell():
    grid = RadialGrid(10.0, 4000)
    r = grid.nodes
    u = _wf(grid, lambda r: np.exp(-((r - 6.0) / 0.3) ** 2))
    V = hartree_potential(u, 1.0).values
    inside = r < 3.0
    spread = np.ptp(V[inside]) / abs(V[inside].mean())
    assert spread < 1e-12
    # constant equals the shell average of 1/s
    assert V[inside].mean() == pytest.approx(-integrate(u.values ** 2 / r, grid), rel=1e-12)


def test_hartree_radial_poisson():
    # d^2/dr^2 (r V) = coupling u^2 / r
    grid = RadialGrid(20.0, 4000)
    u = _wf(grid, lambda r: r * r * np.exp(-r))
    V = hartree_potential(u, 1.0).values
    r, h = grid.nodes, grid.spacing
    rv = r * V
    lhs = (rv[2:] - 2 * rv[1:-1] + rv[:-2]) / h ** 2
    rhs = u.values[1:-1] ** 2 / r[1:-1]
    assert np.max(np.abs(lhs - rhs)) < 1e-4 * np.max(rhs)


def test_hartree_tail():
    grid = RadialGrid(40.0, 4000)
    u = _wf(grid, lambda r: r * np.exp(-r))
    assert grid.r_max >= 10 * radius_diagnostics(u).r_mean
    V = hartree_potential(u, 1.0).values
    assert abs(V[-1] * grid.nodes[-1] + 1.0) < 1e-6


# -- eigenproblem ----------------------------------------------------------

def test_box_oracle():
    grid = RadialGrid(math.pi, 2000)
    pair = lowest_eigenpair(RadialPotential(np.zeros(2000), grid), 0.7)
    assert pair.energy == pytest.approx(0.7, rel=1e-5)
    assert kinetic_expectation(pair.wavefunction, 0.7) == pytest.approx(0.7, rel=1e-4)


def test_hydrogen_oracle():
    pair = _hydrogen(4000)
    assert pair.energy == pytest.approx(-0.5, rel=1e-4)
    radii = radius_diagnostics(pair.wavefunction)
    assert radii.r_mean == pytest.approx(1.5, rel=1e-4)
    assert radii.r_peak == pytest.approx(1.0, rel=1e-3)
    pot = RadialPotential(-1.0 / pair.wavefunction.grid.nodes, pair.wavefunction.grid)
    assert potential_expectation(pair.wavefunction, pot) == pytest.approx(-1.0, rel=1e-3)


def test_coulomb_strength_scaling():
    grid = RadialGrid(25.0, 4000)
    pair = lowest_eigenpair(RadialPotential(-2.0 / grid.nodes, grid), 0.5)
    assert pair.energy == pytest.approx(-2.0, rel=1e-3)


def test_harmonic_oracle():
    grid = RadialGrid(10.0, 4000)
    pair = lowest_eigenpair(RadialPotential(0.5 * grid.nodes ** 2, grid), 0.5)
    assert pair.energy == pytest.approx(1.5, rel=1e-5)


def test_richardson_second_order():
    # N + 1 doubles so h halves exactly
    errors = [abs(_hydrogen(n).energy + 0.5) for n in (999, 1999, 3999)]
    for coarse, fine in zip(errors, errors[1:]):
        assert 3.5 <= coarse / fine <= 4.5


def test_eigenpair_quality():
    grid = RadialGrid(30.0, 3000)
    V = RadialPotential(-1.0 / grid.nodes + 0.01 * grid.nodes, grid)
    pair = lowest_eigenpair(V, 0.5)
    assert pair.residual <= 1e-9 * (abs(pair.energy) + np.max(np.abs(V.values)))
    assert np.all(pair.wavefunction.values >= 0)
    diag, off = hamiltonian_bands(V, 0.5)
    assert sturm_count(diag, off, pair.energy - 1e-8) == 0
    assert sturm_count(diag, off, pair.energy + 1e-8) == 1
    x = pair.wavefunction.values
    np.testing.assert_allclose(apply_hamiltonian(diag, off, x), pair.energy * x, atol=1e-8)


def test_sturm_count_matches_dense():
    rng = np.random.default_rng(3)
    diag = rng.normal(size=60)
    off = rng.normal(size=59)
    dense = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    eig = np.linalg.eigvalsh(dense)
    for x in np.linspace(eig[0] - 1, eig[-1] + 1, 37):
        assert sturm_count(diag, off, x) == int(np.sum(eig < x))


def test_bad_kinetic_coeff():
    grid = RadialGrid(1.0, 32)
    with pytest.raises(DomainError):
        lowest_eigenpair(RadialPotential(np.zeros(32), grid), 0.0)


# -- expectations ---------------------------------------------------------

def test_kinetic_plateau_is_zero():
    # ramp up on [0, 1], plateau on [1, 9], ramp down on [9, 10]; nodes hit the corners
    grid = RadialGrid(10.0, 999)
    r = grid.nodes
    u = RadialWavefunction(np.minimum(np.minimum(r, 1.0), 10.0 - r), grid)
    assert kinetic_expectation(u, 1.0) == pytest.approx(2.0, rel=1e-12)


def test_kinetic_scaling_exact_on_rescaled_grid():
    grid = RadialGrid(30.0, 3000)
    u = _wf(grid, lambda r: r * np.exp(-r))
    t0 = kinetic_expectation(u, 0.5)
    for s in (0.25, 2.0, 5.0):
        # rescaled(s) is u(r / s) / sqrt(s), i.e. s -> 1/s in the scaling law
        assert kinetic_expectation(u.rescaled(s), 0.5) == pytest.approx(t0 / s ** 2, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.5, 2.0))
def test_kinetic_scaling(s):
    # u(r) -> sqrt(s) u(s r) multiplies <T> by s^2, up to O(h^2) discretization error
    grid = RadialGrid(60.0, 6000)
    base = _wf(grid, lambda r: r * np.exp(-r))
    scaled = _wf(grid, lambda r: math.sqrt(s) * s * r * np.exp(-s * r))
    t0 = kinetic_expectation(base, 0.5)
    assert t0 == pytest.approx(0.5, rel=1e-4)
    assert kinetic_expectation(scaled, 0.5) == pytest.approx(s * s * t0, rel=5e-4)


def test_potential_expectation_constant_and_sign():
    grid = RadialGrid(20.0, 2000)
    u = _wf(grid, lambda r: r * np.exp(-r))
    assert potential_expectation(u, RadialPotential(np.full(2000, -3.25), grid)) == pytest.approx(-3.25, rel=1e-12)
    assert potential_expectation(u, hartree_potential(u, 1.0)) < 0


def test_radius_diagnostics_hydrogenic():
    grid = RadialGrid(50.0, 4000)
    u = _wf(grid, lambda r: r * np.exp(-r))
    radii = radius_diagnostics(u)
    assert radii.r_mean == pytest.approx(1.5, rel=1e-4)
    assert radii.r_peak == pytest.approx(1.0, rel=1e-4)
    assert radii.r_rms == pytest.approx(math.sqrt(3.0), rel=1e-4)


@pytest.mark.parametrize("s", [0.5, 2.0, 3.0])
def test_radius_diagnostics_scale(s):
    grid = RadialGrid(20.0, 4000)
    u = _wf(grid, lambda r: r * np.exp(-r))
    wide = u.rescaled(s)
    base, scaled = radius_diagnostics(u), radius_diagnostics(wide)
    assert scaled.r_mean == pytest.approx(s * base.r_mean, rel=1e-12)
    assert scaled.r_peak == pytest.approx(s * base.r_peak, rel=1e-12)
    assert scaled.r_rms == pytest.approx(s * base.r_rms, rel=1e-12)
    assert integrate(wide.values ** 2, wide.grid) == pytest.approx(1.0, rel=1e-12)
