"""
Schrodinger-Newton ground state
===============================

The self-gravitating ground state is found by a self-consistent field loop:
solve the radial eigenproblem in the current potential, rebuild the
potential from the new density, mix, and repeat. Lengths come out in units of
the Diosi length and energies in ``G^2 m^5 / hbar^2``.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gpsne.sne_solver import solve_gp, solve_nr
from gpsne.unit_scales import PLANCK, PhysicalConstants

sol = solve_nr(1.0, PhysicalConstants.solver())
print(f"eigenvalue {sol.eigenvalue:.8f}, T {sol.kinetic:.6f}, W {sol.potential:.6f}")
print(f"W / T = {sol.potential / sol.kinetic:.6f} (virial value -4)")

# %%
# The density profile and the convergence history of the loop.

u = sol.wavefunction
r = u.grid.nodes
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.plot(r, u.values ** 2)
ax1.set_xlim(0, 15)
ax1.set_xlabel("r / l_D")
ax1.set_ylabel("u(r)^2")
steps = np.abs(np.diff(sol.eigenvalue_history))
ax2.semilogy(np.arange(1, len(steps) + 1), steps, ".-")
ax2.set_xlabel("SCF iteration")
ax2.set_ylabel("|change in eigenvalue|")
fig.tight_layout()
fig.savefig("sne_ground_state.png", dpi=120)

# %%
# With the relativistic kinetic prefactor the state contracts as the mass
# approaches the Planck mass. The contraction is in the direction of the
# estimate ``sqrt(1 - (m / m_P)^4)`` but far milder: gamma is set by the
# average kinetic energy of the whole state, not by a single length.

for m in (0.2, 0.5, 0.8, 0.95):
    gp, nr = solve_gp(m, PLANCK), solve_nr(m, PLANCK)
    print(f"m = {m:4.2f} m_P  gamma = {gp.gamma:.6f}  r_mean ratio = {gp.r_mean / nr.r_mean:.6f}"
          f"  estimate = {np.sqrt(1 - m ** 4):.6f}")
