"""
Particle in a box: Schrodinger versus Grave de Peralta levels
=============================================================

The Schrodinger levels of a box grow as ``n^2``. The relativistic levels
follow ``p^2 / ((1 + gamma) m)`` with ``gamma`` fixed by the level itself, and
they bend over to the linear ``n pi hbar c / L`` once the box is narrower than
the reduced Compton wavelength.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gpsne.box_model import spectrum
from gpsne.unit_scales import PLANCK

# %%
# Work in units with hbar = c = m = 1, so the Compton wavelength is 1 and
# the rest energy is 1. Compare a wide box and one at the Compton scale.

n_max = 12
fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=False)
for ax, width in zip(axes, (20.0, 1.0)):
    levels = spectrum(1.0, width, n_max, PLANCK)
    n = np.array([lev.level for lev in levels])
    ax.plot(n, [lev.energy_nr for lev in levels], "o", mfc="none", label="Schrodinger")
    ax.plot(n, [lev.energy_gp for lev in levels], "s-", label="GP")
    ax.plot(n, [lev.energy_expansion for lev in levels], "--", label="second-order expansion")
    ax.axhline(2.0, color="grey", lw=0.8, ls=":", label="2 mc^2")
    ax.set_yscale("log")
    ax.set_title(f"L = {width:g} lambda_C")
    ax.set_xlabel("n")
    ax.set_ylabel("E / mc^2")
    ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("box_spectrum.png", dpi=120)

# %%
# The expansion tracks the exact GP value while ``n pi lambda_C / L`` is
# small and its residual shrinks with the fourth power of that ratio.

for x in (0.2, 0.1, 0.05):
    lev = spectrum(1.0, np.pi / x, 1, PLANCK)[0]
    print(f"x = {x:5.3f}  residual / E_nr = {abs(lev.energy_gp - lev.energy_expansion) / lev.energy_nr:.3e}")
