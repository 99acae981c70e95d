"""
Length scales and the relativistic Diosi length
===============================================

For a self-gravitating particle the Newtonian balance between dispersion and
attraction sits at ``l_D = hbar^2 / (G m^3)``. With the relativistic kinetic
term the minimizer becomes ``l_D sqrt(1 - (m / m_P)^4)``. It drops to zero
at the Planck mass and has no real value beyond it.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gpsne.scale_analysis import Model, curve_sample, mass_scan
from gpsne.unit_scales import PLANCK

# %%
# Scan masses in Planck units and compare the closed form with the
# golden-section minimizer of the energy estimate.

rows = mass_scan(0.05, 2.0, 120, "log", PLANCK)
m = np.array([r.mass for r in rows])


def column(name):
    return np.array([np.nan if getattr(r, name) is None else getattr(r, name) for r in rows])


fig, ax = plt.subplots(figsize=(6, 4.5))
ax.loglog(m, column("l_D"), label="l_D")
ax.loglog(m, column("lambda_C"), label="lambda_C")
ax.loglog(m, column("l_P"), ":", label="l_P")
ax.loglog(m, column("l_D_rel"), lw=2, label="l_D_rel (closed form)")
ax.loglog(m[::6], column("l_star_numeric")[::6], "o", mfc="none", label="numerical minimizer")
ax.set_xlabel("m / m_P")
ax.set_ylabel("length / l_P")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("length_scales.png", dpi=120)

gap = np.nanmax(np.abs(column("l_star_numeric") - column("l_D_rel")) / column("l_D"))
print(f"largest closed-form vs numeric gap: {gap:.2e} l_D")

# %%
# The energy estimates themselves. Below the Planck mass the relativistic
# estimate has an interior minimum slightly inside the Newtonian one; at
# twice the Planck mass it keeps falling as the size shrinks.

fig, ax = plt.subplots(figsize=(6, 4))
for mass, style in ((0.8, "-"), (2.0, "--")):
    for model in (Model.NR, Model.REL):
        c = curve_sample(model, mass, PLANCK, 1e-2, 1e2, 300)
        ax.semilogx(c.l, c.energy * c.l, style, label=f"{model.value}, m = {mass} m_P")
ax.set_xlabel("l / l_P")
ax.set_ylabel("E * l")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("energy_estimates.png", dpi=120)
