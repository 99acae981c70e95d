"""
How much gamma does localization cost?
======================================

Confining a particle to a region of size ``l`` gives it a kinetic energy
that, in the self-consistent treatment, corresponds to
``gamma = sqrt(1 + (lambda_C / l)^2)``. Relativistic effects switch on
around the Compton wavelength.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gpsne.gp_gamma import gamma_localization

ratio = np.geomspace(1e-2, 1e2, 400)
gamma = np.array([gamma_localization(float(x), 1.0) for x in ratio])

fig, ax = plt.subplots(figsize=(6, 4))
ax.loglog(ratio, gamma - 1.0, label="gamma - 1")
ax.loglog(ratio, 0.5 / ratio ** 2, "--", label="(lambda_C / l)^2 / 2")
ax.set_xlabel("l / lambda_C")
ax.set_ylabel("gamma - 1")
ax.legend()
fig.tight_layout()
fig.savefig("gamma_localization.png", dpi=120)

# %%
# At one Compton wavelength gamma is sqrt(2); a hundred wavelengths out it
# is within 5e-5 of one.

print(gamma_localization(1.0, 1.0), gamma_localization(100.0, 1.0))
