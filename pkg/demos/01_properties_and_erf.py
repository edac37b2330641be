"""
Fluid properties and the error function
=======================================

Water at 20 C: the derived diffusivities, the two routes to the Prandtl
number, and a look at the erf used by every kernel downstream.
"""

# %%
import math

import numpy as np

from diffpath import derive_coefficients, erf, table1_water
from diffpath.special_functions import erf_series_oracle

water = table1_water()
c = derive_coefficients(water)
print(f"nu    = {c.kinematic_viscosity:.6e} m^2/s")
print(f"alpha = {c.thermal_diffusivity:.6e} m^2/s")
print(f"Pr    = {c.prandtl:.6f}  (nu/alpha = {c.kinematic_viscosity / c.thermal_diffusivity:.6f})")

# %%
# Handbook tables list Pr = 6.935296 for these inputs.  Recomputing from mu,
# c_p and k gives about 0.2% more; the tables round their inputs.
print(f"deviation from the tabulated value: {100 * (c.prandtl / 6.935296 - 1):+.3f}%")

# %%
# erf against the series and the C library
z = np.linspace(-4, 4, 9)
for v, e in zip(z, erf(z)):
    print(f"{v:+.1f}  {e:+.16f}  series {erf_series_oracle(v):+.16f}  libm {math.erf(v):+.16f}")
