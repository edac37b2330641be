"""
Penetration theory on a steady plate
====================================

Higbie's transient layer reproduces the steady wall flux once the
exposure time is chosen from the steady thermal thickness,
``t* = delta_h(x)^2 / (8 alpha)``, rather than the residence time ``x/U``.
"""

# %%
import numpy as np

from diffpath import (HigbieProfile, PlateScenario, derive_coefficients, higbie_timescale,
                      higbie_wall_flux, table1_water, trinh_keey_timescale)
from diffpath.eulerian_thermal import local_wall_flux

water = table1_water()
c = derive_coefficients(water)
sc = PlateScenario()
prof = HigbieProfile(c.thermal_diffusivity, sc.wall_temperature, sc.freestream_temperature,
                     water.thermal_conductivity)

# %%
print("   x      t*      x/U    q(t*)    q(x/U)   q_Squire")
for x in np.linspace(0.10, 0.30, 5):
    ts = trinh_keey_timescale(x, sc, c)
    th = higbie_timescale(x, sc.approach_velocity)
    print(f"{x:5.2f}  {ts:6.3f}  {th:6.3f}  {higbie_wall_flux(ts, prof):7.1f}  "
          f"{higbie_wall_flux(th, prof):7.1f}  {local_wall_flux(x, sc, c, water.thermal_conductivity):7.1f}")
