"""
Velocity profiles over the plate
================================

Compare the Pohlhausen quartic and cubic profiles with the Blasius
solution, and look at the slow near-wall cells the heat entity starts in.
"""

# %%
import numpy as np

from diffpath import PlateScenario, bl_thickness, derive_coefficients, table1_water, velocity_at
from diffpath.diffusion_path import cell_mean_velocity
from diffpath.velocity_field import default_blasius_table

c = derive_coefficients(table1_water())
sc = PlateScenario()
table = default_blasius_table()
print(f"Blasius f''(0) = {table.wall_shear:.6f}")

# %%
x = 0.1
d = bl_thickness(x, sc, c)
print(f"delta(0.1 m) = {1e3 * d:.4f} mm")
print(" y/delta   quartic    cubic   blasius")
for e in np.linspace(0, 1.2, 7):
    row = [velocity_at(x, e * d, sc, c, p).u / sc.approach_velocity
           for p in ("quartic", "cubic", "blasius")]
    print(f"  {e:4.2f}   " + "  ".join(f"{v:7.4f}" for v in row))

# %%
# The first cell is 1.25 mm long and 16 um tall, sitting on the wall.
ub = cell_mean_velocity(0.1, 0.0, 0.00125, 1.64337e-5, sc, c)
print(f"mean velocity in the first cell: {ub:.4e} m/s  ->  dt = {0.00125 / ub:.3f} s")
