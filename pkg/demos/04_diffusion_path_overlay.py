"""
Following a heat entity across the layer
========================================

March the heat entity released at x = 0.10 m, compare its temperatures
with the Eulerian field at the same points, and weigh the convective term
against the rate of change along the path.  Files for a gnuplot surface
plus scatter are written to ./figure4_out.
"""

# %%
from pathlib import Path

import numpy as np

from diffpath import derive_coefficients, march
from diffpath.config import load_preset
from diffpath.diffusion_path import eulerian_convective_term, material_rate_along_path
from diffpath.eulerian_thermal import sample_pohlhausen_field
from diffpath.validation import (compare_path_to_field, export_field_mesh, export_path,
                                 write_gnuplot_script)
from diffpath.velocity_field import velocity_at

cfg = load_preset("paper-table1")
c = derive_coefficients(cfg.fluid)
sc = cfg.scenario
path = march(sc, c, cfg.schedule, cfg.exit_tolerance)
print(f"{len(path)} points, exit at x = {path.exit_x:.4f} m after {path.diffusion_period:.3f} s "
      f"({path.exit_reason})")

# %%
rep = compare_path_to_field(path, "analytic", sc, c)
print(f"path - field: RMS {rep.rms:.3f} C ({rep.rms_pct_dtheta:.2f}% of dtheta), "
      f"max {rep.max_abs:.3f} C")
alt = compare_path_to_field(path, "analytic", sc, c, rule="pr-cube-root")
print(f"against the thicker pr-cube-root layer: RMS {alt.rms_pct_dtheta:.2f}% of dtheta")

# %%
out = Path("figure4_out")
out.mkdir(exist_ok=True)
fld = sample_pohlhausen_field(np.linspace(0.06, 0.30, 120), np.linspace(0, 6e-3, 80), sc, c)
export_field_mesh(fld, out / "mesh.csv")
export_path(path, out / "path.csv")
write_gnuplot_script(out / "figure4.gnuplot")
print(f"wrote {out}/mesh.csv, path.csv, figure4.gnuplot")

# %%
fine = sample_pohlhausen_field(np.linspace(0.06, 0.30, 2401), np.linspace(0, 4e-3, 801), sc, c)
print(" step      x        y      D/Dt   u dth/dx  ratio")
for i in range(4, 24, 4):
    p = path.points[i]
    rate = material_rate_along_path(path, i)
    conv = eulerian_convective_term(fine, p.x, p.y, velocity_at(p.x, p.y, sc, c).u)
    print(f"{i:5d}  {p.x:.4f}  {p.y:.2e}  {rate:7.3f}  {conv:7.3f}  {abs(conv / rate):5.3f}")
