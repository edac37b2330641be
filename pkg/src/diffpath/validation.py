"""
Overlay of Lagrangian paths on Eulerian fields, and the dataset formats.

CSV numbers are written with 17 significant digits so that a
parse-then-format cycle reproduces the file byte for byte.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .diffusion_path import DiffusionPath, PathPoint
from .errors import DomainError
from .eulerian_thermal import FDGridSpec, ThermalField, fd_energy_march, pohlhausen_temperature
from .properties import DerivedCoefficients
from .velocity_field import PlateScenario

__all__ = [
    "ComparisonReport",
    "compare_path_to_field",
    "export_field_mesh",
    "read_field_mesh",
    "export_path",
    "read_path",
    "interpolate_field",
    "write_gnuplot_script",
    "format_number",
    "MESH_HEADER",
    "PATH_HEADER",
]

MESH_HEADER = ("x_m", "y_m", "theta_C")
PATH_HEADER = ("step", "x_m", "y_m", "dt_s", "t_s", "u_mean_m_per_s", "theta_C")


def format_number(v: float) -> str:
    return format(float(v), ".17g")


@dataclass(frozen=True)
class ComparisonReport:
    """Residuals ``theta_path - theta_field`` at each path point and their statistics (degC)."""

    point_count: int
    residuals: tuple[float, ...]
    rms: float
    rms_pct_dtheta: float
    max_abs: float
    stddev: float
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"point_count": self.point_count, "rms_C": self.rms,
                "rms_pct_dtheta": self.rms_pct_dtheta, "max_abs_C": self.max_abs,
                "stddev_C": self.stddev, "residuals_C": list(self.residuals),
                "metadata": dict(self.metadata)}


def _points(path) -> Sequence[PathPoint]:
    return path.points if isinstance(path, DiffusionPath) else tuple(path)


def compare_path_to_field(path, source, scenario: PlateScenario, coeffs: DerivedCoefficients,
                          profile="quartic", rule: str = "energy-integral",
                          fd_grid: FDGridSpec | None = None) -> ComparisonReport:
    """
    Compare a path's temperatures with an Eulerian field at the same points.

    Parameters
    ----------
    path : DiffusionPath or sequence of PathPoint
    source : {"analytic", "fd-oracle"} or ThermalField
        ``"analytic"`` evaluates :func:`pohlhausen_temperature` directly at
        each point.  ``"fd-oracle"`` runs :func:`fd_energy_march` (on
        `fd_grid`, by default reaching just past the path's last x) and
        interpolates bilinearly; a ThermalField is interpolated as given.

    Raises
    ------
    DomainError
        If the path is empty or a point falls outside an interpolated field.
    """
    pts = _points(path)
    if not pts:
        raise DomainError("cannot compare an empty path")
    px = np.array([p.x for p in pts])
    py = np.array([p.y for p in pts])
    pth = np.array([p.theta for p in pts])
    meta = {"source": source if isinstance(source, str) else source.origin,
            "profile": profile, "thickness_rule": rule}
    if isinstance(path, DiffusionPath):
        s = path.schedule
        meta |= {"dx0": s.dx0, "dy0": s.dy0, "growth_x": s.growth_x, "growth_y": s.growth_y,
                 "max_steps": s.max_steps, "exit_tolerance": path.exit_tolerance}

    if isinstance(source, str) and source == "analytic":
        ref = np.asarray(pohlhausen_temperature(px, py, scenario, coeffs, profile, rule))
    else:
        if isinstance(source, ThermalField):
            fld = source
        elif source == "fd-oracle":
            grid = fd_grid or FDGridSpec(x_max=float(px.max()) * 1.001 + 1e-9)
            fld = fd_energy_march(scenario, coeffs, grid, profile, rule)
        else:
            raise DomainError(f"unknown field source {source!r}")
        ref = interpolate_field(fld, px, py)

    r = pth - ref
    dtheta = abs(scenario.driving_difference)
    rms = float(np.sqrt(np.mean(r**2)))
    return ComparisonReport(
        point_count=len(pts),
        residuals=tuple(float(v) for v in r),
        rms=rms,
        rms_pct_dtheta=100.0 * rms / dtheta if dtheta > 0 else 0.0,
        max_abs=float(np.max(np.abs(r))),
        stddev=float(np.std(r)),
        metadata=meta,
    )


def interpolate_field(fld: ThermalField, px, py) -> np.ndarray:
    """Bilinear interpolation of `fld` at the points ``(px[k], py[k])``."""
    outside = [(float(a), float(b)) for a, b in zip(px, py)
               if not (fld.x[0] <= a <= fld.x[-1] and fld.y[0] <= b <= fld.y[-1])]
    if outside:
        raise DomainError(f"path points outside the field grid: {outside}")
    interp = RegularGridInterpolator((fld.x, fld.y), fld.theta, method="linear")
    return interp(np.column_stack([px, py]))


def _open_for_write(destination):
    if isinstance(destination, (str, os.PathLike)):
        return open(destination, "w", newline="", encoding="utf-8")
    return destination


def _write_rows(destination, header, rows: Iterable[Sequence[str]]) -> int:
    fh = _open_for_write(destination)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        n = 0
        for row in rows:
            w.writerow(row)
            n += 1
        return n
    finally:
        if fh is not destination:
            fh.close()


def export_field_mesh(fld: ThermalField, destination) -> int:
    """
    Write ``x_m,y_m,theta_C`` rows, x-major; returns the number of data rows.

    `destination` is a path or a text file object.
    """
    if fld.x.size == 0 or fld.y.size == 0:
        raise DomainError("cannot export an empty field")
    rows = ((format_number(xv), format_number(yv), format_number(fld.theta[i, j]))
            for i, xv in enumerate(fld.x) for j, yv in enumerate(fld.y))
    return _write_rows(destination, MESH_HEADER, rows)


def read_field_mesh(source, origin: str = "analytic") -> ThermalField:
    """Inverse of :func:`export_field_mesh`."""
    data = _read_table(source, MESH_HEADER)
    x = np.unique(data[:, 0])
    y = np.unique(data[:, 1])
    if x.size * y.size != data.shape[0]:
        raise DomainError("mesh rows do not form a complete tensor grid")
    return ThermalField(x, y, data[:, 2].reshape(x.size, y.size), origin)


def export_path(path, destination) -> int:
    """Write one row per path point; returns the number of data rows."""
    pts = _points(path)
    if not pts:
        raise DomainError("cannot export an empty path")
    rows = ((str(p.step), format_number(p.x), format_number(p.y), format_number(p.dt),
             format_number(p.t), format_number(p.u_mean), format_number(p.theta))
            for p in pts)
    return _write_rows(destination, PATH_HEADER, rows)


def read_path(source) -> list[PathPoint]:
    """Parse a file written by :func:`export_path`."""
    data = _read_table(source, PATH_HEADER)
    return [PathPoint(int(r[0]), *(float(r[k]) for k in (1, 2, 5, 3, 4, 6))) for r in data]


def _read_table(source, header) -> np.ndarray:
    if isinstance(source, (str, os.PathLike)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    reader = csv.reader(io.StringIO(text))
    got = next(reader, None)
    if got is None or tuple(got) != tuple(header):
        raise DomainError(f"expected header {','.join(header)}, got {got}")
    rows = [[float(v) for v in row] for row in reader if row]
    return np.array(rows, dtype=float).reshape(-1, len(header))


_GNUPLOT_TEMPLATE = """\
# Eulerian temperature surface with the Lagrangian diffusion path overlaid.
# Usage: gnuplot -persist {script}
set datafile separator ','
set key autotitle columnhead
set xlabel 'x [m]'
set ylabel 'y [m]'
set zlabel 'theta [C]' rotate
set ticslevel 0
set palette rgbformulae 33,13,10
set view 60, 300
splot '{mesh}' using 1:2:3 with points pointtype 7 pointsize 0.3 palette title 'Eulerian field', \\
      '{path}' using 2:3:7 with points pointtype 7 pointsize 1.2 linecolor rgb 'red' title 'diffusion path'
"""


def write_gnuplot_script(destination, mesh_name: str = "mesh.csv",
                         path_name: str = "path.csv") -> None:
    """Write a gnuplot script rendering the mesh as a surface and the path as a scatter."""
    name = os.path.basename(os.fspath(destination))
    Path(destination).write_text(
        _GNUPLOT_TEMPLATE.format(script=name, mesh=mesh_name, path=path_name),
        encoding="utf-8")
