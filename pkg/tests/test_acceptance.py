"""
Acceptance suite: one test per criterion, each printing a single
PASS/FAIL line with the measured value and the tolerance.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

import json
import math

import numpy as np
import pytest

from diffpath import (FDGridSpec, GridSchedule, HigbieProfile, PlateScenario, StokesLayer,
                      derive_coefficients, erf, fd_energy_march, higbie_wall_flux, march,
                      pohlhausen_temperature, replay_march, table1_water, trinh_keey_timescale)
from diffpath.cli import main
from diffpath.config import load_preset
from diffpath.diffusion_path import eulerian_convective_term, material_rate_along_path
from diffpath.eulerian_thermal import local_wall_flux, sample_pohlhausen_field
from diffpath.similarity_kernels import stokes_fd_check
from diffpath.special_functions import erf_series_oracle
from diffpath.validation import export_path, read_path
from diffpath.velocity_field import velocity_at


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
        return ok
    return emit


@pytest.fixture(scope="module")
def base():
    fluid = table1_water()
    return fluid, derive_coefficients(fluid), PlateScenario()


def test_criterion_1_temperature_chain(report, base):
    _, c, sc = base
    pts = replay_march(sc, c, (1.64337e-5, 3.28754e-5), (0.334371309, 0.446520419))
    target = (24.78933904, 24.63574535)
    err = max(abs(p.theta - t) for p, t in zip(pts, target))
    ok = err <= 5e-3
    assert report(1, ok, f"replay theta = {pts[0].theta:.6f}, {pts[1].theta:.6f} C; "
                         f"max |err| = {err:.2e} <= 5e-3")


def test_criterion_2_properties(report, base, capsys):
    _, c, _ = base
    nu_ok = f"{c.kinematic_viscosity:.4g}" == "1.004e-06"
    a_ok = f"{c.thermal_diffusivity:.4g}" == "1.445e-07"
    dev = abs(c.prandtl / 6.935296 - 1)
    main(["properties"])
    note = "note" in json.loads(capsys.readouterr().out)
    ok = nu_ok and a_ok and dev <= 5e-3 and note
    assert report(2, ok, f"nu = {c.kinematic_viscosity:.5e}, alpha = {c.thermal_diffusivity:.5e}, "
                         f"Pr = {c.prandtl:.5f} ({100 * dev:.2f}% from 6.935296, <= 0.5%), "
                         f"inconsistency noted = {note}")


def test_criterion_3_erf(report):
    z = np.linspace(-4.0, 4.0, 1000)
    got = erf(z)
    err = max(abs(g - erf_series_oracle(float(v), 1e-12)) for g, v in zip(got, z))
    zz = np.linspace(-6.0, 6.0, 20001)
    odd = bool(np.all(erf(-zz) == -erf(zz)))
    mono = bool(np.all(np.diff(erf(zz)) >= 0))
    ok = err <= 1.5e-7 and odd and mono
    assert report(3, ok, f"max |erf - series| = {err:.2e} <= 1.5e-7; odd = {odd}; "
                         f"monotone = {mono}")


def test_criterion_4_stokes(report, base):
    _, c, sc = base
    layer = StokesLayer(c.kinematic_viscosity, sc.approach_velocity)
    y_max = 6.0 * math.sqrt(4 * c.kinematic_viscosity * 0.1)
    err = stokes_fd_check(layer, y_max, 0.1, ny=401)
    e1 = stokes_fd_check(layer, y_max, 0.1, ny=201)
    order = math.log2(e1 / err)
    ok = err <= 1e-3 * sc.approach_velocity and abs(order - 2.0) <= 0.3
    assert report(4, ok, f"L_inf = {err:.2e} m/s <= {1e-3 * sc.approach_velocity:.1e}; "
                         f"observed order = {order:.3f} (theory 2, +/-0.3)")


def test_criterion_5_eulerian_oracle(report, base):
    _, c, sc = base
    grid = FDGridSpec()
    fd = fd_energy_march(sc, c, grid)
    fine = fd_energy_march(sc, c, FDGridSpec(ny=2 * grid.ny - 1, y_max=fd.metadata["y_max"]))
    mask = fd.x >= 0.06
    X, Y = np.meshgrid(fd.x[mask], fd.y, indexing="ij")
    dtheta = sc.driving_difference
    gap = np.max(np.abs(pohlhausen_temperature(X, Y, sc, c) - fd.theta[mask])) / dtheta
    conv = np.max(np.abs(fine.theta[mask][:, ::2] - fd.theta[mask])) / dtheta
    ok = gap <= 0.03 and conv <= 0.005
    assert report(5, ok, f"max |analytic - FD| = {100 * gap:.2f}% of dtheta <= 3%; "
                         f"ny doubling = {100 * conv:.4f}% <= 0.5%")


def test_criterion_6_figure4_overlay(report, tmp_path):
    assert main(["report", "--out", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    ok = rep["rms_pct_dtheta"] <= 2.0 and rep["exit_x_m"] > 0.10 and 0 < rep["t_d_s"] < math.inf
    assert report(6, ok, f"RMS = {rep['rms_pct_dtheta']:.2f}% of dtheta (<= 2%); "
                         f"exit_x = {rep['exit_x_m']:.4f} m (> 0.10); t_d = {rep['t_d_s']:.3f} s "
                         f"({rep['point_count']} points, {rep['exit_reason']})")


def test_criterion_7_penetration_equivalence(report, base):
    fluid, c, sc = base
    prof = HigbieProfile(c.thermal_diffusivity, sc.wall_temperature,
                         sc.freestream_temperature, fluid.thermal_conductivity)
    x = np.linspace(0.10, 0.30, 41)
    q_pen = higbie_wall_flux(trinh_keey_timescale(x, sc, c), prof)
    q_sq = local_wall_flux(x, sc, c, fluid.thermal_conductivity)
    dev = float(np.max(np.abs(q_pen / q_sq - 1)))
    ok = dev <= 0.08
    assert report(7, ok, f"max |q_pen / q_Nu - 1| over x in [0.10, 0.30] = {100 * dev:.2f}% "
                         f"<= 8%")


def test_criterion_8_convection(report, base):
    _, c, sc = base
    path = march(sc, c, GridSchedule())
    i = min(range(1, len(path) - 1),
            key=lambda k: math.hypot((path.points[k].x - 0.125) / 0.125,
                                     (path.points[k].y - 3.3e-4) / 3.3e-4))
    p = path.points[i]
    rate = material_rate_along_path(path, i)
    fld = sample_pohlhausen_field(np.linspace(0.06, 0.30, 2401), np.linspace(0.0, 4e-3, 801),
                                  sc, c)
    conv = eulerian_convective_term(fld, p.x, p.y, velocity_at(p.x, p.y, sc, c).u)
    ratio = abs(conv) / abs(rate)
    ok = ratio > 0.25
    assert report(8, ok, f"at step {i} ({p.x:.4f} m, {p.y:.3e} m): |u dtheta/dx| = {abs(conv):.3f}, "
                         f"|rate along path| = {abs(rate):.3f} C/s, ratio = {ratio:.3f} (> 0.25)")


def test_criterion_9_determinism(report, tmp_path):
    names = ("path.csv", "mesh.csv", "report.json", "figure4.gnuplot")
    main(["report", "--out", str(tmp_path / "a")])
    main(["report", "--out", str(tmp_path / "b")])
    same = all((tmp_path / "a" / n).read_bytes() == (tmp_path / "b" / n).read_bytes()
               for n in names)
    export_path(read_path(tmp_path / "a" / "path.csv"), tmp_path / "rt.csv")
    rt = (tmp_path / "rt.csv").read_bytes() == (tmp_path / "a" / "path.csv").read_bytes()
    ok = same and rt
    assert report(9, ok, f"repeat run byte-identical = {same}; path CSV round-trip = {rt}")
