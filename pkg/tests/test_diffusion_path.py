import dataclasses
import math

import numpy as np
import pytest

from diffpath import DomainError, NumericalFailure
from diffpath.diffusion_path import (GridSchedule, PathPoint, cell_mean_velocity,
                                     entity_temperature, eulerian_convective_term, march,
                                     material_rate_along_path, replay_march)
from diffpath.eulerian_thermal import ThermalField, sample_pohlhausen_field
from diffpath.velocity_field import velocity_at

Y = (1.64337e-5, 3.28754e-5)
T = (0.334371309, 0.446520419)


@pytest.fixture(scope="module")
def default_path(scenario, coeffs):
    return march(scenario, coeffs)


def test_replay_printed_chain(scenario, coeffs):
    pts = replay_march(scenario, coeffs, Y, T)
    assert pts[0].theta == pytest.approx(24.78934, abs=5e-3)
    assert pts[1].theta == pytest.approx(24.63575, abs=5e-3)
    # frozen from this implementation
    assert pts[0].theta == pytest.approx(24.78918, abs=1e-5)
    assert pts[1].theta == pytest.approx(24.63538, abs=1e-5)
    assert math.isnan(pts[0].u_mean) and math.isnan(pts[0].x)
    assert pts[1].dt == pytest.approx(0.112149, abs=1e-6)


def test_replay_wall(scenario, coeffs):
    assert replay_march(scenario, coeffs, [0.0], [1.0])[0].theta == 25.0


@pytest.mark.parametrize("y,t", [((2e-5, 1e-5), (0.1, 0.2)), ((1e-5, 2e-5), (0.2, 0.1)),
                                 ((1e-5,), (0.0,)), ((-1e-5,), (0.1,))])
def test_replay_rejects(scenario, coeffs, y, t):
    with pytest.raises(DomainError):
        replay_march(scenario, coeffs, y, t)


def test_first_cell_velocity(scenario, coeffs):
    ub = cell_mean_velocity(0.1, 0.0, 1.25e-3, 1.64337e-5, scenario, coeffs)
    assert ub == pytest.approx(7.9e-4, rel=0.01)
    u_ul = velocity_at(0.1, 1.64337e-5, scenario, coeffs).u
    u_ur = velocity_at(0.10125, 1.64337e-5, scenario, coeffs).u
    assert ub == pytest.approx((u_ul + u_ur) / 4, rel=1e-14)


def test_freestream_cell(scenario, coeffs):
    assert cell_mean_velocity(0.1, 0.02, 1e-3, 1e-3, scenario, coeffs) == pytest.approx(0.2)


def test_cell_sizes_positive(scenario, coeffs):
    with pytest.raises(DomainError):
        cell_mean_velocity(0.1, 0.0, 0.0, 1e-5, scenario, coeffs)


def test_schedule_validation():
    with pytest.raises(DomainError):
        GridSchedule(dx0=0.0)
    with pytest.raises(DomainError):
        GridSchedule(growth_x=0.9)
    with pytest.raises(DomainError):
        GridSchedule(max_steps=0)
    s = GridSchedule(growth_x=2.0, growth_y=3.0)
    assert s.cell(2) == pytest.approx((0.00125 * 4, 1.64337e-5 * 9))


def test_path_invariants(default_path):
    a = default_path.arrays()
    assert a["step"][0] == 0 and a["t"][0] == 0.0
    assert np.all(np.diff(a["x"]) > 0) and np.all(np.diff(a["y"]) > 0)
    assert np.all(np.diff(a["t"]) > 0)
    assert np.all((a["theta"] >= 20.0) & (a["theta"] <= 25.0))
    cum = np.cumsum(a["dt"][1:])
    np.testing.assert_allclose(a["t"][1:], cum, rtol=1e-12, atol=0)
    assert default_path.diffusion_period == a["t"][-1]
    assert default_path.exit_x > 0.10


def test_monotone_cooling(default_path):
    a = default_path.arrays()
    s = a["y"][1:] / np.sqrt(a["t"][1:])
    th = a["theta"][1:]
    ok = np.diff(s) >= 0
    assert np.all(np.diff(th)[ok] <= 1e-12)


def test_exit_reason_consistent(scenario, coeffs):
    p = march(scenario, coeffs, GridSchedule(growth_x=1.053, growth_y=1.079))
    assert p.exit_reason == "reached-freestream"
    assert (p.points[-1].theta - 20.0) / 5.0 < p.exit_tolerance
    assert (p.points[-2].theta - 20.0) / 5.0 >= p.exit_tolerance


def test_max_steps_reason(scenario, coeffs):
    p = march(scenario, coeffs, GridSchedule(max_steps=5))
    assert p.exit_reason == "max-steps" and len(p) == 6


def test_zero_driving_force(scenario, coeffs):
    sc = dataclasses.replace(scenario, wall_temperature=20.0)
    p = march(sc, coeffs)
    assert len(p) == 2 and p.exit_reason == "reached-freestream"
    assert all(pt.theta == 20.0 for pt in p.points)


def test_plate_length(scenario, coeffs):
    sc = dataclasses.replace(scenario, plate_length=0.11)
    with pytest.raises(DomainError, match="plate length"):
        march(sc, coeffs)


def test_exit_tolerance_range(scenario, coeffs):
    for eps in (0.0, 0.2):
        with pytest.raises(DomainError):
            march(scenario, coeffs, exit_tolerance=eps)


def test_stationary_cell(scenario, coeffs, monkeypatch):
    import diffpath.diffusion_path as dp
    monkeypatch.setattr(dp, "cell_mean_velocity", lambda *a, **k: 0.0)
    with pytest.raises(NumericalFailure, match="step 1"):
        dp.march(scenario, coeffs)


def test_rate_constant_path():
    pts = [PathPoint(k, 0.1 + k, 1e-5 * k, 0.1, 1.0, float(k), 22.0) for k in range(4)]
    assert material_rate_along_path(pts, 1) == 0.0
    with pytest.raises(IndexError):
        material_rate_along_path(pts, 3)


def test_rate_vs_analytic_derivative(scenario, coeffs):
    # fixed y: d/dt of theta_w - dT erf(y / sqrt(4 a t)) = dT y exp(-s^2) / (sqrt(pi a) 2 t^1.5)
    y, t0, h = 2e-4, 1.0, 1e-3
    a = coeffs.thermal_diffusivity
    ts = [t0 - h, t0 + h]
    th = [entity_temperature(y, t, scenario, coeffs) for t in ts]
    pts = [PathPoint(k, 0.1, y, 0.1, (ts[k] - ts[k - 1]) if k else 0.0, ts[k], th[k])
           for k in range(2)]
    s = y / math.sqrt(4 * a * t0)
    exact = 5.0 * y * math.exp(-s * s) / (2 * math.sqrt(math.pi * a) * t0**1.5)
    assert material_rate_along_path(pts, 0) == pytest.approx(exact, rel=0.02)


def test_convective_term_linear_ramp():
    x = np.linspace(0.0, 1.0, 11)
    y = np.linspace(0.0, 1.0, 5)
    theta = np.repeat((20.0 + 3.0 * x)[:, None], 5, axis=1)
    fld = ThermalField(x, y, theta, "analytic")
    assert eulerian_convective_term(fld, 0.5, 0.5, 0.2) == pytest.approx(0.6, rel=1e-10)
    assert eulerian_convective_term(fld, 0.55, 0.3, 0.2) == pytest.approx(0.6, rel=1e-10)
    uni = ThermalField(x, y, np.full((11, 5), 20.0), "analytic")
    assert eulerian_convective_term(uni, 0.5, 0.5, 0.2) == 0.0
    with pytest.raises(DomainError):
        eulerian_convective_term(fld, 0.0, 0.5, 0.2)


def test_convection_order_of_magnitude(scenario, coeffs, default_path):
    p = default_path.points[20]
    assert p.x == pytest.approx(0.125) and p.y == pytest.approx(20 * 1.64337e-5)
    rate = material_rate_along_path(default_path, 20)
    xs = np.linspace(0.1, 0.15, 201)
    ys = np.linspace(0.0, 2e-3, 401)
    fld = sample_pohlhausen_field(xs, ys, scenario, coeffs)
    u = velocity_at(p.x, p.y, scenario, coeffs).u
    conv = eulerian_convective_term(fld, p.x, p.y, u)
    # the entity cools along its path; at fixed y the layer warms downstream
    assert rate < 0 and conv > 0
    ratio = abs(conv) / abs(rate)
    # same order of magnitude; the >0.25 threshold is in the acceptance suite
    assert 0.05 < ratio < 5
