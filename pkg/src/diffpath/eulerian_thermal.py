"""
Steady Eulerian temperature field over a flat plate with an unheated
starting length.

Two independent routes to the same surface:

* the integral (Pohlhausen/Squire) solution: a cubic temperature profile
  ``(theta - theta_w)/(theta_inf - theta_w) = 1.5 e - 0.5 e^3`` with
  ``e = y/delta_h(x)``;
* :func:`fd_energy_march`, a finite-difference solve of the boundary-layer
  energy equation ``u theta_x + v theta_y = alpha theta_yy``.

Thermal thickness rules
-----------------------
``energy-integral`` (default)
    ``delta_h = delta (K/Pr)^(1/3) [1 - (x0/x)^(3/4)]^(1/3)``, where ``K``
    comes from the energy integral for the chosen velocity profile
    (37/84 quartic, 13/14 cubic).
``pr-cube-root``
    ``delta_h = delta Pr^(-1/3) [1 - (x0/x)^(3/4)]^(1/3)``, i.e. ``K = 1``.
    A common shorthand; with the quartic profile its layer is about 30%
    thicker than the energy balance allows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from .errors import DomainError, NumericalFailure
from .properties import DerivedCoefficients
from .velocity_field import PlateScenario, bl_thickness, get_profile, velocity_at

__all__ = [
    "THICKNESS_RULES",
    "ThermalField",
    "FDGridSpec",
    "thermal_thickness",
    "pohlhausen_temperature",
    "local_nusselt",
    "local_wall_flux",
    "sample_pohlhausen_field",
    "fd_energy_march",
]

THICKNESS_RULES = ("energy-integral", "pr-cube-root")

SQUIRE_COEFFICIENT = 0.332


@dataclass(frozen=True)
class ThermalField:
    """
    Temperature sampled on a rectangular ``(x, y)`` mesh.

    ``theta[i, j]`` is the temperature at ``(x[i], y[j])``, degC.
    """

    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    origin: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.x.ndim != 1 or self.y.ndim != 1 or self.x.size == 0 or self.y.size == 0:
            raise DomainError("field grids must be non-empty 1-D arrays")
        if np.any(np.diff(self.x) <= 0) or np.any(np.diff(self.y) <= 0):
            raise DomainError("field grids must be strictly increasing")
        if self.theta.shape != (self.x.size, self.y.size):
            raise DomainError("theta shape does not match the grids")
        if self.origin not in ("analytic", "fd-oracle"):
            raise DomainError(f"unknown field origin {self.origin!r}")


@dataclass(frozen=True)
class FDGridSpec:
    """
    Grid for :func:`fd_energy_march`.

    Stations are clustered toward `x_min` as ``x_min + (x_max - x_min) s^p``
    with uniform ``s``; the wall-normal grid is uniform on ``[0, y_max]``.
    ``y_max=None`` means ``y_span_factor * delta_h(x_max)``.  ``x_min=None``
    means the heated start (or a tiny positive x if that is 0).
    """

    x_max: float = 0.30
    nx: int = 2000
    ny: int = 401
    y_max: float | None = None
    y_span_factor: float = 2.0
    x_min: float | None = None
    cluster_power: float = 2.0


def _check_rule(rule):
    if rule not in THICKNESS_RULES:
        raise DomainError(f"unknown thickness rule {rule!r}; choose one of {THICKNESS_RULES}")


def _thickness(xa, scenario, coeffs, profile, rule):
    # xa > x0 assumed
    prof = get_profile(profile)
    k = prof.energy_constant if rule == "energy-integral" else 1.0
    delta = bl_thickness(xa, scenario, coeffs, prof)
    start = 1.0 - (scenario.heated_start / xa) ** 0.75
    return delta * (k / coeffs.prandtl) ** (1 / 3) * start ** (1 / 3)


def thermal_thickness(x, scenario: PlateScenario, coeffs: DerivedCoefficients,
                      profile="quartic", rule: str = "energy-integral"):
    """
    Thermal boundary-layer thickness ``delta_h(x)`` downstream of the heated start.

    Raises
    ------
    DomainError
        If any ``x <= x0``; the plate upstream of the heated start carries no
        thermal layer.
    """
    _check_rule(rule)
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > scenario.heated_start)):
        raise DomainError("thermal thickness is defined only for x > heated_start")
    d = _thickness(xa, scenario, coeffs, profile, rule)
    return float(d) if d.ndim == 0 else d


def pohlhausen_temperature(x, y, scenario: PlateScenario, coeffs: DerivedCoefficients,
                           profile="quartic", rule: str = "energy-integral"):
    """
    Integral-method temperature at ``(x, y)``, degC; broadcasts over arrays.

    Upstream of the heated start (``x <= x0``) the fluid is unheated and the
    free-stream temperature is returned.

    Raises
    ------
    DomainError
        If any ``y < 0``.
    """
    _check_rule(rule)
    xa, ya = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(~(ya >= 0)):
        raise DomainError("y must be >= 0")
    heated = xa > scenario.heated_start
    out = np.full(xa.shape, float(scenario.freestream_temperature))
    if np.any(heated):
        dh = _thickness(xa[heated], scenario, coeffs, profile, rule)
        e = np.clip(ya[heated] / dh, 0.0, 1.0)
        ratio = 1.5 * e - 0.5 * e**3
        out[heated] = scenario.wall_temperature - scenario.driving_difference * ratio
    return float(out) if out.ndim == 0 else out


def local_nusselt(x, scenario: PlateScenario, coeffs: DerivedCoefficients):
    """
    Squire's local Nusselt number with an unheated starting length.

    ``Nu_x = 0.332 Re_x^(1/2) Pr^(1/3) [1 - (x0/x)^(3/4)]^(-1/3)``.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > scenario.heated_start)):
        raise DomainError("local Nusselt number is defined only for x > heated_start")
    re = scenario.approach_velocity * xa / coeffs.kinematic_viscosity
    nu = (SQUIRE_COEFFICIENT * np.sqrt(re) * coeffs.prandtl ** (1 / 3)
          * (1.0 - (scenario.heated_start / xa) ** 0.75) ** (-1 / 3))
    return float(nu) if nu.ndim == 0 else nu


def local_wall_flux(x, scenario: PlateScenario, coeffs: DerivedCoefficients,
                    conductivity: float):
    """Wall heat flux ``Nu_x k (theta_w - theta_inf) / x``, W/m^2."""
    return (local_nusselt(x, scenario, coeffs) * conductivity
            * scenario.driving_difference / np.asarray(x, dtype=float))


def sample_pohlhausen_field(x, y, scenario: PlateScenario, coeffs: DerivedCoefficients,
                            profile="quartic", rule: str = "energy-integral") -> ThermalField:
    """Evaluate :func:`pohlhausen_temperature` on the tensor grid ``x`` by ``y``."""
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    theta = pohlhausen_temperature(X, Y, scenario, coeffs, profile, rule)
    meta = _metadata(profile, rule)
    return ThermalField(xs, ys, np.asarray(theta), "analytic", meta)


def _metadata(profile, rule):
    prof = get_profile(profile)
    k = prof.energy_constant if rule == "energy-integral" else 1.0
    return {"profile": prof.name, "delta_coefficient": prof.delta_coefficient,
            "thickness_rule": rule, "energy_constant": k, "prandtl_exponent": -1 / 3}


def fd_energy_march(scenario: PlateScenario, coeffs: DerivedCoefficients,
                    grid: FDGridSpec = FDGridSpec(), profile="quartic",
                    rule: str = "energy-integral") -> ThermalField:
    """
    Space-march the steady boundary-layer energy equation.

    Each station is advanced implicitly (backward difference in x, second
    difference for diffusion in y, one tridiagonal solve).  The ``v theta_y``
    term uses central differences where the cell Peclet number
    ``|v| dy / (2 alpha)`` is at most 1 and upwinding elsewhere, which keeps
    the discrete maximum principle for any alpha.

    Boundary conditions: ``theta = theta_w`` on the wall for ``x > x0`` and
    ``theta_inf`` upstream; ``theta_inf`` at ``y_max`` and at the inlet
    station ``x_min``.

    Parameters
    ----------
    grid : FDGridSpec
        Needs ``nx >= 100``, ``ny >= 200`` and ``y_max >= 2 delta_h(x_max)``.
    rule : str
        Only used to size the default ``y_max`` and to check the span.

    Raises
    ------
    DomainError
        If the grid does not meet the requirements above.
    NumericalFailure
        If a tridiagonal solve breaks down or the solution leaves the
        temperature bounds; the message names the station.
    """
    if grid.nx < 100 or grid.ny < 200:
        raise DomainError("fd grid needs nx >= 100 and ny >= 200")
    x0 = scenario.heated_start
    x_min = grid.x_min if grid.x_min is not None else (x0 if x0 > 0 else 1e-6 * grid.x_max)
    if not 0 < x_min < grid.x_max:
        raise DomainError("fd grid needs 0 < x_min < x_max")
    span_needed = 0.0
    if grid.x_max > x0:
        span_needed = 2.0 * thermal_thickness(grid.x_max, scenario, coeffs, profile, rule)
    y_max = grid.y_max if grid.y_max is not None else grid.y_span_factor * span_needed
    if not y_max > 0:
        y_max = bl_thickness(grid.x_max, scenario, coeffs, profile)
    if y_max < span_needed * (1 - 1e-12):
        raise DomainError("fd grid must span at least 2 delta_h(x_max) in y")

    s = np.linspace(0.0, 1.0, grid.nx)
    xs = x_min + (grid.x_max - x_min) * s**grid.cluster_power
    ys = np.linspace(0.0, y_max, grid.ny)
    dy = ys[1] - ys[0]
    alpha = coeffs.thermal_diffusivity
    tw, ti = scenario.wall_temperature, scenario.freestream_temperature
    lo_bound, hi_bound = min(tw, ti) - 1e-9, max(tw, ti) + 1e-9

    theta = np.empty((grid.nx, grid.ny))
    theta[0] = ti
    ab = np.zeros((3, grid.ny))
    for i in range(1, grid.nx):
        h = xs[i] - xs[i - 1]
        vel = velocity_at(xs[i], ys, scenario, coeffs, profile)
        u, v = np.asarray(vel.u), np.asarray(vel.v)
        diff = alpha / dy**2
        central = np.abs(v) * dy <= 2 * alpha
        # coefficients of theta[j-1], theta[j], theta[j+1]
        lower = np.where(central, -v / (2 * dy) - diff, -np.maximum(v, 0) / dy - diff)
        upper = np.where(central, v / (2 * dy) - diff, np.minimum(v, 0) / dy - diff)
        diag = u / h + 2 * diff + np.where(central, 0.0, np.abs(v) / dy)
        rhs = u / h * theta[i - 1]

        ab[0, 1:] = upper[:-1]
        ab[1] = diag
        ab[2, :-1] = lower[1:]
        ab[1, 0], ab[0, 1], rhs[0] = 1.0, 0.0, (tw if xs[i] > x0 else ti)
        ab[1, -1], ab[2, -2], rhs[-1] = 1.0, 0.0, ti
        try:
            row = solve_banded((1, 1), ab, rhs, check_finite=False)
        except (LinAlgError, ValueError) as exc:
            raise NumericalFailure(f"tridiagonal solve failed at station {i}: {exc}") from None
        if not np.all(np.isfinite(row)) or row.min() < lo_bound or row.max() > hi_bound:
            raise NumericalFailure(f"energy march left temperature bounds at station {i}")
        theta[i] = row

    meta = _metadata(profile, rule) | {"nx": grid.nx, "ny": grid.ny, "y_max": y_max}
    return ThermalField(xs, ys, theta, "fd-oracle", meta)
