"""
Lagrangian march of a heat entity along its diffusion path.

The heat entity leaves the wall at the tracking start and hops diagonally
from one fluid element to the next.  Each hop crosses a rectangular cell
whose convection velocity is the mean of the streamwise velocity at its four
corners; the hop takes ``dt = dx / u_mean``.  With ``t`` the elapsed time
since release, the entity's temperature at depth ``y`` is

    theta = theta_w - (theta_w - theta_inf) * erf(y / sqrt(4 alpha t))

i.e. pure one-dimensional conduction in the entity's own frame.  The rate of
change along the path, :func:`material_rate_along_path`, is the discrete
diffusion-path derivative; :func:`eulerian_convective_term` gives the
``u dtheta/dx`` term of the fixed-frame energy equation for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, NumericalFailure
from .eulerian_thermal import ThermalField
from .properties import DerivedCoefficients
from .special_functions import erf
from .velocity_field import PlateScenario, get_profile, velocity_at

__all__ = [
    "GridSchedule",
    "PathPoint",
    "DiffusionPath",
    "cell_mean_velocity",
    "entity_temperature",
    "march",
    "replay_march",
    "material_rate_along_path",
    "eulerian_convective_term",
]

REACHED_FREESTREAM = "reached-freestream"
MAX_STEPS = "max-steps"


@dataclass(frozen=True)
class GridSchedule:
    """
    Cell sizes for the march: step ``i`` (from 0) uses ``dx0 growth_x**i`` by
    ``dy0 growth_y**i``.
    """

    dx0: float = 0.00125
    dy0: float = 1.64337e-5
    growth_x: float = 1.0
    growth_y: float = 1.0
    max_steps: int = 200

    def __post_init__(self):
        if not (self.dx0 > 0 and self.dy0 > 0):
            raise DomainError("dx0 and dy0 must be > 0")
        if not (self.growth_x >= 1 and self.growth_y >= 1):
            raise DomainError("growth factors must be >= 1")
        if int(self.max_steps) != self.max_steps or self.max_steps < 1:
            raise DomainError("max_steps must be a positive integer")

    def cell(self, i: int) -> tuple[float, float]:
        return self.dx0 * self.growth_x**i, self.dy0 * self.growth_y**i


@dataclass(frozen=True)
class PathPoint:
    """One visited corner.  Step 0 is the release point (dt = 0, u_mean = 0)."""

    step: int
    x: float
    y: float
    u_mean: float
    dt: float
    t: float
    theta: float


@dataclass(frozen=True)
class DiffusionPath:
    points: tuple[PathPoint, ...]
    exit_reason: str
    scenario: PlateScenario
    schedule: GridSchedule
    exit_tolerance: float
    profile: str = "quartic"

    @property
    def diffusion_period(self) -> float:
        """Time from release to the last point, s."""
        return self.points[-1].t

    @property
    def exit_x(self) -> float:
        return self.points[-1].x

    def __len__(self):
        return len(self.points)

    def arrays(self) -> dict[str, np.ndarray]:
        """Column arrays keyed by PathPoint field name."""
        names = ("step", "x", "y", "u_mean", "dt", "t", "theta")
        return {n: np.array([getattr(p, n) for p in self.points]) for n in names}


def cell_mean_velocity(x, y, dx, dy, scenario: PlateScenario, coeffs: DerivedCoefficients,
                       profile="quartic") -> float:
    """Mean streamwise velocity over the four corners of the cell with lower-left corner (x, y)."""
    if not (dx > 0 and dy > 0):
        raise DomainError("cell sizes must be > 0")
    xs = np.array([x, x, x + dx, x + dx])
    ys = np.array([y, y + dy, y + dy, y])
    return float(np.mean(velocity_at(xs, ys, scenario, coeffs, profile).u))


def entity_temperature(y, t, scenario: PlateScenario, coeffs: DerivedCoefficients):
    """Temperature of an entity at depth `y` after diffusing for time `t`."""
    arg = np.asarray(y, dtype=float) / np.sqrt(4.0 * coeffs.thermal_diffusivity
                                               * np.asarray(t, dtype=float))
    th = scenario.wall_temperature - scenario.driving_difference * np.asarray(erf(arg))
    return float(th) if th.ndim == 0 else th


def _excess(theta, scenario):
    dtheta = scenario.driving_difference
    if dtheta == 0:
        return 0.0
    return (theta - scenario.freestream_temperature) / dtheta


def march(scenario: PlateScenario, coeffs: DerivedCoefficients,
          schedule: GridSchedule = GridSchedule(), exit_tolerance: float = 0.01,
          profile="quartic") -> DiffusionPath:
    """
    Follow a heat entity from ``(x1, 0)`` until it reaches the free stream.

    The march stops when the dimensionless excess temperature
    ``(theta - theta_inf)/(theta_w - theta_inf)`` drops below
    `exit_tolerance`, or after ``schedule.max_steps`` hops.

    Raises
    ------
    DomainError
        If `exit_tolerance` is outside (0, 0.1], or the path would run past
        ``scenario.plate_length``.
    NumericalFailure
        If a cell has zero mean velocity.
    """
    if not 0 < exit_tolerance <= 0.1:
        raise DomainError("exit_tolerance must lie in (0, 0.1]")
    name = get_profile(profile).name
    x, y, t = scenario.tracking_start, 0.0, 0.0
    points = [PathPoint(0, x, y, 0.0, 0.0, t, float(scenario.wall_temperature))]
    reason = MAX_STEPS
    for i in range(schedule.max_steps):
        dx, dy = schedule.cell(i)
        if scenario.plate_length is not None and x + dx > scenario.plate_length:
            raise DomainError(
                f"step {i + 1} reaches x = {x + dx:.6g} m beyond the plate length "
                f"{scenario.plate_length:.6g} m")
        ubar = cell_mean_velocity(x, y, dx, dy, scenario, coeffs, name)
        if not ubar > 0:
            raise NumericalFailure(f"zero mean velocity in the cell of step {i + 1}")
        dt = dx / ubar
        t += dt
        x += dx
        y += dy
        theta = entity_temperature(y, t, scenario, coeffs)
        points.append(PathPoint(i + 1, x, y, ubar, dt, t, theta))
        if _excess(theta, scenario) < exit_tolerance:
            reason = REACHED_FREESTREAM
            break
    return DiffusionPath(tuple(points), reason, scenario, schedule, exit_tolerance, name)


def replay_march(scenario: PlateScenario, coeffs: DerivedCoefficients,
                 y: Sequence[float], t: Sequence[float],
                 x: Sequence[float] | None = None) -> list[PathPoint]:
    """
    Apply only the entity temperature map to a given ``(y, t)`` sequence.

    No velocities are evaluated, so ``u_mean`` is NaN, as is ``x`` unless
    supplied.  ``dt`` is the increment from the previous time (from 0 for
    the first point).

    Raises
    ------
    DomainError
        If `y` is negative or not strictly increasing, or `t` is not positive
        and strictly increasing.
    """
    ya = np.asarray(y, dtype=float)
    ta = np.asarray(t, dtype=float)
    if ya.ndim != 1 or ya.shape != ta.shape or ya.size == 0:
        raise DomainError("y and t must be equal-length, non-empty sequences")
    if np.any(ya < 0) or np.any(np.diff(ya) <= 0):
        raise DomainError("y must be non-negative and strictly increasing")
    if np.any(ta <= 0) or np.any(np.diff(ta) <= 0):
        raise DomainError("t must be positive and strictly increasing")
    xa = np.full(ya.shape, math.nan) if x is None else np.asarray(x, dtype=float)
    theta = np.atleast_1d(entity_temperature(ya, ta, scenario, coeffs))
    dts = np.diff(ta, prepend=0.0)
    return [PathPoint(k + 1, float(xa[k]), float(ya[k]), math.nan, float(dts[k]),
                      float(ta[k]), float(theta[k])) for k in range(ya.size)]


def material_rate_along_path(path, i: int) -> float:
    """
    Forward difference ``(theta[i+1] - theta[i]) / dt[i+1]`` along the path, degC/s.

    `path` is a :class:`DiffusionPath` or a sequence of :class:`PathPoint`.
    """
    pts = path.points if isinstance(path, DiffusionPath) else path
    if not 0 <= i < len(pts) - 1:
        raise IndexError(f"step index {i} out of range for a path of {len(pts)} points")
    a, b = pts[i], pts[i + 1]
    return (b.theta - a.theta) / b.dt


def eulerian_convective_term(field: ThermalField, x: float, y: float, u: float) -> float:
    """
    ``u dtheta/dx`` from a sampled field, degC/s.

    If `x` is a grid station, ``dtheta/dx`` is the central difference over its
    two neighbours; otherwise it is the difference across the bracketing pair
    of stations (central about their midpoint).  Values are interpolated
    linearly in `y`.

    Raises
    ------
    DomainError
        If ``(x, y)`` is not strictly inside the field grid.
    """
    xs, ys = field.x, field.y
    if not (xs[0] < x < xs[-1] and ys[0] < y < ys[-1]):
        raise DomainError(f"({x}, {y}) is not interior to the field grid")
    k = int(np.searchsorted(xs, x))
    if math.isclose(xs[k], x, rel_tol=1e-12, abs_tol=0.0):
        i0, i1 = k - 1, k + 1
    else:
        i0, i1 = k - 1, k
    th0 = np.interp(y, ys, field.theta[i0])
    th1 = np.interp(y, ys, field.theta[i1])
    return u * (th1 - th0) / (xs[i1] - xs[i0])
