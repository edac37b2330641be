"""
Unsteady similarity solutions: Stokes' impulsively started plate and Higbie's
penetration theory, plus the diffusion time scale that maps the latter onto
the steady flat-plate thermal layer.

The Stokes kernel also serves the sweep phase of a wall layer, where the
smoothed sweep velocity plays the role of the free-stream velocity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalFailure
from .eulerian_thermal import thermal_thickness
from .properties import DerivedCoefficients
from .special_functions import erf
from .velocity_field import PlateScenario

__all__ = [
    "StokesLayer",
    "HigbieProfile",
    "HIGBIE_FLUX_COEFFICIENT",
    "stokes_velocity",
    "stokes_fd_solve",
    "stokes_fd_check",
    "higbie_temperature_ratio",
    "higbie_temperature",
    "higbie_thickness",
    "higbie_wall_flux",
    "higbie_timescale",
    "trinh_keey_timescale",
]

#: 1.5 / (2 sqrt 2), the wall-gradient constant of the cubic profile over
#: a layer of thickness 2 sqrt(2 alpha t); commonly rounded to 0.53.
HIGBIE_FLUX_COEFFICIENT = 1.5 / (2.0 * math.sqrt(2.0))


@dataclass(frozen=True)
class StokesLayer:
    kinematic_viscosity: float
    freestream_velocity: float

    def __post_init__(self):
        if not (self.kinematic_viscosity > 0 and self.freestream_velocity > 0):
            raise DomainError("StokesLayer needs nu > 0 and U > 0")


@dataclass(frozen=True)
class HigbieProfile:
    """
    Penetration of heat from a wall into an initially uniform fluid.

    `driving_temperature` is the temperature of the unpenetrated fluid, so
    ``wall_temperature - driving_temperature`` is the driving difference.
    """

    thermal_diffusivity: float
    wall_temperature: float
    driving_temperature: float
    conductivity: float

    def __post_init__(self):
        if not (self.thermal_diffusivity > 0 and self.conductivity > 0):
            raise DomainError("HigbieProfile needs alpha > 0 and k > 0")
        if self.wall_temperature == self.driving_temperature:
            raise DomainError("HigbieProfile needs a nonzero driving difference")

    @property
    def driving_difference(self) -> float:
        return self.wall_temperature - self.driving_temperature


def _positive_time(t):
    ta = np.asarray(t, dtype=float)
    if np.any(~(ta > 0)):
        raise DomainError("time must be > 0")
    return ta


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def stokes_velocity(y, t, layer: StokesLayer):
    """``u = U erf(y / sqrt(4 nu t))``, m/s."""
    ta = _positive_time(t)
    ya = np.asarray(y, dtype=float)
    if np.any(~(ya >= 0)):
        raise DomainError("y must be >= 0")
    return _out(layer.freestream_velocity
                * erf(ya / np.sqrt(4.0 * layer.kinematic_viscosity * ta)))


def stokes_fd_solve(layer: StokesLayer, y_max: float, t_end: float, ny: int = 400,
                    diffusion_number: float = 0.4):
    """
    Explicit (FTCS) solve of ``u_t = nu u_yy`` from the impulsive start.

    Initial condition ``u = U`` everywhere; for ``t > 0`` ``u(0) = 0`` and
    ``u(y_max) = U``.  The time step is the largest one that keeps
    ``nu dt / dy^2 <= diffusion_number`` and divides `t_end` evenly.

    Returns
    -------
    y, u : ndarray
        Grid and velocity profile at `t_end`.

    Raises
    ------
    NumericalFailure
        If ``diffusion_number > 0.5`` (FTCS is unstable there).
    """
    if diffusion_number > 0.5:
        raise NumericalFailure(
            f"FTCS unstable: diffusion number {diffusion_number} exceeds 0.5")
    if ny < 3 or not diffusion_number > 0:
        raise DomainError("need ny >= 3 and a positive diffusion number")
    _positive_time(t_end)
    y = np.linspace(0.0, y_max, ny)
    dy = y[1]
    nu = layer.kinematic_viscosity
    steps = max(1, math.ceil(t_end * nu / (diffusion_number * dy * dy)))
    r = nu * (t_end / steps) / dy**2
    u = np.full(ny, float(layer.freestream_velocity))
    u[0] = 0.0
    for _ in range(steps):
        u[1:-1] += r * (u[2:] - 2.0 * u[1:-1] + u[:-2])
    return y, u


def stokes_fd_check(layer: StokesLayer, y_max: float, t_end: float, ny: int = 400,
                    diffusion_number: float = 0.4) -> float:
    """
    Max-norm difference between :func:`stokes_fd_solve` and the erf solution.

    Raises
    ------
    DomainError
        If ``y_max < 6 sqrt(4 nu t_end)``; the far boundary would intrude.
    """
    _positive_time(t_end)
    if y_max < 6.0 * math.sqrt(4.0 * layer.kinematic_viscosity * t_end):
        raise DomainError("y_max must be at least 6 sqrt(4 nu t_end)")
    y, u = stokes_fd_solve(layer, y_max, t_end, ny, diffusion_number)
    return float(np.max(np.abs(u - stokes_velocity(y, t_end, layer))))


def higbie_temperature_ratio(eta):
    """Cubic penetration profile ``1.5 eta - 0.5 eta^3`` on ``[0, 1]``."""
    ea = np.asarray(eta, dtype=float)
    if np.any(~((ea >= 0) & (ea <= 1))):
        raise DomainError("eta_h must lie in [0, 1]")
    return _out(1.5 * ea - 0.5 * ea**3)


def higbie_thickness(t, profile: HigbieProfile):
    """``delta_h(t) = 2 sqrt(2 alpha t)``, m."""
    ta = _positive_time(t)
    return _out(2.0 * np.sqrt(2.0 * profile.thermal_diffusivity * ta))


def higbie_temperature(y, t, profile: HigbieProfile):
    """Temperature of the penetrated fluid at depth `y` after exposure `t`, degC."""
    dh = np.asarray(higbie_thickness(t, profile))
    ya = np.asarray(y, dtype=float)
    if np.any(~(ya >= 0)):
        raise DomainError("y must be >= 0")
    ratio = higbie_temperature_ratio(np.minimum(ya / dh, 1.0))
    return _out(profile.wall_temperature - profile.driving_difference * np.asarray(ratio))


def higbie_wall_flux(t, profile: HigbieProfile):
    """
    Wall heat flux after exposure `t`, W/m^2.

    ``q_w = 0.5303 k dtheta / sqrt(alpha t)``, identical to
    ``1.5 k dtheta / delta_h(t)``.
    """
    ta = _positive_time(t)
    return _out(HIGBIE_FLUX_COEFFICIENT * profile.conductivity * profile.driving_difference
                / np.sqrt(profile.thermal_diffusivity * ta))


def higbie_timescale(x: float, approach_velocity: float) -> float:
    """Exposure time from convection, ``x / U``."""
    if not (x > 0 and approach_velocity > 0):
        raise DomainError("need x > 0 and U > 0")
    return x / approach_velocity


def trinh_keey_timescale(x, scenario: PlateScenario, coeffs: DerivedCoefficients,
                         profile="quartic", rule: str = "energy-integral"):
    """
    Diffusion time whose penetration depth equals the steady thermal thickness.

    Solves ``2 sqrt(2 alpha t) = delta_h(x)``: ``t = delta_h(x)^2 / (8 alpha)``.
    """
    dh = np.asarray(thermal_thickness(x, scenario, coeffs, profile, rule))
    return _out(dh**2 / (8.0 * coeffs.thermal_diffusivity))
