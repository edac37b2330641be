"""
Laminar flat-plate boundary-layer velocity field.

The host flow for the heat entity is the zero-pressure-gradient layer over a
flat plate.  Three profile families are available:

``quartic``
    Pohlhausen's integral-method profile ``u/U = 2e - 2e^3 + e^4`` with
    ``delta = sqrt(1260/37) sqrt(nu x / U)`` (5.836).  The default.
``cubic``
    ``u/U = 1.5e - 0.5e^3`` with ``delta = sqrt(280/13) sqrt(nu x / U)`` (4.641).
``blasius``
    The similarity solution, tabulated by :func:`blasius_solve`.

For the polynomial families the wall-normal velocity follows from continuity
in closed form: with ``e = y/delta(x)`` and ``delta ~ sqrt(x)``,
``v = U delta/(2x) * (e f(e) - F(e))`` where ``F`` is the antiderivative of
the shape ``f``.  Above the layer edge ``e`` is clamped to 1, so ``u = U`` and
``v`` keeps its edge value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, NumericalFailure
from .properties import DerivedCoefficients

__all__ = [
    "PlateScenario",
    "VelocitySample",
    "VelocityProfile",
    "PROFILES",
    "get_profile",
    "BlasiusTable",
    "blasius_solve",
    "default_blasius_table",
    "bl_thickness",
    "velocity_at",
    "blasius_velocity_at",
]


@dataclass(frozen=True)
class PlateScenario:
    """
    Flat plate with an unheated starting length.

    The plate is at the free-stream temperature upstream of `heated_start`
    and at `wall_temperature` downstream of it.  The heat entity is released
    from the wall at `tracking_start`.

    Equal wall and free-stream temperatures are accepted (the zero-driving-
    force limit); the JSON config layer rejects them for real runs.
    """

    approach_velocity: float = 0.2
    wall_temperature: float = 25.0
    freestream_temperature: float = 20.0
    heated_start: float = 0.05
    tracking_start: float = 0.10
    plate_length: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.approach_velocity) and self.approach_velocity > 0):
            raise DomainError("approach_velocity must be > 0")
        for name in ("wall_temperature", "freestream_temperature"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not (math.isfinite(self.heated_start) and self.heated_start >= 0):
            raise DomainError("heated_start must be >= 0")
        if not self.tracking_start > self.heated_start:
            raise DomainError("tracking_start must exceed heated_start")
        if self.plate_length is not None and not self.plate_length > self.tracking_start:
            raise DomainError("plate_length must exceed tracking_start")

    @property
    def driving_difference(self) -> float:
        """theta_w - theta_inf, degC."""
        return self.wall_temperature - self.freestream_temperature


@dataclass(frozen=True)
class VelocitySample:
    """Streamwise and wall-normal velocity (m/s); scalars or broadcast arrays."""

    u: float | np.ndarray
    v: float | np.ndarray


@dataclass(frozen=True)
class BlasiusTable:
    """Blasius solution ``f''' + f f''/2 = 0`` sampled on a uniform eta grid."""

    eta: np.ndarray
    f: np.ndarray
    fp: np.ndarray
    fpp: np.ndarray

    @property
    def wall_shear(self) -> float:
        """f''(0)."""
        return float(self.fpp[0])

    @property
    def eta_max(self) -> float:
        return float(self.eta[-1])


@dataclass(frozen=True)
class VelocityProfile:
    """
    A boundary-layer profile family.

    `energy_constant` is the constant ``K`` in the integral energy balance
    ``zeta^3 = (K/Pr) [1 - (x0/x)^(3/4)]`` for the thermal-to-momentum
    thickness ratio ``zeta`` when a cubic temperature profile rides on this
    velocity profile.
    """

    name: str
    delta_coefficient: float
    energy_constant: float
    shape: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    continuity: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)


def _quartic(e):
    return 2 * e - 2 * e**3 + e**4


def _quartic_v(e):
    return e**2 - 1.5 * e**4 + 0.8 * e**5


def _cubic(e):
    return 1.5 * e - 0.5 * e**3


def _cubic_v(e):
    return 0.75 * e**2 - 0.375 * e**4


# Squire's 0.332 = 1.5 / (C_delta * K^(1/3)) defines K for the tabulated profile.
_BLASIUS_DELTA99 = 4.91

PROFILES: dict[str, VelocityProfile] = {
    "quartic": VelocityProfile("quartic", math.sqrt(1260 / 37), 37 / 84, _quartic, _quartic_v),
    "cubic": VelocityProfile("cubic", math.sqrt(280 / 13), 13 / 14, _cubic, _cubic_v),
    "blasius": VelocityProfile("blasius", _BLASIUS_DELTA99,
                               (1.5 / (0.332 * _BLASIUS_DELTA99)) ** 3),
}


def get_profile(profile: str | VelocityProfile) -> VelocityProfile:
    if isinstance(profile, VelocityProfile):
        return profile
    try:
        return PROFILES[profile]
    except KeyError:
        raise DomainError(
            f"unknown profile {profile!r}; choose one of {sorted(PROFILES)}") from None


def bl_thickness(x, scenario: PlateScenario, coeffs: DerivedCoefficients,
                 profile="quartic"):
    """
    Momentum boundary-layer thickness ``delta(x) = C sqrt(nu x / U)``, m.

    Raises
    ------
    DomainError
        If any ``x <= 0``.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise DomainError("boundary-layer thickness needs x > 0")
    c = get_profile(profile).delta_coefficient
    d = c * np.sqrt(coeffs.kinematic_viscosity * xa / scenario.approach_velocity)
    return float(d) if d.ndim == 0 else d


def _check_xy(x, y):
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.any(~(xa > 0)):
        raise DomainError("velocity evaluation needs x > 0")
    if np.any(~(ya >= 0)):
        raise DomainError("velocity evaluation needs y >= 0")
    return xa, ya


def _scalarize(a):
    return float(a) if np.ndim(a) == 0 else a


def velocity_at(x, y, scenario: PlateScenario, coeffs: DerivedCoefficients,
                profile="quartic") -> VelocitySample:
    """
    Velocity of the host flow at ``(x, y)``; broadcasts over arrays.

    Raises
    ------
    DomainError
        If ``x <= 0`` or ``y < 0``.
    """
    prof = get_profile(profile)
    if prof.shape is None:
        return blasius_velocity_at(x, y, scenario, coeffs, default_blasius_table())
    xa, ya = _check_xy(x, y)
    U = scenario.approach_velocity
    delta = prof.delta_coefficient * np.sqrt(coeffs.kinematic_viscosity * xa / U)
    e = np.clip(ya / delta, 0.0, 1.0)
    u = U * prof.shape(e)
    v = U * delta / (2 * xa) * prof.continuity(e)
    return VelocitySample(_scalarize(u), _scalarize(v))


def _blasius_rhs(s):
    f, fp, fpp = s
    return np.array([fp, fpp, -0.5 * f * fpp])


def _blasius_integrate(fpp0, n, h):
    out = np.empty((n + 1, 3))
    s = np.array([0.0, 0.0, fpp0])
    out[0] = s
    for i in range(n):
        k1 = _blasius_rhs(s)
        k2 = _blasius_rhs(s + 0.5 * h * k1)
        k3 = _blasius_rhs(s + 0.5 * h * k2)
        k4 = _blasius_rhs(s + h * k3)
        s = s + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = s
    return out


def blasius_solve(eta_max: float = 10.0, step: float = 0.01) -> BlasiusTable:
    """
    Solve ``f''' + f f''/2 = 0``, ``f(0) = f'(0) = 0``, ``f'(inf) = 1``.

    Shooting on ``f''(0)`` with bisection; each trial is a fixed-step RK4
    integration to `eta_max`.  Bisection stops once ``|f'(eta_max) - 1| < 1e-8``.

    Parameters
    ----------
    eta_max : float
        Outer edge of the domain, >= 8.
    step : float
        RK4 step in eta, <= 0.01.  `eta_max` is rounded to a whole number of steps.

    Raises
    ------
    DomainError
        If `eta_max` or `step` is out of range.
    NumericalFailure
        If the initial interval does not bracket the far-field condition or
        bisection does not converge.
    """
    if not eta_max >= 8:
        raise DomainError("eta_max must be >= 8")
    if not 0 < step <= 0.01:
        raise DomainError("step must be in (0, 0.01]")
    n = int(round(eta_max / step))
    h = eta_max / n

    def miss(fpp0):
        return _blasius_integrate(fpp0, n, h)[-1, 1] - 1.0

    lo, hi = 0.1, 1.0
    m_lo, m_hi = miss(lo), miss(hi)
    if m_lo * m_hi > 0:
        raise NumericalFailure("shooting interval does not bracket f'(inf) = 1")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        m_mid = miss(mid)
        if abs(m_mid) < 1e-8:
            break
        if m_mid * m_lo < 0:
            hi = mid
        else:
            lo, m_lo = mid, m_mid
    else:
        raise NumericalFailure("Blasius shooting did not converge")
    sol = _blasius_integrate(mid, n, h)
    eta = np.linspace(0.0, n * h, n + 1)
    return BlasiusTable(eta, sol[:, 0].copy(), sol[:, 1].copy(), sol[:, 2].copy())


@lru_cache(maxsize=1)
def default_blasius_table() -> BlasiusTable:
    return blasius_solve(10.0, 0.01)


def blasius_velocity_at(x, y, scenario: PlateScenario, coeffs: DerivedCoefficients,
                        table: BlasiusTable) -> VelocitySample:
    """
    Blasius velocity by linear interpolation in `table`.

    ``u = U f'(eta)``, ``v = sqrt(nu U / x)/2 * (eta f' - f)`` with
    ``eta = y sqrt(U / (nu x))``.  Beyond the table, ``f'`` is held at its
    edge value and ``f`` continues linearly, so ``v`` stays constant.
    """
    xa, ya = _check_xy(x, y)
    U = scenario.approach_velocity
    nu = coeffs.kinematic_viscosity
    eta = ya * np.sqrt(U / (nu * xa))
    etac = np.minimum(eta, table.eta_max)
    fp = np.interp(etac, table.eta, table.fp)
    f = np.interp(etac, table.eta, table.f)
    # eta f' - f is constant once f' = 1; evaluate at the clamped point
    u = U * fp
    v = 0.5 * np.sqrt(nu * U / xa) * (etac * fp - f)
    return VelocitySample(_scalarize(u), _scalarize(v))
