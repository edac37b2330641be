"""
Fluid constants and the transport coefficients derived from them.

Temperatures are in degrees Celsius everywhere in the package; only
temperature differences enter the transport formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["FluidProperties", "DerivedCoefficients", "derive_coefficients"]


@dataclass(frozen=True)
class FluidProperties:
    """
    Raw fluid constants.

    Parameters
    ----------
    dynamic_viscosity : float
        mu, kg/(m s)
    density : float
        rho, kg/m^3
    heat_capacity : float
        c_p, J/(kg K)
    thermal_conductivity : float
        k, W/(m K)
    reference_temperature : float
        Temperature at which the properties were tabulated, degC.
    """

    dynamic_viscosity: float
    density: float
    heat_capacity: float
    thermal_conductivity: float
    reference_temperature: float = 20.0

    def __post_init__(self):
        for name in ("dynamic_viscosity", "density", "heat_capacity",
                     "thermal_conductivity"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and > 0, got {value!r}")
        if not math.isfinite(self.reference_temperature):
            raise DomainError("reference_temperature must be finite")

    @classmethod
    def from_kilojoules(cls, dynamic_viscosity, density, heat_capacity_kj,
                        thermal_conductivity, reference_temperature=20.0):
        """Build from a heat capacity given in kJ/(kg K), as property tables often do."""
        return cls(dynamic_viscosity, density, 1e3 * heat_capacity_kj,
                   thermal_conductivity, reference_temperature)


@dataclass(frozen=True)
class DerivedCoefficients:
    """Kinematic viscosity, thermal diffusivity (both m^2/s) and Prandtl number."""

    kinematic_viscosity: float
    thermal_diffusivity: float
    prandtl: float


def derive_coefficients(props: FluidProperties) -> DerivedCoefficients:
    """
    Return nu = mu/rho, alpha = k/(rho c_p) and Pr = c_p mu / k.

    Pr is computed directly from the raw constants rather than as nu/alpha so
    that the two routes can be checked against each other.
    """
    nu = props.dynamic_viscosity / props.density
    alpha = props.thermal_conductivity / (props.density * props.heat_capacity)
    pr = props.heat_capacity * props.dynamic_viscosity / props.thermal_conductivity
    return DerivedCoefficients(nu, alpha, pr)
