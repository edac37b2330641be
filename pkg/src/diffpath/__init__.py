"""
diffpath: heat transport across a laminar flat-plate boundary layer followed
along the diffusion path of a heat entity, with the Eulerian reference
solutions it is checked against.
"""

from .diffusion_path import (DiffusionPath, GridSchedule, PathPoint, cell_mean_velocity,
                             eulerian_convective_term, march, material_rate_along_path,
                             replay_march)
from .errors import DomainError, NumericalFailure
from .eulerian_thermal import (FDGridSpec, ThermalField, fd_energy_march, local_nusselt,
                               pohlhausen_temperature, thermal_thickness)
from .properties import DerivedCoefficients, FluidProperties, derive_coefficients
from .similarity_kernels import (HigbieProfile, StokesLayer, higbie_thickness,
                                 higbie_timescale, higbie_wall_flux, stokes_velocity,
                                 trinh_keey_timescale)
from .special_functions import erf
from .velocity_field import PlateScenario, bl_thickness, blasius_solve, velocity_at


def table1_water() -> FluidProperties:
    """Water at 20 degC: mu = 1.002e-3 kg/(m s), rho = 998 kg/m^3, c_p = 4.182 kJ/(kg K), k = 0.603 W/(m K)."""
    return FluidProperties.from_kilojoules(0.001002, 998.0, 4.182, 0.603, 20.0)


__version__ = "0.1.0"
