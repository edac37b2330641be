"""
JSON run configuration.

Parsing is strict: unknown keys are rejected and every constraint failure
names the offending field with its dotted path, e.g.
``fluid.dynamic_viscosity``.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field
from importlib import resources

from .diffusion_path import GridSchedule
from .eulerian_thermal import THICKNESS_RULES, FDGridSpec
from .properties import FluidProperties
from .velocity_field import PROFILES, PlateScenario

__all__ = ["ConfigError", "FieldGridSpec", "KernelGridSpec", "RunConfig",
           "parse_config", "load_preset", "PRESETS"]

PRESETS = ("paper-table1",)


class ConfigError(ValueError):
    """Malformed or invalid configuration document."""


@dataclass(frozen=True)
class FieldGridSpec:
    """Tensor grid for dumped velocity/temperature meshes; ``y_max=None`` means 2 delta_h(x_max)."""

    x_min: float = 0.06
    x_max: float = 0.30
    nx: int = 120
    y_max: float | None = None
    ny: int = 80


@dataclass(frozen=True)
class KernelGridSpec:
    """Sample points for the Stokes and penetration kernel dumps."""

    t_values: tuple[float, ...] = (0.1, 0.5, 1.0)
    y_max: float = 2e-3
    ny: int = 41


@dataclass(frozen=True)
class RunConfig:
    fluid: FluidProperties
    scenario: PlateScenario
    schedule: GridSchedule = GridSchedule()
    profile: str = "quartic"
    thickness_rule: str = "energy-integral"
    exit_tolerance: float = 0.01
    field_grid: FieldGridSpec = FieldGridSpec()
    fd_grid: FDGridSpec = FDGridSpec()
    kernels: KernelGridSpec = KernelGridSpec()
    tabulated_prandtl: float | None = None
    output_dir: str | None = field(default=None, compare=False)

    def canonical(self) -> dict:
        """Normalized JSON-ready form, excluding the output directory."""
        d = dataclasses.asdict(self)
        d.pop("output_dir")
        return d

    def config_hash(self) -> str:
        text = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def with_profile(self, profile: str) -> "RunConfig":
        if profile not in PROFILES:
            raise ConfigError(f"profile: must be one of {sorted(PROFILES)}, got {profile!r}")
        return dataclasses.replace(self, profile=profile)


def _number(sec, key, where, *, positive=False, nonneg=False, default=None, required=True):
    if key not in sec:
        if required and default is None:
            raise ConfigError(f"{where}.{key}: required")
        return default
    v = sec[key]
    if v is None and not required:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"{where}.{key}: must be a finite number, got {v!r}")
    if positive and not v > 0:
        raise ConfigError(f"{where}.{key}: must be > 0, got {v!r}")
    if nonneg and not v >= 0:
        raise ConfigError(f"{where}.{key}: must be >= 0, got {v!r}")
    return float(v)


def _integer(sec, key, where, default, minimum):
    v = sec.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ConfigError(f"{where}.{key}: must be an integer >= {minimum}, got {v!r}")
    return v


def _section(doc, key, allowed, required=True):
    if key not in doc:
        if required:
            raise ConfigError(f"{key}: required section missing")
        return {}
    sec = doc[key]
    if not isinstance(sec, dict):
        raise ConfigError(f"{key}: must be an object")
    extra = sorted(set(sec) - set(allowed))
    if extra:
        raise ConfigError(f"{key}.{extra[0]}: unknown key")
    return sec


def _fluid(doc):
    sec = _section(doc, "fluid", {"dynamic_viscosity", "density", "heat_capacity",
                                  "heat_capacity_kJ", "thermal_conductivity",
                                  "reference_temperature", "tabulated_prandtl"})
    mu = _number(sec, "dynamic_viscosity", "fluid", positive=True)
    rho = _number(sec, "density", "fluid", positive=True)
    if ("heat_capacity" in sec) == ("heat_capacity_kJ" in sec):
        raise ConfigError("fluid.heat_capacity: give exactly one of heat_capacity (J/(kg K)) "
                          "or heat_capacity_kJ (kJ/(kg K))")
    if "heat_capacity" in sec:
        cp = _number(sec, "heat_capacity", "fluid", positive=True)
    else:
        cp = 1e3 * _number(sec, "heat_capacity_kJ", "fluid", positive=True)
    k = _number(sec, "thermal_conductivity", "fluid", positive=True)
    t_ref = _number(sec, "reference_temperature", "fluid", default=20.0)
    pr_tab = _number(sec, "tabulated_prandtl", "fluid", positive=True, required=False)
    return FluidProperties(mu, rho, cp, k, t_ref), pr_tab


def _scenario(doc):
    sec = _section(doc, "scenario", {"approach_velocity", "wall_temperature",
                                     "freestream_temperature", "heated_start",
                                     "tracking_start", "plate_length"})
    u = _number(sec, "approach_velocity", "scenario", positive=True)
    tw = _number(sec, "wall_temperature", "scenario")
    ti = _number(sec, "freestream_temperature", "scenario")
    if tw == ti:
        raise ConfigError("scenario.wall_temperature: must differ from freestream_temperature")
    x0 = _number(sec, "heated_start", "scenario", nonneg=True)
    x1 = _number(sec, "tracking_start", "scenario", positive=True)
    if not x1 > x0:
        raise ConfigError("scenario.tracking_start: must exceed heated_start")
    length = _number(sec, "plate_length", "scenario", positive=True, required=False)
    if length is not None and not length > x1:
        raise ConfigError("scenario.plate_length: must exceed tracking_start")
    return PlateScenario(u, tw, ti, x0, x1, length)


def _schedule(doc):
    sec = _section(doc, "schedule", {"dx0", "dy0", "growth_x", "growth_y", "max_steps"},
                   required=False)
    base = GridSchedule()
    vals = {}
    for key in ("dx0", "dy0"):
        vals[key] = _number(sec, key, "schedule", positive=True, default=getattr(base, key))
    for key in ("growth_x", "growth_y"):
        g = _number(sec, key, "schedule", default=1.0)
        if g < 1:
            raise ConfigError(f"schedule.{key}: must be >= 1, got {g!r}")
        vals[key] = g
    vals["max_steps"] = _integer(sec, "max_steps", "schedule", base.max_steps, 1)
    return GridSchedule(**vals)


def _field_grid(doc):
    sec = _section(doc, "field_grid", {"x_min", "x_max", "nx", "y_max", "ny"}, required=False)
    b = FieldGridSpec()
    x_min = _number(sec, "x_min", "field_grid", positive=True, default=b.x_min)
    x_max = _number(sec, "x_max", "field_grid", positive=True, default=b.x_max)
    if not x_max > x_min:
        raise ConfigError("field_grid.x_max: must exceed x_min")
    y_max = _number(sec, "y_max", "field_grid", positive=True, required=False)
    return FieldGridSpec(x_min, x_max, _integer(sec, "nx", "field_grid", b.nx, 2), y_max,
                         _integer(sec, "ny", "field_grid", b.ny, 2))


def _fd_grid(doc):
    sec = _section(doc, "fd_grid", {"x_max", "nx", "ny", "y_max", "y_span_factor", "x_min",
                                    "cluster_power"}, required=False)
    b = FDGridSpec()
    return FDGridSpec(
        x_max=_number(sec, "x_max", "fd_grid", positive=True, default=b.x_max),
        nx=_integer(sec, "nx", "fd_grid", b.nx, 100),
        ny=_integer(sec, "ny", "fd_grid", b.ny, 200),
        y_max=_number(sec, "y_max", "fd_grid", positive=True, required=False),
        y_span_factor=_number(sec, "y_span_factor", "fd_grid", positive=True,
                              default=b.y_span_factor),
        x_min=_number(sec, "x_min", "fd_grid", positive=True, required=False),
        cluster_power=_number(sec, "cluster_power", "fd_grid", positive=True,
                              default=b.cluster_power),
    )


def _kernels(doc):
    sec = _section(doc, "kernels", {"t_values", "y_max", "ny"}, required=False)
    b = KernelGridSpec()
    ts = sec.get("t_values", list(b.t_values))
    if (not isinstance(ts, list) or not ts
            or any(isinstance(t, bool) or not isinstance(t, (int, float)) or not t > 0
                   for t in ts)):
        raise ConfigError("kernels.t_values: must be a non-empty list of positive times")
    return KernelGridSpec(tuple(float(t) for t in ts),
                          _number(sec, "y_max", "kernels", positive=True, default=b.y_max),
                          _integer(sec, "ny", "kernels", b.ny, 2))


_TOP_KEYS = {"fluid", "scenario", "schedule", "profile", "thickness_rule", "exit_tolerance",
             "field_grid", "fd_grid", "kernels", "output_dir", "description"}


def parse_config(document: str) -> RunConfig:
    """
    Parse and validate a JSON configuration document.

    Raises
    ------
    ConfigError
        On malformed JSON (with line and column) or any invalid field.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno} column {exc.colno}: "
                          f"{exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    extra = sorted(set(doc) - _TOP_KEYS)
    if extra:
        raise ConfigError(f"{extra[0]}: unknown key")
    fluid, pr_tab = _fluid(doc)
    scenario = _scenario(doc)
    profile = doc.get("profile", "quartic")
    if profile not in PROFILES:
        raise ConfigError(f"profile: must be one of {sorted(PROFILES)}, got {profile!r}")
    rule = doc.get("thickness_rule", "energy-integral")
    if rule not in THICKNESS_RULES:
        raise ConfigError(f"thickness_rule: must be one of {list(THICKNESS_RULES)}, got {rule!r}")
    eps = _number(doc, "exit_tolerance", "config", default=0.01)
    if not 0 < eps <= 0.1:
        raise ConfigError(f"exit_tolerance: must lie in (0, 0.1], got {eps!r}")
    out = doc.get("output_dir")
    if out is not None and not isinstance(out, str):
        raise ConfigError("output_dir: must be a string")
    return RunConfig(fluid, scenario, _schedule(doc), profile, rule, eps, _field_grid(doc),
                     _fd_grid(doc), _kernels(doc), pr_tab, out)


def load_preset(name: str) -> RunConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    text = resources.files("diffpath.presets").joinpath(f"{name}.json").read_text("utf-8")
    return parse_config(text)
