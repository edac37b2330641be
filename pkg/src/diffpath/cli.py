"""
Command-line entry point.

    diffpath <subcommand> [--config FILE | --preset NAME] [--out DIR] [--profile NAME]

Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure.
Without ``--config`` the ``paper-table1`` preset is used.  The output
directory is ``--out``, else the config's ``output_dir``, else
``$DIFFPATH_OUT``, else the working directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import validation
from .config import PRESETS, ConfigError, RunConfig, load_preset, parse_config
from .diffusion_path import march, replay_march
from .errors import DomainError, NumericalFailure
from .eulerian_thermal import (ThermalField, fd_energy_march, sample_pohlhausen_field,
                               thermal_thickness)
from .properties import derive_coefficients
from .similarity_kernels import (HigbieProfile, StokesLayer, higbie_temperature,
                                 higbie_thickness, higbie_wall_flux, stokes_velocity)
from .velocity_field import PROFILES, velocity_at

SUBCOMMANDS = ("properties", "velocity", "thermal", "stokes", "penetration", "march",
               "replay", "compare", "report")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser():
    p = _Parser(prog="diffpath", description="Diffusion-path heat transport on a flat plate.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", help="JSON run configuration")
    src.add_argument("--preset", choices=PRESETS, help="shipped configuration")
    p.add_argument("--out", help="output directory")
    p.add_argument("--profile", choices=sorted(PROFILES), help="override the velocity profile")
    p.add_argument("--source", choices=("analytic", "fd-oracle"), default="analytic",
                   help="Eulerian field for thermal/compare")
    p.add_argument("--input", help="replay: CSV with columns y_m,t_s (optionally x_m)")
    return p


def _fmt(v):
    return validation.format_number(v)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _field_axes(cfg: RunConfig, coeffs):
    g = cfg.field_grid
    y_max = g.y_max
    if y_max is None:
        y_max = 2.0 * thermal_thickness(g.x_max, cfg.scenario, coeffs, cfg.profile,
                                        cfg.thickness_rule)
    return np.linspace(g.x_min, g.x_max, g.nx), np.linspace(0.0, y_max, g.ny)


def _analytic_field(cfg, coeffs) -> ThermalField:
    xs, ys = _field_axes(cfg, coeffs)
    return sample_pohlhausen_field(xs, ys, cfg.scenario, coeffs, cfg.profile, cfg.thickness_rule)


def _fd_field_on_mesh(cfg, coeffs) -> ThermalField:
    fd = fd_energy_march(cfg.scenario, coeffs, cfg.fd_grid, cfg.profile, cfg.thickness_rule)
    xs, ys = _field_axes(cfg, coeffs)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    inside = (X >= fd.x[0]) & (X <= fd.x[-1]) & (Y <= fd.y[-1])
    if not inside.all():
        raise DomainError("field_grid extends beyond the fd_grid domain")
    theta = validation.interpolate_field(fd, X.ravel(), Y.ravel()).reshape(X.shape)
    return ThermalField(xs, ys, theta, "fd-oracle", dict(fd.metadata))


def _properties_summary(cfg, coeffs):
    out = {"kinematic_viscosity_m2_per_s": coeffs.kinematic_viscosity,
           "thermal_diffusivity_m2_per_s": coeffs.thermal_diffusivity,
           "prandtl": coeffs.prandtl,
           "prandtl_from_nu_over_alpha": coeffs.kinematic_viscosity / coeffs.thermal_diffusivity}
    if cfg.tabulated_prandtl is not None:
        dev = coeffs.prandtl / cfg.tabulated_prandtl - 1.0
        out["tabulated_prandtl"] = cfg.tabulated_prandtl
        out["prandtl_relative_deviation"] = dev
        out["note"] = (f"Prandtl number recomputed from the inputs differs from the tabulated "
                       f"value by {100 * dev:+.2f}%; the recomputed value is used.")
    return out


def _run_properties(cfg, coeffs, out_dir, args):
    print(json.dumps(_properties_summary(cfg, coeffs), indent=2, sort_keys=True))


def _run_velocity(cfg, coeffs, out_dir, args):
    xs, ys = _field_axes(cfg, coeffs)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vel = velocity_at(X, Y, cfg.scenario, coeffs, cfg.profile)
    rows = ((_fmt(a), _fmt(b), _fmt(c), _fmt(d)) for a, b, c, d in
            zip(X.ravel(), Y.ravel(), np.ravel(vel.u), np.ravel(vel.v)))
    _write_csv(out_dir / "velocity.csv", ("x_m", "y_m", "u_m_per_s", "v_m_per_s"), rows)


def _run_thermal(cfg, coeffs, out_dir, args):
    if args.source == "fd-oracle":
        validation.export_field_mesh(_fd_field_on_mesh(cfg, coeffs), out_dir / "mesh_fd.csv")
    else:
        validation.export_field_mesh(_analytic_field(cfg, coeffs), out_dir / "mesh.csv")


def _kernel_axes(cfg):
    k = cfg.kernels
    return np.array(k.t_values), np.linspace(0.0, k.y_max, k.ny)


def _run_stokes(cfg, coeffs, out_dir, args):
    layer = StokesLayer(coeffs.kinematic_viscosity, cfg.scenario.approach_velocity)
    ts, ys = _kernel_axes(cfg)
    rows = []
    for t in ts:
        eta = ys / np.sqrt(4 * layer.kinematic_viscosity * t)
        u = stokes_velocity(ys, t, layer)
        rows += [(_fmt(t), _fmt(y), _fmt(e), _fmt(v)) for y, e, v in zip(ys, eta, u)]
    _write_csv(out_dir / "stokes.csv", ("t_s", "y_m", "eta_s", "u_m_per_s"), rows)


def _run_penetration(cfg, coeffs, out_dir, args):
    s = cfg.scenario
    prof = HigbieProfile(coeffs.thermal_diffusivity, s.wall_temperature,
                         s.freestream_temperature, cfg.fluid.thermal_conductivity)
    ts, ys = _kernel_axes(cfg)
    rows = []
    for t in ts:
        dh = higbie_thickness(t, prof)
        q = higbie_wall_flux(t, prof)
        th = higbie_temperature(ys, t, prof)
        rows += [(_fmt(t), _fmt(y), _fmt(min(y / dh, 1.0)), _fmt(v), _fmt(dh), _fmt(q))
                 for y, v in zip(ys, th)]
    _write_csv(out_dir / "penetration.csv",
               ("t_s", "y_m", "eta_h", "theta_C", "delta_h_m", "q_w_W_per_m2"), rows)


def _march(cfg, coeffs):
    return march(cfg.scenario, coeffs, cfg.schedule, cfg.exit_tolerance, cfg.profile)


def _run_march(cfg, coeffs, out_dir, args):
    validation.export_path(_march(cfg, coeffs), out_dir / "path.csv")


def _run_replay(cfg, coeffs, out_dir, args):
    if not args.input:
        raise ConfigError("replay needs --input with columns y_m,t_s")
    with open(args.input, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or not {"y_m", "t_s"} <= set(rows[0]):
        raise ConfigError("replay input must have y_m and t_s columns")
    try:
        ys = [float(r["y_m"]) for r in rows]
        ts = [float(r["t_s"]) for r in rows]
        xs = [float(r["x_m"]) for r in rows] if "x_m" in rows[0] else None
    except ValueError as exc:
        raise ConfigError(f"replay input: {exc}") from None
    pts = replay_march(cfg.scenario, coeffs, ys, ts, xs)
    validation.export_path(pts, out_dir / "replay.csv")


def _comparison(cfg, coeffs, path, source):
    return validation.compare_path_to_field(path, source, cfg.scenario, coeffs,
                                            cfg.profile, cfg.thickness_rule)


def _run_compare(cfg, coeffs, out_dir, args):
    path = _march(cfg, coeffs)
    rep = _comparison(cfg, coeffs, path, args.source).to_dict()
    rep["config_hash"] = cfg.config_hash()
    _write_json(out_dir / "compare.json", rep)


def _run_report(cfg, coeffs, out_dir, args):
    path = _march(cfg, coeffs)
    rep = _comparison(cfg, coeffs, path, args.source)
    validation.export_path(path, out_dir / "path.csv")
    validation.export_field_mesh(_analytic_field(cfg, coeffs), out_dir / "mesh.csv")
    validation.write_gnuplot_script(out_dir / "figure4.gnuplot")
    _write_json(out_dir / "report.json", {
        "config_hash": cfg.config_hash(),
        "point_count": rep.point_count,
        "rms_C": rep.rms,
        "rms_pct_dtheta": rep.rms_pct_dtheta,
        "max_abs_C": rep.max_abs,
        "stddev_C": rep.stddev,
        "t_d_s": path.diffusion_period,
        "exit_x_m": path.exit_x,
        "exit_reason": path.exit_reason,
        "metadata": rep.metadata | {"properties": _properties_summary(cfg, coeffs)},
    })


_HANDLERS = {name: globals()[f"_run_{name}"] for name in SUBCOMMANDS}


def _load(args) -> RunConfig:
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        cfg = parse_config(text)
    else:
        cfg = load_preset(args.preset or "paper-table1")
    if args.profile:
        cfg = cfg.with_profile(args.profile)
    return cfg


def run_subcommand(name: str, cfg: RunConfig, out_dir, args=None) -> int:
    """Run one subcommand with a parsed config; returns the exit code."""
    if name not in _HANDLERS:
        print(f"diffpath: unknown subcommand {name!r}", file=sys.stderr)
        return 1
    if args is None:
        args = argparse.Namespace(source="analytic", input=None)
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        coeffs = derive_coefficients(cfg.fluid)
        _HANDLERS[name](cfg, coeffs, out_dir, args)
    except NumericalFailure as exc:
        print(f"diffpath: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, DomainError, OSError) as exc:
        print(f"diffpath: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _load(args)
    except (ConfigError, DomainError) as exc:
        print(f"diffpath: config error: {exc}", file=sys.stderr)
        return 1
    out_dir = args.out or cfg.output_dir or os.environ.get("DIFFPATH_OUT") or "."
    return run_subcommand(args.subcommand, cfg, out_dir, args)


if __name__ == "__main__":
    sys.exit(main())
