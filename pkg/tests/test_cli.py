import json
import subprocess
import sys

import pytest

from diffpath.cli import main, run_subcommand
from diffpath.config import ConfigError, load_preset, parse_config

MIN_CONFIG = {
    "fluid": {"dynamic_viscosity": 0.001002, "density": 998, "heat_capacity": 4182,
              "thermal_conductivity": 0.603},
    "scenario": {"approach_velocity": 0.2, "wall_temperature": 25,
                 "freestream_temperature": 20, "heated_start": 0.05, "tracking_start": 0.1},
}


def _write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def _with(section, **kw):
    doc = json.loads(json.dumps(MIN_CONFIG))
    doc.setdefault(section, {}).update(kw)
    return doc


def test_preset_parses():
    cfg = load_preset("paper-table1")
    from diffpath import derive_coefficients
    assert derive_coefficients(cfg.fluid).prandtl == pytest.approx(6.949, abs=1e-3)
    assert cfg.tabulated_prandtl == 6.935296


def test_defaults_applied():
    cfg = parse_config(json.dumps(MIN_CONFIG))
    assert cfg.schedule.growth_x == 1.0 and cfg.schedule.growth_y == 1.0
    assert cfg.profile == "quartic" and cfg.exit_tolerance == 0.01


@pytest.mark.parametrize("doc,field", [
    (_with("fluid", dynamic_viscosity=-1e-3), "fluid.dynamic_viscosity"),
    (_with("fluid", colour="blue"), "fluid.colour"),
    (_with("scenario", tracking_start=0.01), "scenario.tracking_start"),
    (_with("scenario", wall_temperature=20), "scenario.wall_temperature"),
    (_with("schedule", growth_y=0.5), "schedule.growth_y"),
    (dict(MIN_CONFIG, extra=1), "extra"),
    (dict(MIN_CONFIG, profile="sixth"), "profile"),
])
def test_config_errors_name_field(doc, field):
    with pytest.raises(ConfigError, match=field.replace(".", r"\.")):
        parse_config(json.dumps(doc))


def test_malformed_json_position():
    with pytest.raises(ConfigError, match="line 1 column"):
        parse_config("{")


def test_hash_ignores_output_dir():
    a = parse_config(json.dumps(MIN_CONFIG))
    b = parse_config(json.dumps(dict(MIN_CONFIG, output_dir="/tmp/x")))
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != a.with_profile("cubic").config_hash()


def test_exit_codes(tmp_path, capsys):
    assert main(["nonsense"]) == 1
    bad = _write(tmp_path, _with("fluid", dynamic_viscosity=-1))
    assert main(["march", "--config", bad, "--out", str(tmp_path)]) == 1
    assert "fluid.dynamic_viscosity" in capsys.readouterr().err
    assert main(["march", "--config", str(tmp_path / "missing.json")]) == 1
    assert main(["replay", "--out", str(tmp_path)]) == 1
    assert run_subcommand("nope", load_preset("paper-table1"), tmp_path) == 1


def test_numerical_failure_exit(tmp_path, monkeypatch):
    import diffpath.cli as cli
    from diffpath import NumericalFailure

    def boom(*a, **k):
        raise NumericalFailure("zero mean velocity in the cell of step 1")
    monkeypatch.setattr(cli, "march", boom)
    assert main(["march", "--out", str(tmp_path)]) == 2


def test_properties_output(capsys):
    assert main(["properties"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["prandtl"] == pytest.approx(6.9492, abs=1e-4)
    assert "0.20%" in out["note"]


def test_replay_csv(tmp_path):
    inp = tmp_path / "in.csv"
    inp.write_text("y_m,t_s\n1.64337e-5,0.334371309\n3.28754e-5,0.446520419\n")
    assert main(["replay", "--input", str(inp), "--out", str(tmp_path)]) == 0
    rows = (tmp_path / "replay.csv").read_text().splitlines()
    th = [float(r.split(",")[-1]) for r in rows[1:]]
    assert th == pytest.approx([24.78934, 24.63575], abs=5e-3)


@pytest.mark.parametrize("sub,files", [
    ("velocity", ["velocity.csv"]), ("thermal", ["mesh.csv"]), ("stokes", ["stokes.csv"]),
    ("penetration", ["penetration.csv"]), ("march", ["path.csv"]), ("compare", ["compare.json"]),
    ("report", ["path.csv", "mesh.csv", "report.json", "figure4.gnuplot"]),
])
def test_subcommands_deterministic(tmp_path, sub, files):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main([sub, "--out", str(a)]) == 0
    assert main([sub, "--preset", "paper-table1", "--out", str(b)]) == 0
    for f in files:
        assert (a / f).read_bytes() == (b / f).read_bytes(), f


def test_report_contents(tmp_path):
    assert main(["report", "--out", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    for key in ("config_hash", "point_count", "rms_C", "rms_pct_dtheta", "max_abs_C",
                "stddev_C", "t_d_s", "exit_x_m", "exit_reason"):
        assert key in rep
    assert rep["config_hash"] == load_preset("paper-table1").config_hash()
    assert rep["point_count"] == 38 and rep["exit_x_m"] > 0.1 and rep["t_d_s"] > 0
    mesh = (tmp_path / "mesh.csv").read_text().splitlines()
    assert len(mesh) == 9601


def test_thermal_fd_source(tmp_path):
    assert main(["thermal", "--source", "fd-oracle", "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "mesh_fd.csv").read_text().splitlines()) == 9601


def test_out_dir_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("DIFFPATH_OUT", str(tmp_path / "env"))
    assert main(["march"]) == 0
    assert (tmp_path / "env" / "path.csv").exists()


def test_profile_override(tmp_path):
    assert main(["march", "--out", str(tmp_path / "q")]) == 0
    assert main(["march", "--profile", "cubic", "--out", str(tmp_path / "c")]) == 0
    assert ((tmp_path / "q" / "path.csv").read_bytes()
            != (tmp_path / "c" / "path.csv").read_bytes())


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "diffpath", "march", "--out", str(tmp_path)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and (tmp_path / "path.csv").exists()
