import csv
import io
import json
import subprocess
import sys

import pytest

from aoi_ra.cli import SCHEMA, ExperimentSpec, UsageError, main, run


def table(text):
    lines = text.splitlines()
    assert lines[0].startswith(f"# {SCHEMA} ")
    return lines[0], list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_report_sa_value(capsys):
    assert main(["report", "--protocol", "sa", "--n", "10", "--q", "0.1", "--tpk", "1"]) == 0
    header, rows = table(capsys.readouterr().out)
    assert "time_unit=slot" in header and "power_unit=P" in header
    assert round(float(rows[0]["avg_aoi"]), 4) == 26.3117


def test_report_json(capsys):
    assert main(["report", "--protocol", "rta", "--n", "10", "--pi", "0.5", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == SCHEMA and doc["time_unit"] == "us"
    assert doc["rows"][0]["avg_aoi"] == pytest.approx(3522.9589533451526, rel=1e-12)


@pytest.mark.parametrize("argv", [
    ["report", "--bogus"],
    ["nonsense"],
    [],
    ["report", "--protocol", "sa", "--n", "10"],
    ["report", "--protocol", "csma", "--q", "0.1"],
    ["sweep", "--grid", "0.1:0.5"],
    ["figures", "fig99"],
    ["report", "--q", "abc"],
])
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["sweep", "--protocol", "sa", "--q", "1.0", "--tpk", "1"],
    ["report", "--protocol", "fsa", "--omega", "0.5", "--payload", "0"],
    ["frontier", "--protocol", "sa", "--budgets", "0.2", "0.1"],
])
def test_runtime_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_sweep_columns_and_grid(capsys):
    assert main(["sweep", "--protocol", "fsa", "--n", "10", "--k", "5", "--grid", "0.1:0.5:5", "--tpk", "1"]) == 0
    _, rows = table(capsys.readouterr().out)
    assert [float(r["access_prob"]) for r in rows] == [0.1, 0.2, 0.3, 0.4, 0.5]
    assert {"protocol", "access_prob", "load", "avg_aoi", "avg_power"} <= set(rows[0])


def test_frontier_output(capsys):
    assert main(["frontier", "--protocol", "sa", "fsa", "rta", "--budgets", "0.05,0.1,1.0"]) == 0
    _, rows = table(capsys.readouterr().out)
    assert len(rows) == 9
    assert {"power_budget", "best_prob", "min_aoi", "binding", "avg_power"} <= set(rows[0])
    rta = [r for r in rows if r["protocol"] == "rta"]
    assert float(rta[1]["min_aoi"]) == pytest.approx(3522.9589533451526, rel=1e-9)
    assert rta[2]["binding"] == "false"


def test_validate_rows_pass(capsys):
    argv = ["validate", "--protocol", "rta", "--n", "5", "--k", "4", "--pi", "0.5", "--rounds", "1000000"]
    assert main(argv) == 0
    _, rows = table(capsys.readouterr().out)
    assert [r["metric"] for r in rows] == ["aoi", "power", "interval"]
    for r in rows:
        assert r["pass"] == "true"
        assert abs(float(r["simulated"]) - float(r["analytic"])) <= 4 * float(r["ci_halfwidth"])


def test_no_update_is_reported_not_fatal(capsys):
    argv = ["simulate", "--protocol", "sa", "--n", "20", "--q", "1e-7", "0.05", "--rounds", "200", "--tpk", "1"]
    assert main(argv) == 0
    _, rows = table(capsys.readouterr().out)
    assert [r["status"] for r in rows] == ["no_update", "ok"]


def test_config_file_json_and_toml(tmp_path, capsys):
    cfg = tmp_path / "exp.json"
    cfg.write_text(json.dumps({"protocols": ["fsa"], "n": [10], "k": 5, "probs": [0.5], "t_pk": 1.0}))
    assert main(["report", "--config", str(cfg)]) == 0
    _, rows = table(capsys.readouterr().out)
    assert float(rows[0]["avg_aoi"]) == pytest.approx(24.389232014931963, rel=1e-12)

    toml = tmp_path / "exp.toml"
    toml.write_text('protocols = ["fsa"]\nn = [10]\nk = 5\nprobs = [0.5]\npayload_bytes = 16\n'
                    '[phy]\nsymbol_alignment = true\n')
    out = tmp_path / "r.csv"
    assert main(["report", "--config", str(toml), "-o", str(out), "--k", "2"]) == 0
    header, rows = table(out.read_text())
    assert "t_pk=90.0" in header and rows[0]["k"] == "2"

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"protocolz": ["sa"]}))
    assert main(["report", "--config", str(bad)]) == 1


def test_phy_flags(capsys):
    assert main(["report", "--protocol", "sa", "--n", "2", "--q", "0.5", "--payload", "16",
                 "--align-symbols"]) == 0
    header, _ = table(capsys.readouterr().out)
    assert "t_pk=90.0" in header and "t_r=54.0" in header


def test_figures_env_output_dir_and_determinism(tmp_path, monkeypatch):
    monkeypatch.setenv("AOI_RA_OUTPUT_DIR", str(tmp_path / "a"))
    assert main(["figures", "fig4a", "fig9"]) == 0
    first = {p.name: p.read_bytes() for p in (tmp_path / "a").iterdir()}
    assert set(first) == {"fig4a.csv", "fig9.csv"}
    assert main(["figures", "fig4a", "fig9", "-o", str(tmp_path / "b")]) == 0
    assert {p.name: p.read_bytes() for p in (tmp_path / "b").iterdir()} == first
    assert b"time_unit=slot" in first["fig4a.csv"].splitlines()[0]
    assert b"time_unit=us" in first["fig9.csv"].splitlines()[0]


def test_fig9_covers_sensor_counts(tmp_path):
    assert main(["figures", "fig9", "-o", str(tmp_path)]) == 0
    _, rows = table((tmp_path / "fig9.csv").read_text())
    assert sorted({int(r["n"]) for r in rows}) == [5, 10, 15, 20, 25, 30]
    assert {r["protocol"] for r in rows} == {"sa", "fsa", "rta"}


def test_fig7_two_files(tmp_path):
    spec = ExperimentSpec("figures", figures=("fig7",), rounds=20_000, seed=7, output=str(tmp_path))
    paths = run(spec)
    assert [p.name for p in paths] == ["fig7a_aoi.csv", "fig7b_power.csv"]
    header, rows = table(paths[0].read_text())
    assert "seed=7" in header
    assert {r["source"] for r in rows} == {"analytic", "simulation"}


def test_spec_validation():
    with pytest.raises(UsageError):
        ExperimentSpec("plot")
    with pytest.raises(UsageError):
        ExperimentSpec("report", output_format="xml")
    assert ExperimentSpec("report", probs="0:1:3").probs == (0.0, 0.5, 1.0)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "aoi_ra", "report", "--protocol", "fsa", "--omega", "0.5",
                          "--tpk", "1"], capture_output=True, text=True, check=True)
    assert "24.389232014931963" in out.stdout
