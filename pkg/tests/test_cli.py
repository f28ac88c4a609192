import json
import subprocess
import sys

from decogauss.scenarios import baseball_scenario, dump_scenario


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "decogauss", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


def test_baseball_json_report(tmp_path):
    out = tmp_path / "report.json"
    result = run_cli("baseball", "--format", "json", "--output", str(out), "--samples", "3")
    assert result.returncode == 0, result.stderr
    payload = json.loads(out.read_text())
    entropy = next(r for r in payload["scalars"] if r["name"] == "entropy_nats")
    assert abs(entropy["value"] - 61.0) < 0.5
    assert len(payload["trajectory"]) == 4
    assert len(payload["discrepancies"]) == 3


def test_baseball_strict_profile_passes():
    result = run_cli("baseball", "--tolerance-profile", "strict", "--samples", "2")
    assert result.returncode == 0, result.stderr


def test_run_with_config(tmp_path):
    config = tmp_path / "scenario.ini"
    config.write_text(dump_scenario(baseball_scenario()))
    out = tmp_path / "report.csv"
    result = run_cli(
        "run", "--config", str(config), "--format", "csv", "--output", str(out),
        "--samples", "2",
    )
    assert result.returncode == 0, result.stderr
    assert "t_s,tau,dx2,dp2,A,B,C,N,S" in out.read_text().splitlines()


def test_bad_config_exits_2(tmp_path):
    config = tmp_path / "broken.ini"
    config.write_text("[particle]\nradius_m = 0.01\n")
    result = run_cli("run", "--config", str(config))
    assert result.returncode == 2
    assert "mass_kg" in result.stderr


def test_missing_config_file_exits_2(tmp_path):
    result = run_cli("run", "--config", str(tmp_path / "nope.ini"))
    assert result.returncode == 2


def test_invalid_scenario_value_exits_3(tmp_path):
    config = tmp_path / "invalid.ini"
    config.write_text(
        dump_scenario(baseball_scenario()).replace("mass_kg = 0.1459553", "mass_kg = -2.0")
    )
    result = run_cli("run", "--config", str(config))
    assert result.returncode == 3


def test_spectrum_subcommand():
    result = run_cli(
        "spectrum", "--A", "0.75", "--B", "-0.5", "--C", "0.0625", "--format", "json"
    )
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert abs(payload["mean_excitation"] - 1.2320508) < 1e-6
    assert abs(payload["entropy_nats"] - 1.5350555) < 1e-6


def test_measure_subcommand(tmp_path):
    config = tmp_path / "obs.ini"
    config.write_text(
        dump_scenario(baseball_scenario())
        + "\n[observation]\ncenters_m = -100.0, 0.0, 100.0\n"
        "alpha_per_m2 = 1.0\ngamma_per_m2 = 1e-5\n"
    )
    result = run_cli("measure", "--config", str(config), "--format", "json", "--samples", "2")
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    values = [row["measure"] for row in payload["profile"]]
    assert len(values) == 3
    assert values[0] == values[2]


def test_measure_requires_observation_section(tmp_path):
    config = tmp_path / "plain.ini"
    config.write_text(dump_scenario(baseball_scenario()))
    result = run_cli("measure", "--config", str(config))
    assert result.returncode == 2


def test_oracle_check_passes():
    result = run_cli("oracle-check", "--samples", "1")
    assert result.returncode == 0, result.stderr
    assert "worst disagreement" in result.stdout


def test_unknown_subcommand_exits_2():
    result = run_cli("frobnicate")
    assert result.returncode == 2
