"""End-to-end command-line behaviour: outputs, determinism, exit codes."""

import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "ballharmonics.cli"]


def run_cli(*args, env_extra=None, timeout=120):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=env, timeout=timeout
    )


class TestVolumes:
    def test_table_and_argmax(self):
        proc = run_cli("volumes", "--n-max", "30")
        assert proc.returncode == 0
        assert "# volume_argmax: 5" in proc.stdout
        header = [l for l in proc.stdout.splitlines() if not l.startswith("#")][0]
        assert header == "n,volume,log_volume,sphere_area,shell_fraction,shell_width"

    def test_deterministic(self):
        a = run_cli("volumes", "--n-max", "50")
        b = run_cli("volumes", "--n-max", "50")
        assert a.stdout == b.stdout

    def test_n_max_validated(self):
        proc = run_cli("volumes", "--n-max", "3")
        assert proc.returncode == 2

    def test_writes_file_under_env_dir(self, tmp_path):
        proc = run_cli(
            "volumes",
            "--n-max",
            "8",
            "--out",
            "v.csv",
            env_extra={"BALLHARMONICS_OUTPUT_DIR": str(tmp_path)},
        )
        assert proc.returncode == 0
        assert (tmp_path / "v.csv").exists()


class TestConfigFile:
    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "v.cfg"
        cfg.write_text("n-max = 10\nradius = 0.8\n")
        merged = run_cli("volumes", "--config", str(cfg), "--n-max", "6")
        assert merged.returncode == 0
        rows = [l for l in merged.stdout.splitlines() if l and not l.startswith("#")]
        assert rows[-1].startswith("6,")  # flag wins over the file's 10

    def test_unknown_key_is_usage_error(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("definitely-not-an-option = 1\n")
        proc = run_cli("volumes", "--config", str(cfg))
        assert proc.returncode == 2
        assert "unknown option" in proc.stderr

    def test_missing_file_is_usage_error(self):
        proc = run_cli("volumes", "--config", "/definitely/not/here.cfg")
        assert proc.returncode == 2


class TestDecay:
    def test_verdict_fields(self, tmp_path):
        proc = run_cli(
            "decay",
            "--dimension",
            "3",
            "--map",
            "zonal:2",
            "--out",
            str(tmp_path / "decay.csv"),
        )
        assert proc.returncode == 0
        verdict = json.loads(proc.stdout)
        assert verdict["beta_hat"] == pytest.approx(5.0, abs=1e-9)
        assert verdict["theta_half"] == pytest.approx(2.0**-5, rel=1e-12)
        assert verdict["holds"] is True
        csv_lines = (tmp_path / "decay.csv").read_text().splitlines()
        assert any(line.startswith("r,") for line in csv_lines)

    def test_failing_bound_exits_one(self, tmp_path):
        # beta far above the true decay exponent cannot hold
        proc = run_cli(
            "decay",
            "--dimension",
            "3",
            "--map",
            "zonal:1",
            "--beta",
            "9",
            "--out",
            str(tmp_path / "d.csv"),
        )
        assert proc.returncode == 1
        assert json.loads(proc.stdout)["holds"] is False


class TestIdentities:
    def test_quick_suite_passes(self):
        proc = run_cli("identities", "--suite", "quick", "--dims", "2:4")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["max_normalized_residual"] == 0
        assert payload["residuals_within_tolerance"] is True
        assert payload["bound_margins_above_one"] is True
        assert payload["count"] == len(payload["reports"])

    def test_deterministic(self):
        a = run_cli("identities", "--suite", "quick", "--dims", "2:3")
        b = run_cli("identities", "--suite", "quick", "--dims", "2:3")
        assert a.stdout == b.stdout

    def test_bad_suite_name(self):
        proc = run_cli("identities", "--suite", "nope")
        assert proc.returncode == 2


class TestIntegrate:
    def test_exact_value(self):
        proc = run_cli(
            "integrate", "--poly", "x1^2 * x2^4", "--dimension", "5", "--domain", "sphere"
        )
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["value"] == pytest.approx(0.2506566197102059, rel=1e-12)
        assert payload["method"] == "exact"

    def test_monte_carlo_workers_invariant(self):
        args = (
            "integrate", "--poly", "x1^2", "--dimension", "3",
            "--method", "monte-carlo", "--samples", "50000", "--seed", "4",
        )
        a = run_cli(*args, "--workers", "1")
        b = run_cli(*args, "--workers", "4")
        assert json.loads(a.stdout)["value"] == json.loads(b.stdout)["value"]

    def test_poly_required(self):
        proc = run_cli("integrate", "--dimension", "2")
        assert proc.returncode == 2
        assert "--poly" in proc.stderr


class TestMakeHarmonic:
    def test_zonal_text(self):
        proc = run_cli("make-harmonic", "--kind", "zonal", "--dimension", "3", "--degree", "2")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "x1^2 - 1/2 * x2^2 - 1/2 * x3^2"

    def test_identity_lists_components(self):
        proc = run_cli("make-harmonic", "--kind", "identity", "--dimension", "3")
        assert proc.stdout.splitlines() == ["x1", "x2", "x3"]

    def test_random_deterministic(self):
        a = run_cli("make-harmonic", "--kind", "random", "--dimension", "2", "--degree", "3", "--seed", "5")
        b = run_cli("make-harmonic", "--kind", "random", "--dimension", "2", "--degree", "3", "--seed", "5")
        assert a.stdout == b.stdout


class TestMollify:
    def test_csv_and_flag(self):
        proc = run_cli("mollify", "--dimension", "2", "--map", "zonal:2", "--spacing", "1/128")
        assert proc.returncode == 0
        assert "abs_error" in proc.stdout
        assert "NOT-A-COUNTEREXAMPLE" not in proc.stdout

    def test_non_harmonic_is_flagged_not_failed(self):
        proc = run_cli(
            "mollify", "--dimension", "2", "--map", "poly:x1^2 + x2^2", "--spacing", "1/128"
        )
        assert proc.returncode == 0
        assert "NOT-A-COUNTEREXAMPLE" in proc.stdout

    def test_points_file(self, tmp_path):
        pts = tmp_path / "pts.csv"
        pts.write_text("0, 0\n0.25, -0.25\n")
        proc = run_cli(
            "mollify", "--dimension", "2", "--map", "zonal:3",
            "--spacing", "1/128", "--points", str(pts),
        )
        assert proc.returncode == 0
        rows = [l for l in proc.stdout.splitlines() if l and not l.startswith(("#", "x1"))]
        assert len(rows) == 2


class TestUsage:
    def test_no_command_is_usage_error(self):
        proc = run_cli()
        assert proc.returncode == 2

    def test_bad_flag_value(self):
        proc = run_cli("volumes", "--n-max", "many")
        assert proc.returncode == 2

    def test_unknown_map_spec(self):
        proc = run_cli("decay", "--map", "spherical:2")
        assert proc.returncode == 2
        assert "map spec" in proc.stderr

    def test_version(self):
        proc = run_cli("--version")
        assert proc.returncode == 0
        assert proc.stdout.startswith("ballharmonics ")
