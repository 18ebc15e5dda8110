import json

import numpy as np
import pytest

import qslgeom.bounds
from qslgeom.cli import emit_csv, main, parse_args, selftest
from qslgeom.evolve import EnergyStats
from qslgeom.sweeps import SweepConfig, run_sweep


class TestParseArgs:
    def test_fig1_sweep_line(self):
        cmd = parse_args(
            "sweep --model cluster --n 3 --theta-steps 61 --tau-max 3 --tau-steps 61 "
            "--out fig1.csv".split()
        )
        assert cmd.verb == "sweep"
        assert cmd.out == "fig1.csv"
        assert cmd.options["model"] == "cluster"
        assert cmd.options["n"] == 3
        assert cmd.options["theta-steps"] == 61
        assert cmd.options["tau-max"] == 3.0

    def test_check_line(self):
        cmd = parse_args(
            "check --model cluster --n 2 --theta 0.7853981633974483 "
            "--tau 3.141592653589793".split()
        )
        assert cmd.verb == "check"
        assert cmd.options["theta"] == pytest.approx(np.pi / 4.0)
        assert cmd.options["tau"] == pytest.approx(np.pi)

    def test_fig2_panel_line(self):
        cmd = parse_args(
            "sweep --model xyz --gamma 0.5 --mu 0.5 --h 1.5 --out b3.csv".split()
        )
        assert cmd.options["model"] == "xyz"
        assert cmd.options["gamma"] == 0.5
        assert cmd.options["h"] == 1.5

    def test_unknown_flag_is_usage_error(self):
        assert main(["sweep", "--frobnicate", "1", "--out", "x.csv"]) == 2

    def test_defaults_fill_in(self):
        cmd = parse_args(["sweep", "--out", "x.csv"])
        assert cmd.options["seed"] == 0
        assert cmd.options["flavor"] == "pure_fs"
        assert cmd.options["saturation-threshold"] == 0.1


class TestConfigFile:
    def test_file_values_and_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# fig2 panel\nmodel = xyz\ngamma = 0.5\nmu = 0.5\nh = 1.5\ntheta-steps = 11\n"
        )
        cmd = parse_args(["sweep", "--config", str(cfg), "--h", "0.0", "--out", "x.csv"])
        assert cmd.options["model"] == "xyz"
        assert cmd.options["gamma"] == 0.5
        assert cmd.options["theta-steps"] == 11
        assert cmd.options["h"] == 0.0  # flag wins

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("banana = 3\n")
        assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 2


class TestEmitCsv:
    def test_two_by_two_grid_shape_and_format(self, tmp_path):
        cfg = SweepConfig(theta_range=(0.0, 1.0, 2), tau_range=(0.0, 1.0, 2))
        res = run_sweep(cfg)
        path = tmp_path / "grid.csv"
        emit_csv(res, path)
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "theta,tau,dH,overlap_angle,E_G,G_E,lhs,delta"
        assert len(lines) == 5
        # tau = 0 rows serialize delta as plain "0"
        first = lines[1].split(",")
        assert first[1] == "0"
        assert first[-1] == "0"

    def test_serialization_round_trips(self, tmp_path):
        cfg = SweepConfig(theta_range=(0.0, np.pi, 5), tau_range=(0.0, 2.0, 5))
        res = run_sweep(cfg)
        path = tmp_path / "grid.csv"
        emit_csv(res, path)
        rows = path.read_text().splitlines()[1:]
        flat = [rep for row in res.cells for rep in row]
        for line, rep in zip(rows, flat):
            vals = [float(x) for x in line.split(",")]
            assert vals[6] == rep.lhs
            assert vals[7] == rep.delta

    def test_byte_identical_rerun(self, tmp_path):
        cfg = SweepConfig(theta_range=(0.0, np.pi, 7), tau_range=(0.0, 3.0, 7))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_sweep(cfg), a)
        emit_csv(run_sweep(cfg), b)
        assert a.read_bytes() == b.read_bytes()


class TestVerbs:
    def test_sweep_verb_end_to_end(self, tmp_path, capsys):
        out = tmp_path / "fig.csv"
        summary_out = tmp_path / "fig.json"
        code = main(
            [
                "sweep", "--model", "cluster", "--n", "3",
                "--theta-steps", "7", "--tau-steps", "7",
                "--out", str(out), "--summary-out", str(summary_out),
            ]
        )
        assert code == 0
        assert out.exists()
        payload = json.loads(capsys.readouterr().out)
        assert payload["config"]["model"] == "cluster"
        assert payload["summary"]["violation_count"] == 0
        assert json.loads(summary_out.read_text()) == payload

    def test_check_verb_emits_json(self, capsys):
        code = main(
            [
                "check", "--model", "cluster", "--n", "2",
                "--theta", "0.7853981633974483", "--tau", "3.141592653589793",
            ]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["flavor"] == "pure_fs"
        assert report["lhs"] == pytest.approx(np.pi * np.sqrt(3.0) / 4.0, abs=1e-9)
        assert report["delta"] == pytest.approx(np.pi * (np.sqrt(3.0) - 1.0) / 4.0, abs=1e-9)

    def test_check_requires_theta(self, capsys):
        assert main(["check", "--tau", "1.0"]) == 2

    def test_selftest_passes_on_healthy_build(self, capsys):
        assert main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert "pass" in out
        assert "FAIL" not in out

    def test_selftest_catches_fluctuation_sign_flip(self, capsys, monkeypatch):
        real = qslgeom.bounds.energy_stats_pure

        def flipped(spec, psi):
            stats = real(spec, psi)
            bad = object.__new__(EnergyStats)
            object.__setattr__(bad, "mean", stats.mean)
            object.__setattr__(bad, "fluctuation", -stats.fluctuation)
            object.__setattr__(bad, "quantum_fluctuation", None)
            return bad

        monkeypatch.setattr(qslgeom.bounds, "energy_stats_pure", flipped)
        assert selftest() != 0
        assert "FAIL" in capsys.readouterr().out
