import numpy as np
import pytest

import qslgeom.sweeps as sweeps
from qslgeom.sweeps import SweepConfig, SweepError, run_sweep, summarize

SMALL = dict(theta_range=(0.0, float(np.pi), 9), tau_range=(0.0, 3.0, 9))


def grid_deltas(result):
    return [[r.delta for r in row] for row in result.cells]


class TestSweepConfig:
    def test_rejects_unknown_model(self):
        with pytest.raises(ValueError):
            SweepConfig(model="heisenberg")

    def test_rejects_single_step_grid(self):
        with pytest.raises(ValueError):
            SweepConfig(theta_range=(0.0, 1.0, 1))

    def test_rejects_theta_outside_range(self):
        with pytest.raises(ValueError):
            SweepConfig(theta_range=(0.0, 4.0, 5))

    def test_rejects_unordered_range(self):
        with pytest.raises(ValueError):
            SweepConfig(tau_range=(2.0, 1.0, 5))

    def test_rejects_bad_mixing(self):
        with pytest.raises(ValueError):
            SweepConfig(mixing_p=1.5)


class TestRunSweep:
    def test_degenerate_time_grid_gives_zero_deltas(self):
        res = run_sweep(SweepConfig(tau_range=(0.0, 0.0, 2), theta_range=(0.0, np.pi, 5)))
        assert all(r.delta == 0.0 for row in res.cells for r in row)
        assert res.min_delta == res.max_delta == 0.0
        assert res.saturation_fraction == 1.0
        assert not res.violations

    def test_small_cluster_sweep_has_no_violations(self):
        res = run_sweep(SweepConfig(**SMALL))
        assert res.violations == ()
        assert res.min_delta >= -1e-9

    def test_deterministic_rerun(self):
        a = run_sweep(SweepConfig(**SMALL))
        b = run_sweep(SweepConfig(**SMALL))
        assert grid_deltas(a) == grid_deltas(b)

    def test_parallel_matches_serial(self):
        cfg = SweepConfig(**SMALL)
        serial = run_sweep(cfg, n_workers=1)
        parallel = run_sweep(cfg, n_workers=4)
        assert grid_deltas(serial) == grid_deltas(parallel)

    def test_worker_count_from_env(self, monkeypatch):
        monkeypatch.setenv("QSLGEOM_THREADS", "3")
        res = run_sweep(SweepConfig(theta_range=(0.0, np.pi, 5), tau_range=(0.0, 1.0, 5)))
        assert len(res.cells) == 5

    def test_mixed_flavors_deterministic_and_sound(self):
        for flavor in ("mixed_fs", "bures"):
            cfg = SweepConfig(
                flavor=flavor,
                mixing_p=0.25,
                seed=11,
                theta_range=(0.1, 3.0, 3),
                tau_range=(0.0, 2.0, 3),
            )
            a = run_sweep(cfg)
            b = run_sweep(cfg)
            assert grid_deltas(a) == grid_deltas(b)
            for row in a.cells:
                for rep in row:
                    assert rep.geodesic_margin >= -1e-9
                    assert rep.surrogate

    def test_cell_errors_carry_coordinates(self, monkeypatch):
        calls = 0

        real = sweeps.check_pure

        def exploding(spec, psi0, tau, extra_params=None):
            nonlocal calls
            calls += 1
            if calls == 4:
                raise RuntimeError("kaboom")
            return real(spec, psi0, tau, extra_params=extra_params)

        monkeypatch.setattr(sweeps, "check_pure", exploding)
        with pytest.raises(SweepError, match=r"cell \(1,0\).*kaboom"):
            run_sweep(SweepConfig(theta_range=(0.0, np.pi, 3), tau_range=(0.0, 1.0, 3)))


class TestSummarize:
    def test_all_zero_grid(self):
        res = run_sweep(SweepConfig(tau_range=(0.0, 0.0, 2), theta_range=(0.0, np.pi, 3)))
        s = summarize(res)
        assert s["min_delta"] == s["max_delta"] == 0.0
        assert s["saturation_fraction"] == 1.0
        assert s["violation_count"] == 0

    def test_fig1_style_summary(self):
        res = run_sweep(SweepConfig(**SMALL))
        s = summarize(res)
        assert s["min_delta"] >= -1e-9
        assert s["n_cells"] == 81
        assert 0.0 <= s["saturation_fraction"] <= 1.0
        assert s["delta_lipschitz_estimate"] >= 0.0

    def test_fraction_monotone_in_threshold(self):
        res = run_sweep(SweepConfig(**SMALL))
        fracs = [res.fraction_below(t) for t in (0.01, 0.05, 0.1, 0.5, 1.0, 5.0)]
        assert all(b >= a for a, b in zip(fracs, fracs[1:]))
        sat = [res.saturation_at(t) for t in (0.01, 0.05, 0.1, 0.5, 1.0)]
        assert all(b >= a for a, b in zip(sat, sat[1:]))
