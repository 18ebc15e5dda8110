"""Grid experiments over (evolution time, initial-state angle).

Reproduces the delta surfaces of the cluster and XYZ experiments and
computes summary statistics (minimum slack, saturation-area fraction).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .bounds import BoundReport, check_bures, check_mixed_fs, check_pure
from .hamiltonian import HamiltonianSpec, cluster_ising, heisenberg_xyz, spectral
from .qstate import density_from_pure, depolarize, product_state

VIOLATION_TOL = 1e-9

__all__ = ["SweepConfig", "SweepResult", "SweepError", "run_sweep", "summarize"]


class SweepError(RuntimeError):
    """Aggregate of per-cell failures, each tagged with its coordinates."""


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one rectangular (theta, tau) sweep."""

    model: str = "cluster"
    n_qubits: int = 3
    J: float = 1.0
    gamma: float = 0.0
    mu: float = 0.0
    h: float = 0.0
    phi: float = 0.0
    theta_range: tuple[float, float, int] = (0.0, float(np.pi), 61)
    tau_range: tuple[float, float, int] = (0.0, 3.0, 61)
    flavor: str = "pure_fs"
    mixing_p: float | None = None
    seed: int = 0
    saturation_threshold: float = 0.1

    def __post_init__(self) -> None:
        if self.model not in ("cluster", "xyz"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.flavor not in ("pure_fs", "mixed_fs", "bures"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        for name, (lo, hi, steps) in (("theta", self.theta_range), ("tau", self.tau_range)):
            if steps < 2:
                raise ValueError(f"{name} grid needs at least 2 steps")
            if lo > hi:
                raise ValueError(f"{name} range must be ordered")
        if not (0.0 <= self.theta_range[0] and self.theta_range[1] <= np.pi):
            raise ValueError("theta range must lie within [0, pi]")
        if self.mixing_p is not None and not 0.0 <= self.mixing_p <= 1.0:
            raise ValueError("mixing_p must lie in [0, 1]")

    def thetas(self) -> np.ndarray:
        lo, hi, steps = self.theta_range
        return np.linspace(lo, hi, steps)

    def taus(self) -> np.ndarray:
        lo, hi, steps = self.tau_range
        return np.linspace(lo, hi, steps)

    def hamiltonian(self) -> HamiltonianSpec:
        if self.model == "cluster":
            return cluster_ising(self.n_qubits, self.J)
        return heisenberg_xyz(self.n_qubits, self.J, self.gamma, self.mu, self.h)


@dataclass(frozen=True)
class SweepResult:
    """Row-major grid of bound reports (theta outer, tau inner) + summary.

    ``saturation_fraction`` is the share of cells whose slack is small on
    the scale of the surface: delta <= threshold * max(delta). The
    relative form mirrors the per-panel color normalization of the
    reference surfaces (an absolute cut does not reproduce the high-field
    saturation-area growth); an all-zero grid counts as fully saturated.
    """

    config: SweepConfig
    cells: tuple[tuple[BoundReport, ...], ...]
    min_delta: float
    max_delta: float
    saturation_fraction: float
    violations: tuple[tuple[int, int], ...]

    def fraction_below(self, threshold: float) -> float:
        """Share of cells with delta strictly below an absolute threshold."""
        flat = [r.delta for row in self.cells for r in row]
        return sum(1 for d in flat if d < threshold) / len(flat)

    def saturation_at(self, threshold: float) -> float:
        """Share of cells with delta <= threshold * max_delta."""
        flat = [r.delta for row in self.cells for r in row]
        cut = threshold * max(self.max_delta, 0.0)
        return sum(1 for d in flat if d <= cut) / len(flat)


def _cell_violates(report: BoundReport) -> bool:
    # surrogate entanglement estimates may legitimately exceed the lhs, so
    # mixed flavors are judged on the theorem-grade geodesic inequality
    if report.flavor == "pure_fs":
        return report.delta < -VIOLATION_TOL
    return report.geodesic_margin < -VIOLATION_TOL


def _worker_count() -> int:
    env = os.environ.get("QSLGEOM_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return 1


def run_sweep(config: SweepConfig, n_workers: int | None = None) -> SweepResult:
    """Evaluate one bound report per grid cell.

    Deterministic given the config (mixed-flavor cells derive their
    restart seeds from (config.seed, row, column), so parallel and serial
    runs produce identical grids). The spectral decomposition is computed
    once and shared read-only across workers.
    """
    spec = config.hamiltonian()
    spectral(spec)  # fill the cache once, outside the workers
    thetas = config.thetas()
    taus = config.taus()
    workers = _worker_count() if n_workers is None else max(1, n_workers)
    p = 0.0 if config.mixing_p is None else config.mixing_p

    def one_row(i: int) -> list[BoundReport | Exception]:
        theta = float(thetas[i])
        extra = {"theta": theta, "phi": config.phi}
        psi0 = product_state(theta, config.phi, config.n_qubits)
        rho0 = None
        if config.flavor != "pure_fs":
            rho0 = depolarize(density_from_pure(psi0), p)
        out: list[BoundReport | Exception] = []
        for j, tau in enumerate(taus):
            try:
                if config.flavor == "pure_fs":
                    rep = check_pure(spec, psi0, float(tau), extra_params=extra)
                else:
                    seed = np.random.SeedSequence([config.seed, i, j])
                    check = check_mixed_fs if config.flavor == "mixed_fs" else check_bures
                    rep = check(spec, rho0, float(tau), seed=seed, extra_params=extra)
                out.append(rep)
            except Exception as exc:  # aggregated below with coordinates
                out.append(exc)
        return out

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one_row, range(len(thetas))))
    else:
        rows = [one_row(i) for i in range(len(thetas))]

    errors = [
        f"cell ({i},{j}) theta={thetas[i]:.6g} tau={taus[j]:.6g}: {cell}"
        for i, row in enumerate(rows)
        for j, cell in enumerate(row)
        if isinstance(cell, Exception)
    ]
    if errors:
        raise SweepError(f"{len(errors)} cell(s) failed:\n" + "\n".join(errors))

    cells = tuple(tuple(row) for row in rows)  # type: ignore[arg-type]
    deltas = [r.delta for row in cells for r in row]
    violations = tuple(
        (i, j) for i, row in enumerate(cells) for j, r in enumerate(row) if _cell_violates(r)
    )
    cut = config.saturation_threshold * max(max(deltas), 0.0)
    saturated = sum(1 for d in deltas if d <= cut)
    return SweepResult(
        config=config,
        cells=cells,
        min_delta=min(deltas),
        max_delta=max(deltas),
        saturation_fraction=saturated / len(deltas),
        violations=violations,
    )


def summarize(result: SweepResult) -> dict[str, Any]:
    """Min/max slack, argmin cell, saturation fraction, violation count.

    Also reports a crude Lipschitz estimate of the delta surface
    (max adjacent-cell jump over grid spacing) as a discretization smoke
    check.
    """
    cells = result.cells
    if not cells or not cells[0]:
        raise ValueError("empty sweep grid")
    thetas = result.config.thetas()
    taus = result.config.taus()
    delta = np.array([[r.delta for r in row] for row in cells])
    i, j = np.unravel_index(int(np.argmin(delta)), delta.shape)
    d_theta = thetas[1] - thetas[0] if len(thetas) > 1 else 1.0
    d_tau = taus[1] - taus[0] if len(taus) > 1 else 1.0
    jumps = []
    if delta.shape[0] > 1 and d_theta > 0.0:
        jumps.append(np.max(np.abs(np.diff(delta, axis=0))) / d_theta)
    if delta.shape[1] > 1 and d_tau > 0.0:
        jumps.append(np.max(np.abs(np.diff(delta, axis=1))) / d_tau)
    return {
        "min_delta": result.min_delta,
        "max_delta": result.max_delta,
        "argmin_cell": {
            "row": int(i),
            "col": int(j),
            "theta": float(thetas[i]),
            "tau": float(taus[j]),
        },
        "saturation_fraction": result.saturation_fraction,
        "saturation_threshold": result.config.saturation_threshold,
        "violation_count": len(result.violations),
        "n_cells": int(delta.size),
        "delta_lipschitz_estimate": float(max(jumps)) if jumps else 0.0,
    }
