"""Exact unitary propagation, energy statistics, and path-length quadrature.

hbar = 1 throughout; with the default J = 1 builders, times are J t / hbar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .hamiltonian import HamiltonianSpec, assemble_dense, spectral
from .qstate import DensityOperator, StateVector

VAR_CLAMP = 1e-12

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

State = Union[StateVector, DensityOperator]

__all__ = [
    "EnergyStats",
    "Trajectory",
    "propagate_pure",
    "propagate_density",
    "energy_stats_pure",
    "energy_stats_mixed",
    "evolve_trajectory",
    "path_length",
    "mixed_fs_speed",
]


@dataclass(frozen=True)
class EnergyStats:
    """Mean energy and fluctuation(s) of a state under a Hamiltonian."""

    mean: float
    fluctuation: float
    quantum_fluctuation: float | None = None

    def __post_init__(self) -> None:
        if self.fluctuation < 0.0:
            raise ValueError("fluctuation must be nonnegative")
        if self.quantum_fluctuation is not None and self.quantum_fluctuation < 0.0:
            raise ValueError("quantum fluctuation must be nonnegative")


@dataclass(frozen=True)
class Trajectory:
    """States sampled along a quantum evolution, aligned with times."""

    times: np.ndarray
    states: tuple[State, ...]
    spec: HamiltonianSpec

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size != len(self.states):
            raise ValueError("times and states lengths must match")
        if t.size and t[0] != 0.0:
            raise ValueError("trajectory must start at t = 0")
        if np.any(np.diff(t) <= 0.0):
            raise ValueError("times must be strictly ascending")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", tuple(self.states))


def _clamped_variance(m2: float, mean: float) -> float:
    var = m2 - mean * mean
    if var < 0.0:
        if var < -VAR_CLAMP:
            raise ArithmeticError(f"variance {var:.3e} below round-off tolerance")
        var = 0.0
    return var


def _check_dim(spec: HamiltonianSpec, state: State) -> None:
    if state.dim != spec.dim:
        raise ValueError(
            f"dimension mismatch: state on {state.n_qubits} qubits, "
            f"Hamiltonian on {spec.n_qubits}"
        )


def propagate_pure(spec: HamiltonianSpec, psi0: StateVector, t: float) -> StateVector:
    """exp(-i H t) |psi0> via the cached spectral decomposition."""
    _check_dim(spec, psi0)
    if t == 0.0:
        return psi0
    sd = spectral(spec)
    w = sd.eigenvectors.conj().T @ psi0.amplitudes
    amps = sd.eigenvectors @ (np.exp(-1j * sd.eigenvalues * t) * w)
    return StateVector(psi0.n_qubits, amps)


def propagate_density(spec: HamiltonianSpec, rho0: DensityOperator, t: float) -> DensityOperator:
    """U rho0 U^dag with U = exp(-i H t)."""
    _check_dim(spec, rho0)
    if t == 0.0:
        return rho0
    sd = spectral(spec)
    u = sd.eigenvectors @ (np.exp(-1j * sd.eigenvalues * t)[:, None] * sd.eigenvectors.conj().T)
    m = u @ rho0.matrix @ u.conj().T
    return DensityOperator(rho0.n_qubits, 0.5 * (m + m.conj().T))


def energy_stats_pure(spec: HamiltonianSpec, psi: StateVector) -> EnergyStats:
    """<H> and Delta H = sqrt(<H^2> - <H>^2) for a pure state."""
    _check_dim(spec, psi)
    sd = spectral(spec)
    p = np.abs(sd.eigenvectors.conj().T @ psi.amplitudes) ** 2
    mean = float(p @ sd.eigenvalues)
    m2 = float(p @ sd.eigenvalues**2)
    return EnergyStats(mean, float(np.sqrt(_clamped_variance(m2, mean))))


def _trace_prod(a: np.ndarray, b: np.ndarray) -> complex:
    # Tr(a @ b) without forming the product
    return complex(np.sum(a * b.T))


def _commutator_strength(rho: np.ndarray, h: np.ndarray) -> tuple[float, float]:
    """Return (Tr[rho^2 H^2] - Tr[(rho H)^2], Tr rho^2), clamping round-off."""
    rh = rho @ h
    x = float(np.sum(np.abs(rh) ** 2) - np.real(np.sum(rh * rh.T)))
    if x < 0.0:
        if x < -VAR_CLAMP:
            raise ArithmeticError(f"commutator strength {x:.3e} below round-off tolerance")
        x = 0.0
    purity = float(np.real(np.sum(np.abs(rho) ** 2)))
    return x, purity


def energy_stats_mixed(spec: HamiltonianSpec, rho: DensityOperator) -> EnergyStats:
    """Mean, fluctuation, and the purity-normalized quantum fluctuation.

    fluctuation^2      = Tr(rho H^2) - (Tr rho H)^2
    quantum_fluct^2    = 2 [Tr(rho^2 H^2) - Tr((rho H)^2)] / Tr rho^2

    The Tr rho^2 normalization makes the quantum fluctuation join the
    pure-state value sqrt(2) * fluctuation continuously.
    """
    _check_dim(spec, rho)
    h = assemble_dense(spec)
    mean = float(np.real(_trace_prod(rho.matrix, h)))
    m2 = float(np.real(_trace_prod(rho.matrix @ h, h)))
    fluct = float(np.sqrt(_clamped_variance(m2, mean)))
    x, purity = _commutator_strength(rho.matrix, h)
    return EnergyStats(mean, fluct, float(np.sqrt(2.0 * x / purity)))


def mixed_fs_speed(spec: HamiltonianSpec, rho: DensityOperator) -> float:
    """Instantaneous Fubini-Study speed of a mixed state under H.

    sqrt(4 [Tr(rho^2 H^2) - Tr((rho H)^2)] / Tr rho^2); equals
    2 * Delta H for pure states and is validated against finite
    differences of the overlap-based metric in the test suite.
    """
    _check_dim(spec, rho)
    x, purity = _commutator_strength(rho.matrix, assemble_dense(spec))
    return float(2.0 * np.sqrt(x / purity))


def evolve_trajectory(spec: HamiltonianSpec, state0: State, times: Sequence[float]) -> Trajectory:
    """Propagate ``state0`` to every grid time (the grid must start at 0)."""
    if isinstance(state0, StateVector):
        states = tuple(propagate_pure(spec, state0, float(t)) for t in times)
    else:
        states = tuple(propagate_density(spec, state0, float(t)) for t in times)
    return Trajectory(np.asarray(times, dtype=float), states, spec)


def _instant_speed(spec: HamiltonianSpec, state: State, metric: str) -> float:
    if isinstance(state, StateVector):
        dh = energy_stats_pure(spec, state).fluctuation
        if metric in ("pure_fs", "mixed_fs"):
            return 2.0 * dh
        if metric == "bures":
            return dh
    else:
        if metric == "pure_fs":
            raise ValueError("pure_fs speed is defined for state vectors only")
        if metric == "mixed_fs":
            return mixed_fs_speed(spec, state)
        if metric == "bures":
            return energy_stats_mixed(spec, state).fluctuation
    raise ValueError(f"unknown metric {metric!r}")


def path_length(trajectory: Trajectory, metric: str) -> float:
    """Trapezoid quadrature of the instantaneous speed along the trajectory.

    metric: 'pure_fs' (2 Delta H), 'mixed_fs' (normalized FS speed), or
    'bures' (Delta H). Needs at least two samples.
    """
    if len(trajectory.states) < 2:
        raise ValueError("path length needs at least two trajectory samples")
    speeds = np.array(
        [_instant_speed(trajectory.spec, s, metric) for s in trajectory.states]
    )
    return float(_trapezoid(speeds, trajectory.times))
