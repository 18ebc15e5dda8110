"""Distances on state space: pure Fubini-Study family, Hilbert-Schmidt,
the mixed Fubini-Study geodesic, Uhlmann fidelity, and the Bures angle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import DensityOperator, StateVector

ARC_TOL = 1e-9
SQRT_EIG_TOL = 1e-10

__all__ = [
    "DistanceValue",
    "fs_distance",
    "bargmann_angle",
    "min_normed_distance",
    "hs_distance",
    "fs_mixed_geodesic",
    "uhlmann_fidelity",
    "bures_angle",
]


@dataclass(frozen=True)
class DistanceValue:
    """A nonnegative distance tagged with the metric that produced it."""

    value: float
    metric_kind: str

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise ValueError("distance must be nonnegative")


def _clamp01(x: float, what: str, tol: float = ARC_TOL) -> float:
    """Clamp to [0, 1] inside ``tol`` of the boundary; error beyond it."""
    if x > 1.0:
        if x > 1.0 + tol:
            raise ValueError(f"{what} = {x!r} exceeds 1 beyond tolerance")
        return 1.0
    if x < 0.0:
        if x < -tol:
            raise ValueError(f"{what} = {x!r} below 0 beyond tolerance")
        return 0.0
    return x


def _overlap_modulus(psi1: StateVector, psi2: StateVector) -> float:
    if psi1.n_qubits != psi2.n_qubits:
        raise ValueError("dimension mismatch between states")
    c = _clamp01(abs(np.vdot(psi1.amplitudes, psi2.amplitudes)), "overlap modulus")
    # states equal up to float resolution count as identical, so that
    # identity-of-indiscernibles holds exactly despite sqrt amplification
    return 1.0 if c >= 1.0 - 1e-14 else c


def fs_distance(psi1: StateVector, psi2: StateVector) -> DistanceValue:
    """Chordal Fubini-Study distance sqrt(4 (1 - |<psi1|psi2>|^2))."""
    c = _overlap_modulus(psi1, psi2)
    return DistanceValue(float(np.sqrt(4.0 * (1.0 - c * c))), "fs_chordal")


def bargmann_angle(psi1: StateVector, psi2: StateVector) -> DistanceValue:
    """Geodesic angle 2 arccos |<psi1|psi2>| in [0, pi]."""
    c = _overlap_modulus(psi1, psi2)
    return DistanceValue(float(2.0 * np.arccos(c)), "bargmann")


def min_normed_distance(psi1: StateVector, psi2: StateVector) -> DistanceValue:
    """Minimum over relative phase of the normed distance: sqrt(2 (1 - |<.|.>|))."""
    c = _overlap_modulus(psi1, psi2)
    return DistanceValue(float(np.sqrt(2.0 * (1.0 - c))), "min_normed")


def hs_distance(rho1: DensityOperator, rho2: DensityOperator) -> DistanceValue:
    """Hilbert-Schmidt distance sqrt(Tr (rho1 - rho2)^2)."""
    if rho1.n_qubits != rho2.n_qubits:
        raise ValueError("dimension mismatch between operators")
    delta = rho1.matrix - rho2.matrix
    return DistanceValue(float(np.linalg.norm(delta)), "hilbert_schmidt")


def fs_mixed_geodesic(rho_ref: DensityOperator, rho2: DensityOperator) -> DistanceValue:
    """Mixed-state FS geodesic: 2 arccos sqrt(Tr[rho_ref rho2] / Tr[rho_ref^2]).

    Asymmetric: the first argument normalizes the overlap. The ratio can
    exceed 1 for pairs of different purity, which is rejected; along a
    unitary trajectory (the intended use, reference = initial state) the
    purity is conserved and the ratio stays in [0, 1].
    """
    if rho_ref.n_qubits != rho2.n_qubits:
        raise ValueError("dimension mismatch between operators")
    # same float expression for both traces so that rho2 = rho_ref gives
    # a ratio of exactly 1 (and hence a distance of exactly 0)
    purity = float(np.real(np.sum(rho_ref.matrix.conj() * rho_ref.matrix)))
    if purity <= 0.0:
        raise ValueError("reference state has zero purity")
    overlap = float(np.real(np.sum(rho_ref.matrix.conj() * rho2.matrix)))
    ratio = overlap / purity
    if ratio > 1.0 + ARC_TOL:
        raise ValueError(
            f"overlap ratio {ratio!r} exceeds 1: Tr[rho2^2] > Tr[rho_ref^2]; "
            "the mixed FS geodesic is only defined from the higher-purity side"
        )
    ratio = _clamp01(ratio, "overlap ratio")
    if ratio >= 1.0 - 1e-14:  # equal up to float resolution
        ratio = 1.0
    return DistanceValue(float(2.0 * np.arccos(np.sqrt(ratio))), "fs_mixed_geodesic")


def _chop(vals: np.ndarray, what: str) -> np.ndarray:
    """Clamp round-off negatives to 0 and zero out eigenvalues at relative
    round-off level, which would otherwise pollute square roots with
    sqrt(eps)-sized noise near rank deficiency."""
    lo = float(vals.min())
    if lo < -SQRT_EIG_TOL:
        raise ValueError(f"{what} has negative eigenvalue {lo:.3e} beyond tolerance")
    out = np.maximum(vals, 0.0)
    out[out < float(out.max(initial=0.0)) * 1e-13] = 0.0
    return out


def _psd_sqrt(m: np.ndarray, what: str) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    return (vecs * np.sqrt(_chop(vals, what))) @ vecs.conj().T


def uhlmann_fidelity(rho1: DensityOperator, rho2: DensityOperator) -> float:
    """(Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 in [0, 1]."""
    if rho1.n_qubits != rho2.n_qubits:
        raise ValueError("dimension mismatch between operators")
    s1 = _psd_sqrt(rho1.matrix, "rho1")
    inner = s1 @ rho2.matrix @ s1
    vals = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    root_sum = float(np.sum(np.sqrt(_chop(vals, "fidelity kernel"))))
    return _clamp01(root_sum * root_sum, "fidelity")


def bures_angle(rho1: DensityOperator, rho2: DensityOperator) -> DistanceValue:
    """arccos sqrt(F(rho1, rho2)) in [0, pi/2]; the arccos argument gets
    the usual 1e-9 boundary clamp, so identical inputs give exactly 0."""
    f = uhlmann_fidelity(rho1, rho2)
    arg = _clamp01(float(np.sqrt(f)), "Bures arccos argument")
    if arg > 1.0 - ARC_TOL:
        arg = 1.0
    return DistanceValue(float(np.arccos(arg)), "bures_angle")
