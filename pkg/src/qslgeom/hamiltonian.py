"""Spin-chain Hamiltonians as weighted Pauli strings with cached spectra.

Energies are expressed in units of the coupling J and times in units of
hbar/J; internally hbar = 1 and the builders default to J = 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

HERM_TOL = 1e-12

_PAULI = {
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

__all__ = [
    "PauliTerm",
    "HamiltonianSpec",
    "SpectralDecomposition",
    "cluster_ising",
    "heisenberg_xyz",
    "assemble_dense",
    "spectral",
]


@dataclass(frozen=True)
class PauliTerm:
    """coefficient * product of single-qubit Paulis; identity elsewhere."""

    coefficient: float
    factors: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        if not np.isfinite(self.coefficient):
            raise ValueError("coefficient must be finite")
        seen = set()
        for q, p in self.factors:
            if q < 0:
                raise ValueError(f"negative qubit index {q}")
            if q in seen:
                raise ValueError(f"duplicate qubit index {q} in Pauli term")
            if p not in _PAULI:
                raise ValueError(f"unknown Pauli letter {p!r}")
            seen.add(q)
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @classmethod
    def of(cls, coefficient: float, factors: Mapping[int, str]) -> "PauliTerm":
        return cls(coefficient, tuple(factors.items()))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and the matching unitary of eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class HamiltonianSpec:
    """Symbolic term list plus lazily cached dense matrix and spectrum.

    Instances are immutable after construction; the dense/spectral caches
    are filled at most once under a lock, so concurrent readers are safe.
    """

    def __init__(
        self,
        n_qubits: int,
        terms: list[PauliTerm] | tuple[PauliTerm, ...],
        constant_offset: float = 0.0,
        model_tag: str = "custom",
        params: Mapping[str, float] | None = None,
    ):
        if n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        for t in terms:
            if t.factors and t.factors[-1][0] >= n_qubits:
                raise ValueError(
                    f"term touches qubit {t.factors[-1][0]}, register has {n_qubits}"
                )
        self.n_qubits = int(n_qubits)
        self.terms = tuple(terms)
        self.constant_offset = float(constant_offset)
        self.model_tag = str(model_tag)
        self.params = dict(params or {})
        self._lock = threading.Lock()
        self._dense: np.ndarray | None = None
        self._spectral: SpectralDecomposition | None = None

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def dense(self) -> np.ndarray:
        return assemble_dense(self)

    def spectrum(self) -> SpectralDecomposition:
        return spectral(self)


def _term_matrix(term: PauliTerm, n: int) -> np.ndarray:
    ops = {q: _PAULI[p] for q, p in term.factors}
    m = np.array([[1.0 + 0.0j]])
    for q in range(n):
        m = np.kron(m, ops.get(q, np.eye(2, dtype=complex)))
    return term.coefficient * m


def assemble_dense(spec: HamiltonianSpec) -> np.ndarray:
    """Dense 2^N x 2^N Hermitian matrix for the term list (cached)."""
    if spec._dense is not None:
        return spec._dense
    with spec._lock:
        if spec._dense is None:
            d = spec.dim
            h = np.zeros((d, d), dtype=complex)
            for term in spec.terms:
                h += _term_matrix(term, spec.n_qubits)
            if spec.constant_offset:
                h += spec.constant_offset * np.eye(d)
            dev = float(np.max(np.abs(h - h.conj().T)))
            if dev > HERM_TOL:
                raise ValueError(f"assembled matrix not Hermitian: deviation {dev:.3e}")
            h.setflags(write=False)
            spec._dense = h
    return spec._dense


def spectral(spec: HamiltonianSpec) -> SpectralDecomposition:
    """Eigendecomposition of the dense matrix, cached on the spec."""
    if spec._spectral is not None:
        return spec._spectral
    h = assemble_dense(spec)
    with spec._lock:
        if spec._spectral is None:
            try:
                vals, vecs = np.linalg.eigh(h)
            except np.linalg.LinAlgError as exc:
                raise np.linalg.LinAlgError(
                    f"eigensolver failed for {spec.model_tag} "
                    f"({spec.n_qubits} qubits): {exc}"
                ) from exc
            vals.setflags(write=False)
            vecs.setflags(write=False)
            spec._spectral = SpectralDecomposition(vals, vecs)
    return spec._spectral


def cluster_ising(n: int, J: float = 1.0, periodic: bool = False) -> HamiltonianSpec:
    """Cluster-generating Ising chain (J/4) sum_i (I - Z_i)(I - Z_{i+1}).

    Open chain by default; diagonal in the computational basis. Each bond
    expands to a constant J/4, single-Z pulls of -J/4, and a ZZ term of J/4.
    """
    if n < 2:
        raise ValueError("cluster model needs at least two qubits")
    bonds = [(i, i + 1) for i in range(n - 1)]
    if periodic:
        bonds.append((n - 1, 0))
    single_z = np.zeros(n)
    terms: list[PauliTerm] = []
    for i, j in bonds:
        single_z[i] -= J / 4.0
        single_z[j] -= J / 4.0
        terms.append(PauliTerm.of(J / 4.0, {i: "Z", j: "Z"}))
    for q in range(n):
        if single_z[q] != 0.0:
            terms.append(PauliTerm.of(single_z[q], {q: "Z"}))
    return HamiltonianSpec(
        n,
        terms,
        constant_offset=len(bonds) * J / 4.0,
        model_tag="cluster",
        params={"J": J, "periodic": float(periodic)},
    )


def heisenberg_xyz(
    n: int,
    J: float = 1.0,
    gamma: float = 0.0,
    mu: float = 0.0,
    h: float = 0.0,
    periodic: bool = True,
) -> HamiltonianSpec:
    """Anisotropic XYZ chain with a transverse field, on a ring by default.

    H = J sum_i [(1+gamma) X_i X_{i+1} + (1-gamma) Y_i Y_{i+1}
                 + mu Z_i Z_{i+1} + h Z_i]

    The bond sum wraps around when ``periodic``; the open-chain variant
    drops the wrap bond but keeps all N field terms. Terms with exactly
    zero coefficient are omitted from the term list.
    """
    if n < 2:
        raise ValueError("XYZ model needs at least two qubits")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"anisotropy gamma must lie in [0, 1], got {gamma}")
    bonds = [(i, (i + 1) % n) for i in range(n if periodic else n - 1)]
    terms: list[PauliTerm] = []
    for i, j in bonds:
        a, b = min(i, j), max(i, j)
        if J * (1.0 + gamma) != 0.0:
            terms.append(PauliTerm.of(J * (1.0 + gamma), {a: "X", b: "X"}))
        if J * (1.0 - gamma) != 0.0:
            terms.append(PauliTerm.of(J * (1.0 - gamma), {a: "Y", b: "Y"}))
        if J * mu != 0.0:
            terms.append(PauliTerm.of(J * mu, {a: "Z", b: "Z"}))
    if J * h != 0.0:
        for q in range(n):
            terms.append(PauliTerm.of(J * h, {q: "Z"}))
    return HamiltonianSpec(
        n,
        terms,
        model_tag="xyz",
        params={"J": J, "gamma": gamma, "mu": mu, "h": h, "periodic": float(periodic)},
    )
