"""Pure states and density operators of N-qubit registers.

Basis convention used throughout the package: qubit 0 is the *most*
significant bit, so basis index ``b`` encodes ``|b_0 b_1 ... b_{N-1}>``
and reshaping an amplitude vector to ``[2] * n`` puts qubit ``i`` on
axis ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

NORM_TOL = 1e-12
HERM_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_TOL = 1e-10

__all__ = [
    "StateVector",
    "DensityOperator",
    "Bipartition",
    "product_state",
    "tensor",
    "density_from_pure",
    "partial_trace",
    "schmidt_squared",
    "all_bipartitions",
    "basis_state",
    "ghz_state",
    "w_state",
    "random_state",
    "random_density",
    "depolarize",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of an ``n_qubits`` register."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.n_qubits < 1:
            raise ValueError("register needs at least one qubit")
        if amps.size != 2**self.n_qubits:
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes for "
                f"{self.n_qubits} qubits, got {amps.size}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: sum |a|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def overlap(self, other: "StateVector") -> complex:
        """Inner product <self|other>."""
        if other.n_qubits != self.n_qubits:
            raise ValueError("dimension mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator on the register."""

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        d = 2**self.n_qubits
        if self.n_qubits < 1:
            raise ValueError("register needs at least one qubit")
        if m.shape != (d, d):
            raise ValueError(f"expected {d}x{d} matrix, got shape {m.shape}")
        herm_dev = float(np.max(np.abs(m - m.conj().T)))
        if herm_dev > HERM_TOL:
            raise ValueError(f"matrix not Hermitian: max deviation {herm_dev:.3e}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr!r}, expected 1")
        lo = float(np.min(np.linalg.eigvalsh(m)))
        if lo < -EIG_TOL:
            raise ValueError(f"matrix not positive semidefinite: min eigenvalue {lo:.3e}")
        object.__setattr__(self, "matrix", _readonly(m))

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def purity(self) -> float:
        """Tr rho^2."""
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True)
class Bipartition:
    """A split of qubits {0..N-1} into two nonempty disjoint sets."""

    left_qubits: tuple[int, ...]
    right_qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        left = tuple(sorted(self.left_qubits))
        right = tuple(sorted(self.right_qubits))
        n = len(left) + len(right)
        if not left or not right:
            raise ValueError("both sides of a bipartition must be nonempty")
        if set(left) & set(right):
            raise ValueError("bipartition sides overlap")
        if set(left) | set(right) != set(range(n)):
            raise ValueError("bipartition must cover qubits 0..N-1 exactly")
        object.__setattr__(self, "left_qubits", left)
        object.__setattr__(self, "right_qubits", right)

    @classmethod
    def from_left(cls, left: Iterable[int], n_qubits: int) -> "Bipartition":
        left_t = tuple(sorted(set(left)))
        right_t = tuple(q for q in range(n_qubits) if q not in left_t)
        return cls(left_t, right_t)

    @property
    def n_qubits(self) -> int:
        return len(self.left_qubits) + len(self.right_qubits)


def all_bipartitions(n_qubits: int) -> Iterator[Bipartition]:
    """Yield the 2^(N-1) - 1 distinct bipartitions of an N-qubit register.

    Each cut is produced once, canonicalized so that qubit 0 is on the left.
    """
    if n_qubits < 2:
        raise ValueError("bipartitions need at least two qubits")
    for mask in range(2 ** (n_qubits - 1) - 1):
        left = [0] + [q for q in range(1, n_qubits) if (mask >> (q - 1)) & 1]
        yield Bipartition.from_left(left, n_qubits)


def product_state(theta: float, phi: float, n: int) -> StateVector:
    """|phi>^x n with |phi> = cos(theta)|0> + exp(-i phi) sin(theta)|1>.

    Parameters
    ----------
    theta : float
        State parameter in [0, pi].
    phi : float
        Phase parameter in [0, 2 pi).
    n : int
        Number of qubits.
    """
    if n < 1:
        raise ValueError("invalid register: n must be >= 1")
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    single = np.array([np.cos(theta), np.exp(-1j * phi) * np.sin(theta)], dtype=complex)
    amps = single
    for _ in range(n - 1):
        amps = np.kron(amps, single)
    # kron of unit vectors can drift at the last ulp; renormalize exactly once
    amps = amps / np.linalg.norm(amps)
    return StateVector(n, amps)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; qubits of ``a`` come first (more significant)."""
    return StateVector(a.n_qubits + b.n_qubits, np.kron(a.amplitudes, b.amplitudes))


def density_from_pure(psi: StateVector) -> DensityOperator:
    """Rank-1 projector |psi><psi|."""
    a = psi.amplitudes
    return DensityOperator(psi.n_qubits, np.outer(a, a.conj()))


def partial_trace(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    """Trace out all qubits not in ``keep``.

    The reduced operator acts on the kept qubits in ascending index order.
    """
    keep_t = tuple(sorted(set(keep)))
    n = rho.n_qubits
    if not keep_t:
        raise ValueError("keep set must be nonempty")
    if keep_t[0] < 0 or keep_t[-1] >= n:
        raise ValueError(f"keep indices out of range for {n} qubits")
    if len(keep_t) == n:
        return rho
    t = rho.matrix.reshape([2] * (2 * n))
    # pair up row/column axes of traced qubits
    traced = [q for q in range(n) if q not in keep_t]
    for q in reversed(traced):
        t = np.trace(t, axis1=q, axis2=q + (t.ndim // 2))
    k = len(keep_t)
    return DensityOperator(k, t.reshape(2**k, 2**k))


def _split_matrix(psi: StateVector, cut: Bipartition) -> np.ndarray:
    """Amplitudes reshaped to a (2^|left| x 2^|right|) coefficient matrix."""
    n = psi.n_qubits
    if cut.n_qubits != n:
        raise ValueError(f"cut is for {cut.n_qubits} qubits, state has {n}")
    perm = cut.left_qubits + cut.right_qubits
    t = psi.amplitudes.reshape([2] * n).transpose(perm)
    return t.reshape(2 ** len(cut.left_qubits), 2 ** len(cut.right_qubits))


def schmidt_squared(psi: StateVector, cut: Bipartition) -> np.ndarray:
    """Squared Schmidt coefficients across ``cut``, in descending order.

    For a single-qubit left side the 2x2 reduced-operator eigenproblem is
    solved instead of an SVD; the spectra agree.
    """
    m = _split_matrix(psi, cut)
    if m.shape[0] == 2:
        red = m @ m.conj().T
        vals = np.linalg.eigvalsh(red)[::-1]
    else:
        s = np.linalg.svd(m, compute_uv=False)
        vals = s**2
    return np.maximum(vals.real, 0.0)


def basis_state(n: int, index: int) -> StateVector:
    """Computational basis state |index> of an n-qubit register."""
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1.0
    return StateVector(n, amps)


def ghz_state(n: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2)."""
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return StateVector(n, amps)


def w_state(n: int) -> StateVector:
    """Equal superposition of all single-excitation basis states."""
    amps = np.zeros(2**n, dtype=complex)
    for q in range(n):
        amps[1 << (n - 1 - q)] = 1.0 / np.sqrt(n)
    return StateVector(n, amps)


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(n, v / np.linalg.norm(v))


def random_density(n: int, rng: np.random.Generator, rank: int | None = None) -> DensityOperator:
    """Random mixed state from a normalized Wishart (Ginibre) matrix."""
    d = 2**n
    r = d if rank is None else rank
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    m = g @ g.conj().T
    return DensityOperator(n, m / np.trace(m))


def depolarize(rho: DensityOperator, p: float) -> DensityOperator:
    """(1 - p) rho + p I / 2^N."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarization strength must lie in [0, 1], got {p}")
    d = rho.dim
    return DensityOperator(rho.n_qubits, (1.0 - p) * rho.matrix + p * np.eye(d) / d)
