"""Geometric multipartite entanglement measures.

GGM in closed form over all bipartitions, GM by alternating single-site
optimization with a brute-force oracle for small registers, the angle map
G(E) = arccos sqrt(1 - E), and pure-product surrogate measures for mixed
states under the FS and Bures metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .qstate import Bipartition, DensityOperator, StateVector, all_bipartitions

E_TOL = 1e-12
DEFAULT_RESTARTS = 16
DEFAULT_MAX_ITERS = 500
DEFAULT_TOL = 1e-12
DEFAULT_GRID = 60

Seed = Union[int, np.random.SeedSequence, None]

__all__ = [
    "EntanglementValue",
    "g_of_e",
    "ggm",
    "gm_als",
    "gm_brute",
    "mixed_measure_surrogate",
]


def g_of_e(e: float) -> float:
    """Angle arccos sqrt(1 - e) commensurate with geodesic distances."""
    if e < -E_TOL or e > 1.0 + E_TOL:
        raise ValueError(f"entanglement value {e!r} outside [0, 1]")
    e = min(max(e, 0.0), 1.0)
    return float(np.arccos(np.sqrt(1.0 - e)))


def _snap_e(e: float) -> float:
    """Clamp to [0, 1]; round-off-level values snap to an exact 0."""
    if e < -E_TOL or e > 1.0 + E_TOL:
        raise ValueError(f"entanglement value {e!r} outside [0, 1]")
    if e < E_TOL:
        return 0.0
    return min(e, 1.0)


@dataclass(frozen=True)
class EntanglementValue:
    """Result of a geometric entanglement evaluation.

    ``e`` is the measure in [0, 1] and ``g`` the matching angle. For the
    mixed-state surrogates ``objective`` keeps the raw (unclamped) minimum
    of the distance objective, which can dip below zero for near-product
    mixed states under the FS normalization.
    """

    measure_kind: str
    e: float
    g: float
    witness: StateVector | None
    converged: bool
    restarts_used: int
    surrogate: bool = False
    objective: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.e <= 1.0:
            raise ValueError(f"e = {self.e!r} outside [0, 1]")
        if abs(self.g - np.arccos(np.sqrt(1.0 - self.e))) > 1e-12:
            raise ValueError("g does not match arccos sqrt(1 - e)")


def _value(kind, e, witness, converged, restarts, surrogate=False, objective=None):
    e = _snap_e(e)
    return EntanglementValue(
        kind, e, g_of_e(e), witness, converged, restarts,
        surrogate=surrogate, objective=e if objective is None else objective,
    )


# ---------------------------------------------------------------------------
# GGM: closed form over bipartitions
# ---------------------------------------------------------------------------

def _witness_from_cut(
    psi: StateVector, cut: Bipartition, u: np.ndarray, v: np.ndarray
) -> StateVector:
    """Product state u (x) v across ``cut``, in the original qubit order."""
    n = psi.n_qubits
    perm = cut.left_qubits + cut.right_qubits
    t = np.outer(u, v).reshape([2] * n).transpose(np.argsort(perm))
    amps = t.reshape(-1)
    return StateVector(n, amps / np.linalg.norm(amps))


def ggm(psi: StateVector) -> EntanglementValue:
    """Generalized geometric measure: 1 - max over all bipartitions of the
    largest squared Schmidt coefficient.

    The witness is the bipartite-product state built from the top singular
    vectors of the best cut, so 1 - |<witness|psi>|^2 reproduces ``e``.
    """
    n = psi.n_qubits
    if n < 2:
        raise ValueError("GGM needs at least two qubits")
    best_lam2 = -1.0
    best: tuple[Bipartition, np.ndarray, np.ndarray] | None = None
    for cut in all_bipartitions(n):
        perm = cut.left_qubits + cut.right_qubits
        m = psi.amplitudes.reshape([2] * n).transpose(perm)
        m = m.reshape(2 ** len(cut.left_qubits), -1)
        uu, ss, vh = np.linalg.svd(m, full_matrices=False)
        lam2 = float(ss[0] ** 2)
        if lam2 > best_lam2:
            best_lam2 = lam2
            best = (cut, uu[:, 0], vh[0, :])
    assert best is not None
    witness = _witness_from_cut(psi, best[0], best[1], best[2])
    return _value("ggm", 1.0 - best_lam2, witness, True, 1)


# ---------------------------------------------------------------------------
# GM: alternating single-site optimization
# ---------------------------------------------------------------------------

def _random_bloch(rng: np.random.Generator) -> np.ndarray:
    """Area-uniform single-qubit state: cos(theta) uniform, phase uniform."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    return np.array([np.sqrt((1.0 + z) / 2.0), np.exp(1j * phi) * np.sqrt((1.0 - z) / 2.0)])


def _contract_others(t: np.ndarray, sites: list[np.ndarray], k: int) -> np.ndarray:
    """Contract conj(site vectors) into every axis of ``t`` except axis k."""
    cur = t
    for i in range(len(sites) - 1, -1, -1):
        if i == k:
            continue
        cur = np.tensordot(cur, sites[i].conj(), axes=([i], [0]))
    return cur


def _als_overlap(
    t: np.ndarray,
    sites: list[np.ndarray],
    max_iters: int,
    tol: float,
    rng: np.random.Generator,
) -> tuple[float, list[np.ndarray], bool]:
    """Alternating maximization of |<product|psi>| from a given start.

    Returns (best overlap, site vectors, converged flag). A zero
    single-site contraction re-randomizes that site and marks the run
    non-convergent for this sweep's bookkeeping.
    """
    n = len(sites)
    overlap = 0.0
    degenerate = False
    for _ in range(max_iters):
        prev = overlap
        for k in range(n):
            c = _contract_others(t, sites, k)
            nc = np.linalg.norm(c)
            if nc == 0.0:
                sites[k] = _random_bloch(rng)
                degenerate = True
                continue
            sites[k] = c / nc
            overlap = float(nc)
        if overlap - prev < tol:
            return overlap, sites, not degenerate
    return overlap, sites, False


def gm_als(
    psi: StateVector,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: Seed = None,
) -> EntanglementValue:
    """Geometric measure 1 - max |<product|psi>|^2 by alternating updates.

    Each restart begins from an independent area-uniform random product
    state; the reported value is the best over restarts and is an upper
    bound on the true measure (the optimizer can only under-achieve the
    maximal overlap). With a fixed seed, the first k restarts of a larger
    run coincide with a run of k restarts.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    n = psi.n_qubits
    t = psi.amplitudes.reshape([2] * n)
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    best_overlap = -1.0
    best_sites: list[np.ndarray] | None = None
    best_converged = False
    for child in ss.spawn(restarts):
        rng = np.random.default_rng(child)
        sites = [_random_bloch(rng) for _ in range(n)]
        overlap, sites, converged = _als_overlap(t, sites, max_iters, tol, rng)
        if overlap > best_overlap:
            best_overlap, best_sites, best_converged = overlap, sites, converged
    assert best_sites is not None
    witness_amps = best_sites[0]
    for s in best_sites[1:]:
        witness_amps = np.kron(witness_amps, s)
    witness = StateVector(n, witness_amps / np.linalg.norm(witness_amps))
    e = 1.0 - min(best_overlap, 1.0) ** 2
    return _value("gm", e, witness, best_converged, restarts)


def gm_brute(psi: StateVector, grid_per_angle: int = DEFAULT_GRID) -> EntanglementValue:
    """Brute-force oracle for the geometric measure, n <= 3 only.

    Scans a (theta, phi) Bloch grid on every qubit but the first; the first
    qubit's optimum is available in closed form given the others (the
    normalized contraction), which dominates a plain grid on all qubits at
    the same resolution. The best grid configuration is then refined to
    stationarity with the alternating update.
    """
    n = psi.n_qubits
    if n > 3:
        raise ValueError("brute-force oracle refuses registers larger than 3 qubits")
    if grid_per_angle < 2:
        raise ValueError("grid_per_angle must be >= 2")
    t = psi.amplitudes.reshape([2] * n)
    if n == 1:
        return _value("gm", 0.0, psi, True, 1)

    half_theta = np.linspace(0.0, np.pi / 2.0, grid_per_angle)
    phase = np.linspace(0.0, 2.0 * np.pi, grid_per_angle, endpoint=False)
    tt, pp = np.meshgrid(half_theta, phase, indexing="ij")
    grid = np.stack(
        [np.cos(tt).ravel(), np.exp(-1j * pp.ravel()) * np.sin(tt).ravel()], axis=1
    )  # (M, 2) single-qubit states
    gc = grid.conj()

    if n == 2:
        c = gc @ t.T  # (M, 2): contraction over qubit 1, free qubit 0
        norms = np.linalg.norm(c, axis=1)
        iy = int(np.argmax(norms))
        sites = [c[iy] / norms[iy], grid[iy]]
    else:
        m = grid.shape[0]
        t1 = np.tensordot(t, gc, axes=([1], [1]))  # (2, 2, M): axes a, c, y
        best_val = -1.0
        best_iy = best_iz = 0
        chunk = max(1, int(4e6 // (m * 2)))
        for z0 in range(0, m, chunk):
            gz = gc[z0 : z0 + chunk]  # (Z, 2)
            c = np.einsum("acy,zc->yza", t1, gz)  # (M, Z, 2)
            norms = np.linalg.norm(c, axis=2)
            idx = np.unravel_index(int(np.argmax(norms)), norms.shape)
            if norms[idx] > best_val:
                best_val = float(norms[idx])
                best_iy, best_iz = int(idx[0]), z0 + int(idx[1])
        c0 = _contract_others(t, [np.zeros(2), grid[best_iy], grid[best_iz]], 0)
        nc0 = np.linalg.norm(c0)
        first = c0 / nc0 if nc0 > 0.0 else np.array([1.0, 0.0], dtype=complex)
        sites = [first, grid[best_iy], grid[best_iz]]

    rng = np.random.default_rng(0)
    overlap, sites, converged = _als_overlap(t, sites, DEFAULT_MAX_ITERS, DEFAULT_TOL, rng)
    witness_amps = sites[0]
    for s in sites[1:]:
        witness_amps = np.kron(witness_amps, s)
    witness = StateVector(n, witness_amps / np.linalg.norm(witness_amps))
    e = 1.0 - min(overlap, 1.0) ** 2
    return _value("gm", e, witness, converged, 1)


# ---------------------------------------------------------------------------
# Mixed-state surrogates (pure-product minimization)
# ---------------------------------------------------------------------------

def _site_matrix(rho: np.ndarray, sites: list[np.ndarray], k: int) -> np.ndarray:
    """2x2 effective matrix A^dag rho A for site k given the other sites."""
    a = np.array([[1.0 + 0.0j]])
    for i, s in enumerate(sites):
        a = np.kron(a, np.eye(2, dtype=complex) if i == k else s.reshape(2, 1))
    return a.conj().T @ rho @ a


def mixed_measure_surrogate(
    rho: DensityOperator,
    metric: str,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: Seed = None,
) -> EntanglementValue:
    """Distance-based mixed-state measure minimized over *pure* product states.

    fs:    1 - Tr[rho sigma] / Tr[rho^2]
    bures: 1 - sqrt(<phi|rho|phi>)          (pure sigma = |phi><phi|)

    Both reduce to maximizing <phi|rho|phi> over product |phi>, done with an
    alternating largest-eigenvector update per site. The pure-product
    restriction makes the result an upper bound on the measure over the
    full separable set; reports carry surrogate=True. The raw FS objective
    can be negative (Tr rho^2 < max <phi|rho|phi> near product mixed
    states); ``e`` is clamped to [0, 1] and the raw value kept in
    ``objective``.
    """
    if metric not in ("fs", "bures"):
        raise ValueError(f"metric must be 'fs' or 'bures', got {metric!r}")
    if restarts < 1:
        raise ValueError("need at least one restart")
    n = rho.n_qubits
    m = rho.matrix
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    best_val = -1.0
    best_sites: list[np.ndarray] | None = None
    best_converged = False
    for child in ss.spawn(restarts):
        rng = np.random.default_rng(child)
        sites = [_random_bloch(rng) for _ in range(n)]
        val = 0.0
        converged = False
        for _ in range(max_iters):
            prev = val
            for k in range(n):
                eff = _site_matrix(m, sites, k)
                vals, vecs = np.linalg.eigh(0.5 * (eff + eff.conj().T))
                sites[k] = vecs[:, -1]
                val = float(vals[-1])
            if val - prev < tol:
                converged = True
                break
        if val > best_val:
            best_val, best_sites, best_converged = val, sites, converged
    assert best_sites is not None
    witness_amps = best_sites[0]
    for s in best_sites[1:]:
        witness_amps = np.kron(witness_amps, s)
    witness = StateVector(n, witness_amps / np.linalg.norm(witness_amps))
    if metric == "fs":
        purity = float(np.real(np.sum(np.abs(m) ** 2)))
        raw = 1.0 - best_val / purity
        kind = "fs_mixed"
    else:
        raw = 1.0 - float(np.sqrt(max(best_val, 0.0)))
        kind = "bures_mixed"
    e = _snap_e(min(max(raw, 0.0), 1.0))
    return _value(
        kind, e, witness, best_converged, restarts, surrogate=True, objective=raw
    )
