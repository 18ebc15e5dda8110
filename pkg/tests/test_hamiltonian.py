import threading

import numpy as np
import pytest

from qslgeom.hamiltonian import (
    HamiltonianSpec,
    PauliTerm,
    assemble_dense,
    cluster_ising,
    heisenberg_xyz,
    spectral,
)

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def kron_chain(*ops: np.ndarray) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def cluster_oracle(n: int, J: float) -> np.ndarray:
    """Symbolic expansion (J/4)(I - Z_i)(I - Z_{i+1}) built term by term."""
    h = np.zeros((2**n, 2**n), dtype=complex)
    for i in range(n - 1):
        ops = [I2] * n
        ops[i] = I2 - SZ
        ops[i + 1] = I2 - SZ
        h += (J / 4.0) * kron_chain(*ops)
    return h


class TestClusterIsing:
    def test_two_qubit_diagonal(self):
        for J in (1.0, 2.5):
            h = assemble_dense(cluster_ising(2, J))
            np.testing.assert_allclose(h, np.diag([0.0, 0.0, 0.0, J]), atol=0)
            np.testing.assert_allclose(h, cluster_oracle(2, J), atol=0)

    def test_all_zeros_ket_is_ground(self):
        h = assemble_dense(cluster_ising(4))
        ket = np.zeros(16)
        ket[0] = 1.0
        assert np.max(np.abs(h @ ket)) == 0.0

    def test_three_qubit_all_ones_eigenvalue(self):
        J = 1.7
        h = assemble_dense(cluster_ising(3, J))
        ket = np.zeros(8)
        ket[7] = 1.0
        np.testing.assert_allclose(h @ ket, 2.0 * J * ket, atol=1e-12)
        np.testing.assert_allclose(h, cluster_oracle(3, J), atol=1e-15)

    def test_strictly_diagonal(self):
        h = assemble_dense(cluster_ising(4, 0.9))
        off = h - np.diag(np.diag(h))
        assert np.max(np.abs(off)) == 0.0

    def test_small_chain_rejected(self):
        with pytest.raises(ValueError):
            cluster_ising(1)


class TestHeisenbergXYZ:
    def test_gamma_one_has_no_yy_terms(self):
        spec = heisenberg_xyz(4, gamma=1.0, mu=0.0)
        kinds = {tuple(p for _, p in t.factors) for t in spec.terms}
        assert ("Y", "Y") not in kinds
        assert ("X", "X") in kinds

    def test_isotropic_matrix_is_exactly_symmetric(self):
        h = assemble_dense(heisenberg_xyz(3, gamma=0.0, mu=1.0, h=0.0))
        np.testing.assert_array_equal(h, h.conj().T)

    def test_two_qubit_periodic_doubles_the_bond(self):
        J, hf = 1.3, 1.0
        got = assemble_dense(heisenberg_xyz(2, J, gamma=0.0, mu=0.0, h=hf))
        want = (
            2.0 * J * (kron_chain(SX, SX) + kron_chain(SY, SY))
            + J * hf * (kron_chain(SZ, I2) + kron_chain(I2, SZ))
        )
        np.testing.assert_allclose(got, want, atol=1e-15)

    def test_open_chain_keeps_field_terms(self):
        spec = heisenberg_xyz(3, h=0.5, periodic=False)
        z_fields = [t for t in spec.terms if len(t.factors) == 1]
        assert len(z_fields) == 3
        xx = [t for t in spec.terms if tuple(p for _, p in t.factors) == ("X", "X")]
        assert len(xx) == 2

    def test_spin_flip_symmetry_without_field(self):
        flip = kron_chain(SX, SX, SX)
        rng = np.random.default_rng(9)
        for _ in range(5):
            h = assemble_dense(
                heisenberg_xyz(3, gamma=rng.uniform(0, 1), mu=rng.uniform(-1, 1), h=0.0)
            )
            assert np.max(np.abs(h @ flip - flip @ h)) <= 1e-12

    def test_gamma_validation(self):
        with pytest.raises(ValueError):
            heisenberg_xyz(3, gamma=1.2)
        with pytest.raises(ValueError):
            heisenberg_xyz(1)


class TestAssembleDense:
    def test_empty_terms_is_zero(self):
        h = assemble_dense(HamiltonianSpec(2, []))
        np.testing.assert_array_equal(h, np.zeros((4, 4)))

    def test_single_z_on_most_significant_qubit(self):
        spec = HamiltonianSpec(2, [PauliTerm.of(1.0, {0: "Z"})])
        np.testing.assert_array_equal(assemble_dense(spec), np.diag([1.0, 1.0, -1.0, -1.0]))

    def test_hermitian_for_random_specs(self):
        rng = np.random.default_rng(10)
        letters = "XYZ"
        for _ in range(10):
            terms = [
                PauliTerm.of(
                    rng.normal(),
                    {int(q): letters[rng.integers(3)] for q in rng.choice(3, size=2, replace=False)},
                )
                for _ in range(4)
            ]
            h = assemble_dense(HamiltonianSpec(3, terms))
            assert np.max(np.abs(h - h.conj().T)) <= 1e-12


class TestSpectral:
    def test_diagonal_hamiltonian(self):
        sd = spectral(cluster_ising(3, 2.0))
        np.testing.assert_allclose(sd.eigenvalues, np.sort(np.diag(cluster_oracle(3, 2.0)).real))

    def test_cluster_eigenvalues_are_bond_counts(self):
        J = 1.0
        sd = spectral(cluster_ising(3, J))
        assert set(np.round(sd.eigenvalues, 12)) <= {0.0, J, 2.0 * J}

    def test_reconstruction_and_orthonormality(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            spec = heisenberg_xyz(
                3, gamma=rng.uniform(0, 1), mu=rng.uniform(-1, 1), h=rng.uniform(-1, 1)
            )
            sd = spectral(spec)
            h = assemble_dense(spec)
            recon = (sd.eigenvectors * sd.eigenvalues) @ sd.eigenvectors.conj().T
            assert np.max(np.abs(recon - h)) <= 1e-10
            gram = sd.eigenvectors.conj().T @ sd.eigenvectors
            assert np.max(np.abs(gram - np.eye(spec.dim))) <= 1e-10

    def test_cache_returns_same_object(self):
        spec = cluster_ising(3)
        assert spectral(spec) is spectral(spec)
        assert assemble_dense(spec) is assemble_dense(spec)

    def test_concurrent_cache_fill_is_consistent(self):
        spec = heisenberg_xyz(3, gamma=0.3, mu=0.4, h=0.2)
        results = []

        def grab():
            results.append(spectral(spec))

        threads = [threading.Thread(target=grab) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r is results[0] for r in results)


class TestPauliTerm:
    def test_rejects_bad_letter(self):
        with pytest.raises(ValueError):
            PauliTerm.of(1.0, {0: "W"})

    def test_rejects_nonfinite_coefficient(self):
        with pytest.raises(ValueError):
            PauliTerm.of(float("nan"), {0: "X"})

    def test_rejects_out_of_register_index(self):
        with pytest.raises(ValueError):
            HamiltonianSpec(2, [PauliTerm.of(1.0, {5: "X"})])
