#!/usr/bin/env python3
"""Mixed-state uncertainty relations: Fubini-Study and Bures flavors.

Depolarized product states evolve unitarily; the purity-normalized FS
speed and the standard fluctuation each bound their geodesic. The
entanglement side uses a pure-product surrogate, reported but not
theorem-grade.
"""

import numpy as np

from qslgeom import (
    bures_angle,
    check_bures,
    check_mixed_fs,
    cluster_ising,
    density_from_pure,
    depolarize,
    energy_stats_mixed,
    mixed_fs_speed,
    mixed_measure_surrogate,
    product_state,
    propagate_density,
    random_density,
    uhlmann_fidelity,
)

spec = cluster_ising(3)
psi0 = product_state(np.pi / 4.0, 0.0, 3)

print("Depolarization slows the Fubini-Study motion but not uniformly:")
print(f"{'p':>5} {'FS speed':>9} {'dH':>7} {'dH_Q':>7} {'purity':>7}")
for p in (0.0, 0.2, 0.5, 0.8):
    rho = depolarize(density_from_pure(psi0), p)
    stats = energy_stats_mixed(spec, rho)
    print(f"{p:5.2f} {mixed_fs_speed(spec, rho):9.4f} {stats.fluctuation:7.4f} "
          f"{stats.quantum_fluctuation:7.4f} {rho.purity():7.4f}")

print("\nBoth mixed bounds hold along the evolution (p = 0.3):")
rho0 = depolarize(density_from_pure(psi0), 0.3)
print(f"{'tau':>5} {'FS lhs':>8} {'FS geo':>8} {'margin':>8} "
      f"{'B lhs':>8} {'B geo':>8} {'margin':>8}")
for tau in (0.25, 0.75, 1.5, 2.5):
    fs = check_mixed_fs(spec, rho0, tau, seed=1)
    bu = check_bures(spec, rho0, tau, seed=1)
    print(f"{tau:5.2f} {fs.lhs:8.4f} {fs.rhs_geodesic:8.4f} {fs.geodesic_margin:8.4f} "
          f"{bu.lhs:8.4f} {bu.rhs_geodesic:8.4f} {bu.geodesic_margin:8.4f}")

print("\nSurrogate entanglement of the evolved state (upper-bound estimates):")
rho_tau = propagate_density(spec, rho0, 1.5)
for metric in ("fs", "bures"):
    val = mixed_measure_surrogate(rho_tau, metric, seed=2)
    print(f"  {metric:5s}: e = {val.e:.4f} (raw objective {val.objective:+.4f}, "
          f"surrogate={val.surrogate})")

print("\nBures angle contracts under depolarization (CP maps):")
rng = np.random.default_rng(5)
a, b = random_density(2, rng), random_density(2, rng)
print(f"  F(a, b) = {uhlmann_fidelity(a, b):.4f}")
for p in (0.0, 0.3, 0.6, 0.9):
    angle = bures_angle(depolarize(a, p), depolarize(b, p)).value
    print(f"  p = {p:.1f}: angle = {angle:.4f}")
