"""qslgeom: geometric quantum-evolution distances, energy-fluctuation
speeds, and geometric multipartite entanglement for N-qubit registers,
with checks of the entanglement-bounded time-energy uncertainty relation.
"""

from .bounds import BoundReport, check_bures, check_mixed_fs, check_pure
from .entangle import EntanglementValue, g_of_e, ggm, gm_als, gm_brute, mixed_measure_surrogate
from .evolve import (
    EnergyStats,
    Trajectory,
    energy_stats_mixed,
    energy_stats_pure,
    evolve_trajectory,
    mixed_fs_speed,
    path_length,
    propagate_density,
    propagate_pure,
)
from .hamiltonian import (
    HamiltonianSpec,
    PauliTerm,
    SpectralDecomposition,
    assemble_dense,
    cluster_ising,
    heisenberg_xyz,
    spectral,
)
from .metrics import (
    DistanceValue,
    bargmann_angle,
    bures_angle,
    fs_distance,
    fs_mixed_geodesic,
    hs_distance,
    min_normed_distance,
    uhlmann_fidelity,
)
from .qstate import (
    Bipartition,
    DensityOperator,
    StateVector,
    all_bipartitions,
    basis_state,
    density_from_pure,
    depolarize,
    ghz_state,
    partial_trace,
    product_state,
    random_density,
    random_state,
    schmidt_squared,
    tensor,
    w_state,
)
from .sweeps import SweepConfig, SweepResult, run_sweep, summarize

__version__ = "0.1.0"
