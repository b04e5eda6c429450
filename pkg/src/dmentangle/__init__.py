"""Entanglement dynamics of two qubits with Heisenberg exchange, DM coupling
and local z fields, measured by negativity."""

__version__ = "0.1.0"

from .dynamics import Propagator, evolve, evolve_density, make_propagator
from .entanglement import (
    NegativitySeries,
    Subsystem,
    negativity,
    negativity_series,
    partial_transpose,
    pure_state_negativity_oracle,
    time_average,
)
from .linalg import EigenDecomposition, hermitian_eigendecompose, trace_norm, unitary_exp
from .model import SpinParameters, build_hamiltonian_closed, build_hamiltonian_sum, kron
from .states import (
    InitialStateSpec,
    QuantumState,
    density_matrix,
    initial_state,
    spin_coherent_qubit,
    substituted_state,
)

__all__ = [
    "EigenDecomposition",
    "InitialStateSpec",
    "NegativitySeries",
    "Propagator",
    "QuantumState",
    "SpinParameters",
    "Subsystem",
    "build_hamiltonian_closed",
    "build_hamiltonian_sum",
    "density_matrix",
    "evolve",
    "evolve_density",
    "hermitian_eigendecompose",
    "initial_state",
    "kron",
    "make_propagator",
    "negativity",
    "negativity_series",
    "partial_transpose",
    "pure_state_negativity_oracle",
    "spin_coherent_qubit",
    "substituted_state",
    "time_average",
    "trace_norm",
    "unitary_exp",
]
