"""Unitary time evolution under a time-independent Hamiltonian."""

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NotDensityMatrix
from .linalg import (
    HERMITICITY_TOL,
    EigenDecomposition,
    as_matrix,
    eigvalsh,
    hermitian_eigendecompose,
    hermiticity_error,
)
from .states import QuantumState

DENSITY_TOL = 1e-10


@dataclass(frozen=True)
class Propagator:
    """``U(t) = exp(-i H t)`` with the eigendecomposition of ``H`` cached.

    Each evaluation costs one diagonal exponential and two small products.
    """

    hamiltonian: np.ndarray
    eigendecomposition: EigenDecomposition

    def at(self, t: float) -> np.ndarray:
        if not np.isfinite(t):
            raise NonFinite(f"time must be finite, got {t!r}")
        return self.eigendecomposition.apply(lambda lam: np.exp(-1j * lam * t))

    def __call__(self, t: float) -> np.ndarray:
        return self.at(t)

    def evolve_many(self, psi0, times) -> np.ndarray:
        """Amplitudes of ``U(t_k) psi0`` for every ``t_k``; shape ``(len(times), dim)``."""
        times = np.asarray(times, dtype=float)
        if not np.isfinite(times).all():
            raise NonFinite("times must be finite")
        v = self.eigendecomposition.eigenvectors
        lam = self.eigendecomposition.eigenvalues
        coeffs = v.conj().T @ np.asarray(psi0, dtype=np.complex128).reshape(-1)
        phases = np.exp(-1j * np.outer(times, lam))
        return (phases * coeffs) @ v.T


def make_propagator(h) -> Propagator:
    h = as_matrix(h)
    h.flags.writeable = False
    return Propagator(h, hermitian_eigendecompose(h, HERMITICITY_TOL))


def evolve(prop: Propagator, psi0, t: float) -> QuantumState:
    """``|psi(t)> = U(t) |psi(0)>``."""
    amps = prop.evolve_many(psi0, [t])[0]
    return QuantumState(amps)


def check_density_matrix(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Validate ``rho`` as Hermitian, unit trace and positive semidefinite."""
    try:
        rho = as_matrix(rho)
    except ValueError as exc:
        raise NotDensityMatrix(str(exc)) from exc
    if hermiticity_error(rho) > tol:
        raise NotDensityMatrix("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise NotDensityMatrix(f"density matrix trace is {tr!r}, expected 1")
    if eigvalsh(rho)[0] < -tol:
        raise NotDensityMatrix("density matrix has a negative eigenvalue")
    return rho


def evolve_density(prop: Propagator, rho0, t: float) -> np.ndarray:
    """``U(t) rho0 U(t)^dagger``."""
    rho0 = check_density_matrix(rho0)
    u = prop.at(t)
    return u @ rho0 @ u.conj().T
