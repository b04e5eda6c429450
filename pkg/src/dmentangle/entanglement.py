"""Partial transpose, negativity and negativity time series."""

import enum
from dataclasses import dataclass

import numpy as np

from .dynamics import DENSITY_TOL, check_density_matrix, make_propagator
from .errors import NotDensityMatrix, WrongDimension
from .linalg import as_matrix, hermiticity_error, trace_norm
from .model import SpinParameters, build_hamiltonian
from .states import InitialStateSpec, initial_state

# Negativities at or below this are round-off from a PPT state and reported as 0.
ROUNDOFF_FLOOR = 1e-14
RANGE_SLACK = 1e-12


class Subsystem(enum.Enum):
    QubitA = "a"
    QubitB = "b"

    @classmethod
    def parse(cls, value) -> "Subsystem":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown subsystem {value!r}; use 'a' or 'b'")


def partial_transpose(rho, sub: Subsystem = Subsystem.QubitA) -> np.ndarray:
    """Transpose the indices of one qubit of a 4x4 operator (or stack of them).

    For qubit b every 2x2 block is transposed; for qubit a the grid of blocks
    is transposed.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[-2:] != (4, 4):
        raise WrongDimension(f"partial transpose needs 4x4 matrices, got {rho.shape}")
    lead = rho.shape[:-2]
    # indices (..., a, b, a', b')
    t = rho.reshape(*lead, 2, 2, 2, 2)
    if Subsystem.parse(sub) is Subsystem.QubitA:
        t = np.swapaxes(t, -4, -2)
    else:
        t = np.swapaxes(t, -3, -1)
    return t.reshape(*lead, 4, 4).copy()


def _negativity_from_pt(pt) -> np.ndarray:
    n = (trace_norm(pt) - 1.0) / 2.0
    n = np.asarray(n, dtype=float)
    return np.where(n <= ROUNDOFF_FLOOR, 0.0, n)


def negativity(rho, sub: Subsystem = Subsystem.QubitA) -> float:
    """``max(0, (||rho^T_sub||_1 - 1) / 2)`` for a two-qubit density matrix."""
    rho = check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise NotDensityMatrix(f"negativity needs a 4x4 density matrix, got {rho.shape}")
    return float(_negativity_from_pt(partial_transpose(rho, sub)))


def negativity_many(rhos, sub: Subsystem = Subsystem.QubitA) -> np.ndarray:
    """Vectorised `negativity` over a stack of density matrices ``(k, 4, 4)``.

    The stack is validated in bulk: Hermitian and unit trace within 1e-10.
    """
    rhos = as_matrix(rhos, batched=True)
    if rhos.shape[-2:] != (4, 4):
        raise NotDensityMatrix(f"negativity needs 4x4 density matrices, got {rhos.shape}")
    if np.any(hermiticity_error(rhos) > DENSITY_TOL):
        raise NotDensityMatrix("density matrix is not Hermitian")
    tr = np.trace(rhos, axis1=-2, axis2=-1)
    if np.any(np.abs(tr - 1.0) > DENSITY_TOL):
        raise NotDensityMatrix("density matrix trace differs from 1")
    return _negativity_from_pt(partial_transpose(rhos, sub))


def pure_state_negativity_oracle(psi) -> float:
    """``|c00 c11 - c01 c10|``: negativity of a pure two-qubit state, half its concurrence."""
    c = np.asarray(psi, dtype=np.complex128).reshape(-1)
    return float(abs(c[0] * c[3] - c[1] * c[2]))


@dataclass(frozen=True)
class NegativitySeries:
    times: np.ndarray
    values: np.ndarray
    params: SpinParameters
    state_spec: InitialStateSpec
    subsystem: Subsystem = Subsystem.QubitA

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=float)
        if times.ndim != 1 or times.shape != values.shape or times.size < 2:
            raise ValueError("times and values must be 1-d arrays of equal length >= 2")
        steps = np.diff(times)
        if np.any(steps <= 0):
            raise ValueError("times must be strictly increasing")
        if np.abs(steps - steps[0]).max() > 1e-12 * max(1.0, abs(times[-1])):
            raise ValueError("times must be uniformly spaced")
        if values.min() < 0.0 or values.max() > 0.5 + RANGE_SLACK:
            raise ValueError("negativity values outside [0, 0.5]")
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.times.size


def time_grid(t_max: float, n_steps: int, t_min: float = 0.0) -> np.ndarray:
    if not t_max > t_min:
        raise ValueError(f"t_max must exceed {t_min}, got {t_max}")
    if int(n_steps) != n_steps or n_steps < 2:
        raise ValueError(f"n_steps must be an integer >= 2, got {n_steps}")
    n_steps = int(n_steps)
    k = np.arange(n_steps)
    return t_min + k * ((t_max - t_min) / (n_steps - 1))


def negativity_series(
    params: SpinParameters,
    spec: InitialStateSpec,
    t_max: float,
    n_steps: int,
    sub: Subsystem = Subsystem.QubitA,
    *,
    t_min: float = 0.0,
) -> NegativitySeries:
    """Negativity of ``rho(t_k)`` on ``t_k = t_min + k (t_max - t_min) / (n_steps - 1)``."""
    times = time_grid(t_max, n_steps, t_min)
    prop = make_propagator(build_hamiltonian(params))
    psi0 = initial_state(spec)
    amps = prop.evolve_many(psi0.amplitudes, times)
    rhos = amps[:, :, None] * amps[:, None, :].conj()
    values = negativity_many(rhos, Subsystem.parse(sub))
    return NegativitySeries(times, values, params, spec, Subsystem.parse(sub))


def time_average(series: NegativitySeries) -> float:
    """Trapezoidal mean of the series over its full time span."""
    t, v = series.times, series.values
    return float(np.trapezoid(v, t) / (t[-1] - t[0]))
