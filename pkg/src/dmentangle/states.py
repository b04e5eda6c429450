"""Spin-1/2 coherent states and the superposed two-qubit initial state."""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NotNormalized, ZeroStateError

TWO_PI = 2.0 * math.pi
NORM_TOL = 1e-12
SUPPLIED_NORM_TOL = 1e-9
# squared norm below which the superposition is treated as cancelled
_ZERO_NORM2 = 1e-24


def _finite_complex(name, value) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFinite(f"{name} must be finite, got {value!r}")
    return z


@dataclass(frozen=True)
class InitialStateSpec:
    """Amplitudes and mixing angles of the superposition

    ``cos(theta) |alpha1>|beta1> + exp(-i phi) sin(theta) |alpha2>|beta2>``.

    ``norm_const`` is the squared-norm constant N dividing the state by
    ``sqrt(N)``; leave it ``None`` to have it computed.
    """

    alpha1: complex
    alpha2: complex
    beta1: complex
    beta2: complex
    theta: float = math.pi / 4
    phi: float = 0.0
    norm_const: float | None = None

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            object.__setattr__(self, name, _finite_complex(name, getattr(self, name)))
        for name in ("theta", "phi"):
            angle = float(getattr(self, name))
            if not (0.0 <= angle < TWO_PI):
                raise ValueError(f"{name} must lie in [0, 2pi), got {angle!r}")
            object.__setattr__(self, name, angle)
        if self.norm_const is not None:
            n = float(self.norm_const)
            if not (math.isfinite(n) and n > 0.0):
                raise ValueError(f"norm_const must be a positive finite number, got {n!r}")
            object.__setattr__(self, "norm_const", n)

    @classmethod
    def substituted(cls, alpha, theta=math.pi / 4, phi=0.0, norm_const=None):
        """The family ``alpha1 = alpha2 = alpha``, ``beta1 = beta2 = -alpha``."""
        alpha = complex(alpha)
        return cls(alpha, alpha, -alpha, -alpha, theta, phi, norm_const)


@dataclass(frozen=True)
class QuantumState:
    """Normalised two-qubit pure state with amplitudes ``(c00, c01, c10, c11)``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"two-qubit state needs 4 amplitudes, got {amps.shape}")
        if not np.isfinite(amps).all():
            raise NonFinite("state has NaN or infinite amplitudes")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"state norm is {norm!r}, expected 1")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    @property
    def c00(self):
        return self.amplitudes[0]

    @property
    def c01(self):
        return self.amplitudes[1]

    @property
    def c10(self):
        return self.amplitudes[2]

    @property
    def c11(self):
        return self.amplitudes[3]


def spin_coherent_qubit(alpha) -> np.ndarray:
    """``(|0> + alpha |1>) / sqrt(1 + |alpha|^2)`` as a length-2 vector."""
    alpha = _finite_complex("alpha", alpha)
    return np.array([1.0, alpha], dtype=np.complex128) / math.sqrt(abs(alpha) ** 2 + 1.0)


def _unnormalised(spec: InitialStateSpec) -> np.ndarray:
    first = np.kron(spin_coherent_qubit(spec.alpha1), spin_coherent_qubit(spec.beta1))
    second = np.kron(spin_coherent_qubit(spec.alpha2), spin_coherent_qubit(spec.beta2))
    weight = cmath.exp(-1j * spec.phi) * math.sin(spec.theta)
    return math.cos(spec.theta) * first + weight * second


def normalization_constant(spec: InitialStateSpec) -> float:
    """N such that dividing the superposition by ``sqrt(N)`` gives unit norm."""
    raw = _unnormalised(spec)
    n = float(np.vdot(raw, raw).real)
    if n < _ZERO_NORM2:
        raise ZeroStateError("the two superposed product states cancel")
    return n


def initial_state(spec: InitialStateSpec) -> QuantumState:
    """Build the superposed coherent state described by `spec`.

    When ``spec.norm_const`` is given the amplitudes are divided by its square
    root verbatim and the result must have unit norm within 1e-9.
    """
    raw = _unnormalised(spec)
    n = float(np.vdot(raw, raw).real)
    if n < _ZERO_NORM2:
        raise ZeroStateError("the two superposed product states cancel")
    if spec.norm_const is None:
        return QuantumState(raw / math.sqrt(n))
    amps = raw / math.sqrt(spec.norm_const)
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > SUPPLIED_NORM_TOL:
        raise NotNormalized(
            f"norm_const={spec.norm_const!r} gives norm {norm!r}; the consistent value is {n!r}"
        )
    # renormalise away the residual so downstream unit-norm checks hold at 1e-12
    return QuantumState(amps / norm)


def substituted_state(alpha, theta: float = math.pi / 4, phi: float = 0.0) -> QuantumState:
    return initial_state(InitialStateSpec.substituted(alpha, theta, phi))


def density_matrix(psi) -> np.ndarray:
    """Projector ``|psi><psi|``."""
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    return np.outer(v, v.conj())
