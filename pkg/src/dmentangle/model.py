"""Two-qubit Heisenberg Hamiltonian with Dzyaloshinskii-Moriya coupling.

Basis ordering is ``|00>, |01>, |10>, |11>`` with qubit ``a`` as the left
(slow) tensor factor. Pauli matrices use ``sigma_z |0> = +|0>`` and
``sigma_y = [[0, -i], [i, 0]]``; hbar = 1.
"""

import math
from dataclasses import astuple, dataclass, fields
from types import SimpleNamespace

import numpy as np

from .errors import NonFinite


def _const(rows):
    a = np.array(rows, dtype=np.complex128)
    a.flags.writeable = False
    return a


PAULI = SimpleNamespace(
    identity2=_const([[1, 0], [0, 1]]),
    sigma_x=_const([[0, 1], [1, 0]]),
    sigma_y=_const([[0, -1j], [1j, 0]]),
    sigma_z=_const([[1, 0], [0, -1]]),
)

I2, SX, SY, SZ = PAULI.identity2, PAULI.sigma_x, PAULI.sigma_y, PAULI.sigma_z

# permutation exchanging qubits a and b
SWAP = _const([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


@dataclass(frozen=True)
class SpinParameters:
    """Exchange couplings ``J``, DM vector ``D`` and the z fields on each qubit."""

    jx: float = 0.0
    jy: float = 0.0
    jz: float = 0.0
    dx: float = 0.0
    dy: float = 0.0
    dz: float = 0.0
    bza: float = 0.0
    bzb: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = float(getattr(self, f.name))
            if not math.isfinite(value):
                raise NonFinite(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, value)

    def isotropic(self) -> bool:
        return self.jx == self.jy == self.jz

    def swapped(self) -> "SpinParameters":
        """Parameters describing the same system with the qubits relabelled."""
        return SpinParameters(
            self.jx, self.jy, self.jz, -self.dx, -self.dy, -self.dz, self.bzb, self.bza
        )

    def replace(self, **changes) -> "SpinParameters":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return SpinParameters(**values)

    def as_tuple(self):
        return astuple(self)


def kron(a, b) -> np.ndarray:
    """Kronecker product; ``a`` acts on the slow index."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    n, m = a.shape[0], b.shape[0]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(n * m, n * m)


def _term(a, b):
    m = kron(a, b)
    m.flags.writeable = False
    return m


# (coefficient name, prefactor, operator) in the order the terms are summed
_TERMS = (
    ("bza", 0.5, _term(SZ, I2)),
    ("bzb", 0.5, _term(I2, SZ)),
    ("dx", -0.25, _term(SZ, SY)),
    ("dx", 0.25, _term(SY, SZ)),
    ("dy", 0.25, _term(SZ, SX)),
    ("dy", -0.25, _term(SX, SZ)),
    ("dz", -0.25, _term(SY, SX)),
    ("dz", 0.25, _term(SX, SY)),
    ("jx", 0.25, _term(SX, SX)),
    ("jy", 0.25, _term(SY, SY)),
    ("jz", 0.25, _term(SZ, SZ)),
)


def build_hamiltonian_sum(p: SpinParameters) -> np.ndarray:
    """Assemble H as a sum of Pauli tensor products, term by term."""
    h = np.zeros((4, 4), dtype=np.complex128)
    for name, pref, op in _TERMS:
        h += (pref * getattr(p, name)) * op
    # every diagonal contribution is real; drop signed-zero imaginary noise
    h[np.diag_indices(4)] = h.diagonal().real
    return h


def build_hamiltonian_closed(p: SpinParameters) -> np.ndarray:
    """Write the 4x4 Hamiltonian down entry by entry from its explicit matrix form."""
    i = 1j
    jx, jy, jz = p.jx, p.jy, p.jz
    dx, dy, dz = p.dx, p.dy, p.dz
    ba, bb = p.bza, p.bzb
    return 0.25 * np.array(
        [
            [jz + 2 * (ba + bb), i * dx + dy, -i * (dx - i * dy), jx - jy],
            [dy - i * dx, -jz + 2 * ba - 2 * bb, 2 * i * dz + jx + jy, i * dx + dy],
            [i * (dx + i * dy), -2 * i * dz + jx + jy, -jz - 2 * ba + 2 * bb, -i * (dx - i * dy)],
            [jx - jy, dy - i * dx, i * (dx + i * dy), jz - 2 * (ba + bb)],
        ],
        dtype=np.complex128,
    )


build_hamiltonian = build_hamiltonian_sum


# Couplings behind each published figure. fig5 is swept over FIGURE_DZ_VALUES.
FIGURE_PARAMETERS = {
    "fig1": SpinParameters(jx=1, jy=1, jz=1, dz=1, bza=1, bzb=1),
    "fig2": SpinParameters(jx=1, jy=1, jz=1, dz=1, bza=1, bzb=5),
    "fig3": SpinParameters(jx=1, jy=1, jz=1, dz=1, bza=5, bzb=1),
    "fig4": SpinParameters(jx=1, jy=2, jz=3, dz=1, bza=1, bzb=1),
    "fig5": SpinParameters(jx=1, jy=1, jz=1, dz=0.1, bza=1, bzb=1),
}
FIGURE_DZ_VALUES = (0.1, 5.0, 10.0)
