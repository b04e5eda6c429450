"""Small dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every routine
accepts a single ``(n, n)`` matrix; the batched helpers (`eigvalsh`,
`trace_norm`) also take stacks of shape ``(..., n, n)`` so that a whole time
series can be diagonalised in one call.

The Hermitian eigensolver is a cyclic complex Jacobi iteration. Pivots are
visited in the fixed row-major order ``(0,1), (0,2), ..., (n-2,n-1)`` and
sweeps repeat until the off-diagonal Frobenius mass falls below
``JACOBI_REL_OFF`` times the total, so results are reproducible bit for bit.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NotHermitian, NotSquare

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-12
JACOBI_REL_OFF = 1e-28
MAX_SWEEPS = 64
MAX_DIM = 16

# below this magnitude a component is treated as zero by the sign convention
_SIGN_EPS = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectrum of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; column ``k`` of ``eigenvectors``
    belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.eigenvalues.flags.writeable = False
        self.eigenvectors.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[-1]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def apply(self, func) -> np.ndarray:
        """Return ``f(H) = V diag(f(lambda)) V^dagger``."""
        v = self.eigenvectors
        return (v * func(self.eigenvalues)) @ v.conj().T


def as_matrix(m, *, batched=False) -> np.ndarray:
    """Coerce ``m`` to a finite complex square matrix (or stack of them)."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim < 2 or (not batched and a.ndim != 2) or a.shape[-1] != a.shape[-2]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[-1]
    if n < 1 or n > MAX_DIM:
        raise NotSquare(f"matrix dimension {n} outside supported range 1..{MAX_DIM}")
    if not np.isfinite(a).all():
        raise NonFinite("matrix has NaN or infinite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(np.conj(m), -1, -2)


def hermiticity_error(m: np.ndarray) -> np.ndarray:
    """Max entrywise ``|m - m^dagger|`` (per matrix for stacks)."""
    return np.abs(m - dagger(m)).max(axis=(-2, -1))


def unitarity_error(u: np.ndarray) -> float:
    u = np.asarray(u)
    eye = np.eye(u.shape[-1])
    return float(np.abs(dagger(u) @ u - eye).max())


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def _jacobi(a: np.ndarray, want_vectors: bool):
    """Diagonalise a stack of Hermitian matrices in place.

    ``a`` has shape ``(b, n, n)`` and is overwritten. Returns the eigenvalues
    (unsorted, shape ``(b, n)``) and the accumulated rotations, or ``None``
    when vectors are not requested.
    """
    nb, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=np.complex128), a.shape).copy() if want_vectors else None
    off_mask = ~np.eye(n, dtype=bool)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for _ in range(MAX_SWEEPS):
        mag = np.abs(a) ** 2
        off = mag[:, off_mask].sum(axis=1)
        total = mag.sum(axis=(1, 2))
        active = np.nonzero(off > JACOBI_REL_OFF * total)[0]
        if active.size == 0:
            break
        sub = a[active]
        vs = v[active] if want_vectors else None
        for p, q in pairs:
            apq = sub[:, p, q]
            b = np.abs(apq)
            rot = b > 0.0
            bsafe = np.where(rot, b, 1.0)
            app = sub[:, p, p].real.copy()
            aqq = sub[:, q, q].real.copy()
            theta = (aqq - app) / (2.0 * bsafe)
            t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(rot, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            phase = np.where(rot, apq / bsafe, 1.0)
            sp = (s * phase)[:, None]
            sc = (s * np.conj(phase))[:, None]
            c_ = c[:, None]

            # A <- A G with G_pp = G_qq = c, G_pq = s e^{i phi}, G_qp = -s e^{-i phi}
            colp = sub[:, :, p].copy()
            colq = sub[:, :, q]
            sub[:, :, p] = c_ * colp - sc * colq
            sub[:, :, q] = sp * colp + c_ * colq
            # A <- G^dagger A
            rowp = sub[:, p, :].copy()
            rowq = sub[:, q, :]
            sub[:, p, :] = c_ * rowp - sp * rowq
            sub[:, q, :] = sc * rowp + c_ * rowq
            sub[:, p, q] = 0.0
            sub[:, q, p] = 0.0
            sub[:, p, p] = app - t * b
            sub[:, q, q] = aqq + t * b

            if want_vectors:
                vp = vs[:, :, p].copy()
                vq = vs[:, :, q]
                vs[:, :, p] = c_ * vp - sc * vq
                vs[:, :, q] = sp * vp + c_ * vq
        a[active] = sub
        if want_vectors:
            v[active] = vs
    else:  # pragma: no cover - 4x4 inputs converge in well under 10 sweeps
        raise ArithmeticError("Jacobi iteration did not converge")

    return np.diagonal(a, axis1=1, axis2=2).real.copy(), v


def _fix_signs(v: np.ndarray) -> np.ndarray:
    """Flip columns so the first nonzero component has nonnegative real part
    (or, when that real part is zero, nonnegative imaginary part)."""
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.nonzero(np.abs(col) > _SIGN_EPS)[0]
        if nz.size == 0:
            continue
        lead = col[nz[0]]
        re, im = lead.real, lead.imag
        if abs(re) <= _SIGN_EPS:
            flip = im < 0.0
        else:
            flip = re < 0.0
        if flip:
            v[:, k] = -col
    return v


def _symmetrised(a: np.ndarray, tol: float) -> np.ndarray:
    err = hermiticity_error(a)
    if np.any(err > tol):
        raise NotHermitian(f"matrix deviates from Hermitian by {np.max(err):.3e} (tol {tol:.1e})")
    return 0.5 * (a + dagger(a))


def hermitian_eigendecompose(m, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Eigen-decompose a Hermitian matrix with cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square complex matrix, Hermitian to within `tol`.
    tol : float
        Largest admissible ``|m - m^dagger|`` entry.

    Returns
    -------
    EigenDecomposition
        Ascending eigenvalues and a unitary matrix of eigenvector columns.

    Raises
    ------
    NotSquare, NotHermitian, NonFinite
    """
    a = _symmetrised(as_matrix(m), tol)
    w, v = _jacobi(a[None].copy(), want_vectors=True)
    w, v = w[0], v[0]
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], _fix_signs(v[:, order]))


def eigvalsh(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix or a stack of them."""
    a = _symmetrised(as_matrix(m, batched=True), tol)
    lead = a.shape[:-2]
    n = a.shape[-1]
    w, _ = _jacobi(a.reshape(-1, n, n).copy(), want_vectors=False)
    return np.sort(w, axis=-1).reshape(*lead, n)


def unitary_exp(h, t: float) -> np.ndarray:
    """Return ``exp(-i h t)`` for Hermitian ``h`` via its spectral decomposition."""
    if not np.isfinite(t):
        raise NonFinite(f"time must be finite, got {t!r}")
    eig = hermitian_eigendecompose(h)
    return eig.apply(lambda lam: np.exp(-1j * lam * t))


def trace_norm(m) -> float | np.ndarray:
    """Sum of singular values.

    Hermitian input uses ``sum |lambda_k|``. Anything else goes through the
    eigenvalues of ``m^dagger m``. Stacks return one value per matrix.
    """
    a = as_matrix(m, batched=True)
    single = a.ndim == 2
    n = a.shape[-1]
    flat = a.reshape(-1, n, n)
    herm = hermiticity_error(flat) <= HERMITICITY_TOL
    out = np.empty(flat.shape[0])
    if herm.any():
        out[herm] = np.abs(eigvalsh(flat[herm])).sum(axis=-1)
    if (~herm).any():
        other = flat[~herm]
        gram = dagger(other) @ other
        sv2 = np.clip(eigvalsh(gram), 0.0, None)
        out[~herm] = np.sqrt(sv2).sum(axis=-1)
    if single:
        return float(out[0])
    return out.reshape(a.shape[:-2])
