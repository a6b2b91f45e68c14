"""Dense complex matrix kernel: Hermitian eigendecomposition, PSD projection,
operator norms and block assembly.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128, row-major.
All functions are pure; nothing here holds state, so everything is safe to
call concurrently.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import DimensionError, HermitianError

__all__ = [
    "as_cmatrix",
    "adjoint",
    "frob",
    "HermEig",
    "hermitian_eig",
    "psd_project",
    "op_norm",
    "assemble_blocks",
    "split_blocks",
]


def as_cmatrix(a) -> np.ndarray:
    """Coerce input to a 2-d complex128 array (row vectors stay 1×n)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    elif m.ndim == 1:
        m = m.reshape(1, -1)
    elif m.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={m.ndim}")
    return m


def adjoint(a: np.ndarray) -> np.ndarray:
    return as_cmatrix(a).conj().T


def frob(a) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(a)))


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition A = U diag(λ) U* with λ ascending and U unitary."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def _require_hermitian(a, tols: Tolerances):
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {m.shape}")
    skew = frob(m - m.conj().T)
    if skew > tols.herm_input * (1.0 + frob(m)):
        raise HermitianError(
            f"matrix is not Hermitian: ‖A − A*‖_F = {skew:.3e} exceeds tolerance"
        )
    return m


def hermitian_eig(a, tols: Tolerances = DEFAULT_TOLS) -> HermEig:
    """Eigendecompose a Hermitian matrix.

    The input is symmetrized as (A + A*)/2 before decomposition.  Raises
    DimensionError for non-square input, HermitianError when the skew part
    exceeds the tolerance budget.
    """
    m = _require_hermitian(a, tols)
    h = 0.5 * (m + m.conj().T)
    # LAPACK route: Householder tridiagonalization + QR/divide-and-conquer.
    w, u = np.linalg.eigh(h)
    return HermEig(w, u)


def psd_project(a, tols: Tolerances = DEFAULT_TOLS, floor: float = 0.0) -> np.ndarray:
    """Nearest positive-semidefinite matrix in Frobenius norm.

    Clips eigenvalues at ``floor`` (0 for the plain PSD cone; a positive
    floor projects onto {A : A ⪰ floor·I}).
    """
    dec = hermitian_eig(a, tols)
    clipped = np.maximum(dec.eigenvalues, floor)
    u = dec.eigenvectors
    out = (u * clipped) @ u.conj().T
    return 0.5 * (out + out.conj().T)


def op_norm(a) -> float:
    """Largest singular value, via the top eigenvalue of A*A."""
    m = as_cmatrix(a)
    if m.size == 0:
        return 0.0
    # work with the smaller Gram matrix
    g = m.conj().T @ m if m.shape[1] <= m.shape[0] else m @ m.conj().T
    top = hermitian_eig(g).eigenvalues[-1]
    return float(np.sqrt(max(top, 0.0)))


def assemble_blocks(blocks: np.ndarray) -> np.ndarray:
    """Assemble a (p, q, m, n) array of blocks into the (p·m, q·n) matrix."""
    b = np.asarray(blocks)
    if b.ndim != 4:
        raise DimensionError(f"expected a 4-d block array, got ndim={b.ndim}")
    p, q, m, n = b.shape
    return b.transpose(0, 2, 1, 3).reshape(p * m, q * n)


def split_blocks(mat: np.ndarray, m: int, n: int) -> np.ndarray:
    """Inverse of :func:`assemble_blocks`: view a (p·m, q·n) matrix as blocks."""
    a = as_cmatrix(mat)
    if a.shape[0] % m or a.shape[1] % n:
        raise DimensionError(
            f"matrix of shape {a.shape} does not split into {m}×{n} blocks"
        )
    p, q = a.shape[0] // m, a.shape[1] // n
    return a.reshape(p, m, q, n).transpose(0, 2, 1, 3)
