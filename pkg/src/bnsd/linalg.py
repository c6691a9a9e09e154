"""Small dense complex matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every operator
in this package is 2x2, 4x4 or 8x8, so nothing here tries to be clever about
storage or performance.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError

MAX_DIM = 8
DEFAULT_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (I2, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.flags.writeable = False


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite square complex matrix of supported size."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not 1 <= m.shape[0] <= MAX_DIM:
        raise DimensionError(f"dimension {m.shape[0]} outside 1..{MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def kron(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise DimensionError(
            f"kron of dims {a.shape[0]} and {b.shape[0]} exceeds {MAX_DIM}"
        )
    return np.kron(a, b)


def kron_all(*factors) -> np.ndarray:
    """Left-to-right Kronecker product of ``factors``."""
    out = np.eye(1, dtype=complex)
    for f in factors:
        out = kron(out, f)
    return out


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_matrix(a)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def min_eigenvalue(a, tol: float = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of the Hermitian part of ``a``.

    Raises:
        ValueError: if ``a`` is not Hermitian within ``tol``.
    """
    m = as_matrix(a)
    if not is_hermitian(m, tol):
        raise ValueError("min_eigenvalue requires a Hermitian matrix")
    return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
