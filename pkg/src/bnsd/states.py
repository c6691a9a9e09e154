"""Pure and mixed three-qubit states.

Basis ordering: qubit A is the most significant bit, so ``|abc>`` has index
``4a + 2b + c``. The W-state amplitudes keep their basis-index names: ``a1``
multiplies ``|001>``, ``a2`` multiplies ``|010>`` and ``a4`` multiplies
``|100>``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    HermiticityError,
    NormalizationError,
    PositivityError,
    TraceError,
)

NORM_TOL = 1e-12
POSITIVITY_TOL = 1e-10

W_INDICES = (1, 2, 4)


@dataclass(frozen=True)
class WAmplitudes:
    """Amplitudes of ``a1|001> + a2|010> + a4|100>``."""

    a1: complex
    a2: complex
    a4: complex

    def __post_init__(self):
        for name in ("a1", "a2", "a4"):
            value = complex(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} is not finite")
            object.__setattr__(self, name, value)
        norm2 = abs(self.a1) ** 2 + abs(self.a2) ** 2 + abs(self.a4) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"|a1|^2 + |a2|^2 + |a4|^2 = {norm2!r}, expected 1"
            )

    @classmethod
    def normalized(cls, a1, a2, a4) -> "WAmplitudes":
        """Rescale arbitrary (nonzero) amplitudes to unit norm."""
        v = np.array([a1, a2, a4], dtype=complex)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        v = v / norm
        return cls(*v)

    @classmethod
    def standard(cls) -> "WAmplitudes":
        """Equal real amplitudes ``1/sqrt(3)``."""
        return cls.normalized(1, 1, 1)

    def as_vector(self) -> np.ndarray:
        """Embed into the eight-dimensional computational basis."""
        vec = np.zeros(8, dtype=complex)
        vec[list(W_INDICES)] = (self.a1, self.a2, self.a4)
        return vec


class DensityMatrix:
    """A validated density matrix.

    Build instances with :func:`validate_density` or one of the constructors
    in this module; the wrapped array is read-only.
    """

    __slots__ = ("_mat",)

    def __init__(self, mat: np.ndarray):
        mat = np.array(mat, dtype=complex)
        mat.flags.writeable = False
        self._mat = mat

    @property
    def mat(self) -> np.ndarray:
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self._mat if dtype is None else self._mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


def validate_density(rho, tol: float = NORM_TOL) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity, and wrap the matrix.

    Positivity is checked against ``max(tol, 1e-10)`` since eigenvalue
    round-off for rank-deficient states sits well above 1e-12.

    Raises:
        HermiticityError, TraceError, PositivityError: one per invariant.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = linalg.as_matrix(rho)
    if not linalg.is_hermitian(m, tol):
        raise HermiticityError("matrix is not Hermitian")
    tr = linalg.trace(m)
    if abs(tr - 1.0) > tol:
        raise TraceError(f"trace is {tr!r}, expected 1")
    lam = linalg.min_eigenvalue(m, tol)
    if lam < -max(tol, POSITIVITY_TOL):
        raise PositivityError(f"minimum eigenvalue {lam!r} is negative")
    return DensityMatrix(m)


def pure_state_density(vec) -> DensityMatrix:
    """Projector ``|v><v|`` for a unit vector ``v``."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    norm = np.vdot(v, v).real
    if abs(norm - 1.0) > NORM_TOL:
        raise NormalizationError(f"vector norm^2 is {norm!r}, expected 1")
    return validate_density(np.outer(v, v.conj()))


def w_state_density(amps: WAmplitudes) -> DensityMatrix:
    """Density matrix of the generic W state.

    Only the ``{1, 2, 4} x {1, 2, 4}`` block is populated, with entry
    ``(i, j) = a_i conj(a_j)``.
    """
    v = amps.as_vector()
    rho = np.outer(v, v.conj())
    return validate_density(rho)


def maximally_mixed(dim: int = 8) -> DensityMatrix:
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)
