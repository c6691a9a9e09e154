"""Dichotomic measurement pairs and the two- and three-party Bell operators.

Every party measures a pair ``(M, M')`` obtained by rotating the reference
pair ``(sigma_z, sigma_x)`` through an angle ``theta``::

    M  = cos(theta) sigma_z - sin(theta) sigma_x
    M' = sin(theta) sigma_z + cos(theta) sigma_x
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ConsistencyError, DimensionError
from .states import DensityMatrix

IMAG_TOL = 1e-10
# Values within this of the bound count as on it, and a bound value is local.
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class BellSettings:
    """Rotation angle (radians) of each party's measurement pair."""

    theta_A: float = 0.0
    theta_B: float = math.pi / 6
    theta_C: float = math.pi / 3

    def __post_init__(self):
        for name in ("theta_A", "theta_B", "theta_C"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    @property
    def thetas(self) -> tuple[float, float, float]:
        return (self.theta_A, self.theta_B, self.theta_C)


DEFAULT_SETTINGS = BellSettings()


@dataclass(frozen=True, eq=False)
class BellOperator:
    n_parties: int
    mat: np.ndarray
    settings: BellSettings

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def measurement_pair(theta: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = math.cos(theta), math.sin(theta)
    m = c * linalg.SIGMA_Z - s * linalg.SIGMA_X
    mp = s * linalg.SIGMA_Z + c * linalg.SIGMA_X
    return m, mp


def _frozen(mat: np.ndarray) -> np.ndarray:
    mat.flags.writeable = False
    return mat


@functools.lru_cache(maxsize=64)
def build_b3(settings: BellSettings = DEFAULT_SETTINGS) -> BellOperator:
    """Three-party operator ``(ABC' + AB'C + A'BC - A'B'C') / 2``."""
    (a, ap), (b, bp), (c, cp) = (measurement_pair(t) for t in settings.thetas)
    mat = 0.5 * (
        linalg.kron_all(a, b, cp)
        + linalg.kron_all(a, bp, c)
        + linalg.kron_all(ap, b, c)
        - linalg.kron_all(ap, bp, cp)
    )
    return BellOperator(3, _frozen(mat), settings)


@functools.lru_cache(maxsize=64)
def build_b2(theta_B: float) -> BellOperator:
    """CHSH operator ``(AB + AB' + A'B - A'B') / 2`` with party A at angle 0."""
    a, ap = measurement_pair(0.0)
    b, bp = measurement_pair(theta_B)
    mat = 0.5 * (
        linalg.kron(a, b) + linalg.kron(a, bp) + linalg.kron(ap, b) - linalg.kron(ap, bp)
    )
    return BellOperator(2, _frozen(mat), BellSettings(0.0, theta_B, 0.0))


def _real_trace(op: np.ndarray, rho) -> float:
    rho = rho.mat if isinstance(rho, DensityMatrix) else linalg.as_matrix(rho)
    if op.shape != rho.shape:
        raise DimensionError(f"operator dim {op.shape[0]} vs state dim {rho.shape[0]}")
    value = linalg.trace(op @ rho)
    if abs(value.imag) > IMAG_TOL:
        raise ConsistencyError(f"expectation has imaginary part {value.imag!r}")
    return value.real


def expectation(op: BellOperator, rho: DensityMatrix) -> float:
    """Signed ``Re tr[op rho]``."""
    return _real_trace(op.mat, rho)


def term_expectations(
    rho: DensityMatrix, settings: BellSettings = DEFAULT_SETTINGS
) -> tuple[float, float, float, float]:
    """The four halves ``tr[ABC' rho]/2, tr[AB'C rho]/2, tr[A'BC rho]/2,
    tr[A'B'C' rho]/2``.

    The full expectation is ``t1 + t2 + t3 - t4``.
    """
    (a, ap), (b, bp), (c, cp) = (measurement_pair(t) for t in settings.thetas)
    products = ((a, b, cp), (a, bp, c), (ap, b, c), (ap, bp, cp))
    return tuple(0.5 * _real_trace(linalg.kron_all(*p), rho) for p in products)


def exceeds_bound(value: float, threshold: float = 1.0) -> bool:
    """Strict ``|value| > threshold`` with round-off at the boundary treated as equal."""
    return abs(value) - threshold > BOUNDARY_TOL


def violates_mabk(op: BellOperator, rho: DensityMatrix, threshold: float = 1.0) -> bool:
    """Strict test ``|<op>| > threshold``; the boundary itself is local."""
    return exceeds_bound(expectation(op, rho), threshold)
