"""Multi-local dephasing channel.

Each qubit K dephases independently with Kraus pair ``diag(1, gamma_K)`` and
``diag(0, omega_K)``, where ``gamma_K = exp(-rate_K * t)`` and
``omega_K = sqrt(1 - gamma_K**2)``. The three-qubit channel is the product
family ``G_k F_j E_i`` (eight operators).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import DensityMatrix, WAmplitudes, validate_density, w_state_density

CHANNEL_TOL = 1e-10


@dataclass(frozen=True)
class DephasingModel:
    """Per-qubit dephasing rates (1/time)."""

    rate_A: float = 1.0
    rate_B: float = 1.0
    rate_C: float = 1.0

    def __post_init__(self):
        for name in ("rate_A", "rate_B", "rate_C"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def uniform(cls, rate: float) -> "DephasingModel":
        return cls(rate, rate, rate)

    @property
    def rates(self) -> tuple[float, float, float]:
        return (self.rate_A, self.rate_B, self.rate_C)

    @property
    def is_uniform(self) -> bool:
        return self.rate_A == self.rate_B == self.rate_C


@dataclass(frozen=True)
class DephasingFactors:
    """Decay factors ``gamma_K`` and complements ``omega_K`` at one instant."""

    gamma_A: float
    gamma_B: float
    gamma_C: float
    omega_A: float
    omega_B: float
    omega_C: float

    def __post_init__(self):
        for g, w in zip(self.gammas, self.omegas):
            if not (0.0 <= g <= 1.0 and 0.0 <= w <= 1.0):
                raise ValueError("dephasing factors must lie in [0, 1]")
            if abs(g * g + w * w - 1.0) > 1e-12:
                raise ValueError("gamma**2 + omega**2 must equal 1")

    @classmethod
    def from_gammas(cls, gamma_A: float, gamma_B: float, gamma_C: float):
        """Build factors directly from the gammas, e.g. to probe ``gamma = 0``."""
        gs = [float(g) for g in (gamma_A, gamma_B, gamma_C)]
        ws = [math.sqrt(max(0.0, 1.0 - g * g)) for g in gs]
        return cls(*gs, *ws)

    @property
    def gammas(self) -> tuple[float, float, float]:
        return (self.gamma_A, self.gamma_B, self.gamma_C)

    @property
    def omegas(self) -> tuple[float, float, float]:
        return (self.omega_A, self.omega_B, self.omega_C)


def factors_at(model: DephasingModel, t: float) -> DephasingFactors:
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    return DephasingFactors.from_gammas(*(math.exp(-r * t) for r in model.rates))


def single_qubit_kraus(gamma: float, omega: float) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.diag([1.0, gamma]).astype(complex),
        np.diag([0.0, omega]).astype(complex),
    )


def kraus_operators(factors: DephasingFactors) -> list[np.ndarray]:
    """All eight products ``G_k F_j E_i`` as explicit 8x8 matrices.

    Ordered with ``i`` (qubit A) slowest and ``k`` (qubit C) fastest.
    """
    pairs = [single_qubit_kraus(g, w) for g, w in zip(factors.gammas, factors.omegas)]
    E = [linalg.kron_all(op, linalg.I2, linalg.I2) for op in pairs[0]]
    F = [linalg.kron_all(linalg.I2, op, linalg.I2) for op in pairs[1]]
    G = [linalg.kron_all(linalg.I2, linalg.I2, op) for op in pairs[2]]
    return [
        linalg.matmul(G[k], linalg.matmul(F[j], E[i]))
        for i, j, k in itertools.product(range(2), repeat=3)
    ]


def apply_channel(rho0: DensityMatrix, factors: DephasingFactors) -> DensityMatrix:
    """``sum_mu D_mu rho0 D_mu^dagger`` over the eight Kraus operators."""
    rho = rho0.mat
    out = np.zeros_like(rho)
    for d in kraus_operators(factors):
        out += d @ rho @ linalg.adjoint(d)
    return validate_density(out, CHANNEL_TOL)


def evolved_w_analytic(amps: WAmplitudes, factors: DephasingFactors) -> DensityMatrix:
    """Closed-form evolved W state.

    Populations are untouched; the coherence between two single-excitation
    kets decays by the gammas of the two qubits whose bits differ.
    """
    gA, gB, gC = factors.gammas
    rho = w_state_density(amps).mat.copy()
    for (i, j), g in (((1, 2), gB * gC), ((1, 4), gA * gC), ((2, 4), gA * gB)):
        rho[i, j] *= g
        rho[j, i] *= g
    return validate_density(rho, CHANNEL_TOL)
