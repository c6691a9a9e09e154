"""Closed-form Bell expectations for dephased W states and the death time.

For ``rho0`` a W state the expectation of the three-party operator depends on
the amplitudes only through the pairwise coherences
``x_ij = 2 Re(a_i conj(a_j))``. With party angles ``theta_K`` and the
observable ``c z + d x`` on each slot, a single-excitation state gives::

    tr[(n_A n_B n_C) rho(t)] = -c_A c_B c_C
                               + c_A d_B d_C x_12 g_B g_C
                               + d_A d_B c_C x_24 g_A g_B
                               + d_A c_B d_C x_14 g_A g_C

At the default angles this collapses to
``-(1 + x_12 g_B g_C + x_24 g_A g_B + x_14 g_A g_C) / 2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

from scipy.optimize import bisect

from .bell import DEFAULT_SETTINGS, BellOperator, BellSettings, exceeds_bound, expectation
from .errors import HorizonTooShortError
from .noise import DephasingFactors, DephasingModel, apply_channel, factors_at
from .states import DensityMatrix, WAmplitudes

BRACKET_RTOL = 1e-10


class BnsdKind(enum.Enum):
    DIES_AT = "dies_at"
    NEVER_VIOLATES = "never_violates"
    # Reserved: dephasing always drives |<B3>| to 1/2, so this is never returned.
    VIOLATES_FOREVER = "violates_forever"


@dataclass(frozen=True)
class BnsdResult:
    kind: BnsdKind
    tau: Optional[float] = None

    def __post_init__(self):
        if (self.kind is BnsdKind.DIES_AT) != (self.tau is not None):
            raise ValueError("tau must be given exactly when kind is DIES_AT")
        if self.tau is not None and not self.tau > 0:
            raise ValueError("tau must be positive")


def _coherences(amps: WAmplitudes) -> tuple[float, float, float]:
    """``(x_12, x_24, x_14)`` with ``x_ij = a_i conj(a_j) + conj(a_i) a_j``."""
    a1, a2, a4 = amps.a1, amps.a2, amps.a4
    return (
        2.0 * (a1 * a2.conjugate()).real,
        2.0 * (a2 * a4.conjugate()).real,
        2.0 * (a1 * a4.conjugate()).real,
    )


def cross_term_sum(amps: WAmplitudes) -> float:
    """Sum of the three pairwise coherences; lies in ``[-1, 2]``."""
    return sum(_coherences(amps))


def term_expectations_analytic(
    amps: WAmplitudes,
    factors: DephasingFactors,
    settings: BellSettings = DEFAULT_SETTINGS,
) -> tuple[float, float, float, float]:
    """Closed form of :func:`bnsd.bell.term_expectations` for an evolved W state."""
    x12, x24, x14 = _coherences(amps)
    gA, gB, gC = factors.gammas
    pairs = []
    for theta in settings.thetas:
        c, s = math.cos(theta), math.sin(theta)
        # (z, x) coefficients of M and M'
        pairs.append(((c, -s), (s, c)))
    (A, Ap), (B, Bp), (C, Cp) = pairs

    def half_trace(nA, nB, nC):
        (cA, dA), (cB, dB), (cC, dC) = nA, nB, nC
        return 0.5 * (
            -cA * cB * cC
            + cA * dB * dC * x12 * gB * gC
            + dA * dB * cC * x24 * gA * gB
            + dA * cB * dC * x14 * gA * gC
        )

    return (
        half_trace(A, B, Cp),
        half_trace(A, Bp, C),
        half_trace(Ap, B, C),
        half_trace(Ap, Bp, Cp),
    )


def b3_expectation_analytic(
    amps: WAmplitudes,
    factors: DephasingFactors,
    settings: BellSettings = DEFAULT_SETTINGS,
) -> float:
    """Signed closed-form ``<B3>`` on the evolved W state."""
    t1, t2, t3, t4 = term_expectations_analytic(amps, factors, settings)
    return t1 + t2 + t3 - t4


def b3_magnitude_analytic(
    amps: WAmplitudes,
    factors: DephasingFactors,
    settings: Optional[BellSettings] = None,
) -> float:
    """``|<B3>|`` on the evolved W state.

    At the default angles this is
    ``|1 + x_12 g_B g_C + x_24 g_A g_B + x_14 g_A g_C| / 2``; other angles go
    through the general term formula.
    """
    if settings is not None and settings != DEFAULT_SETTINGS:
        return abs(b3_expectation_analytic(amps, factors, settings))
    x12, x24, x14 = _coherences(amps)
    gA, gB, gC = factors.gammas
    return 0.5 * abs(1.0 + x12 * gB * gC + x24 * gA * gB + x14 * gA * gC)


def initial_violation(amps: WAmplitudes) -> bool:
    """Whether the undecayed W state violates ``|<B3>| <= 1``."""
    return exceeds_bound(b3_magnitude_analytic(amps, DephasingFactors.from_gammas(1.0, 1.0, 1.0)))


def tau_bnsd_analytic(
    amps: WAmplitudes,
    gamma_rate: Union[float, DephasingModel],
    threshold: float = 1.0,
) -> BnsdResult:
    """Time at which ``|<B3>|`` falls to ``threshold`` under equal rates.

    With equal rates ``|<B3>|(t) = (1 + s exp(-2 rate t)) / 2``, so the
    crossing is at ``ln(s / (2 threshold - 1)) / (2 rate)``; for the default
    threshold this is ``ln(s) / (2 rate)``, and ``ln(2) / (2 rate)`` for the
    standard W state. States with ``|<B3>|(0) <= threshold`` never violate.

    Raises:
        ValueError: for a non-positive rate, unequal per-qubit rates (use
            :func:`find_crossing_numeric`), or ``threshold <= 1/2``, which the
            asymptote ``1/2`` never reaches.
    """
    if isinstance(gamma_rate, DephasingModel):
        if not gamma_rate.is_uniform:
            raise ValueError(
                "closed form needs equal per-qubit rates; use find_crossing_numeric"
            )
        gamma_rate = gamma_rate.rate_A
    if not gamma_rate > 0:
        raise ValueError(f"gamma_rate must be positive, got {gamma_rate!r}")
    if not threshold > 0.5:
        raise ValueError("threshold must exceed the asymptotic value 1/2")
    s = cross_term_sum(amps)
    if not exceeds_bound(0.5 * (1.0 + s), threshold):
        return BnsdResult(BnsdKind.NEVER_VIOLATES)
    return BnsdResult(BnsdKind.DIES_AT, math.log(s / (2.0 * threshold - 1.0)) / (2.0 * gamma_rate))


def find_crossing_numeric(
    rho0: DensityMatrix,
    model: DephasingModel,
    op: BellOperator,
    threshold: float = 1.0,
    t_max: float = 10.0,
) -> BnsdResult:
    """Bisect for the time where ``|<op>|`` on the dephased state hits ``threshold``.

    Works for any initial state and any rates. The bracket ``[0, t_max]`` is
    refined to a width of ``1e-10 * max(1, t_max)``.

    Raises:
        HorizonTooShortError: if ``|<op>|`` still exceeds ``threshold`` at ``t_max``.
    """
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    if not t_max > 0:
        raise ValueError("t_max must be positive")

    def excess(t: float) -> float:
        rho = apply_channel(rho0, factors_at(model, t))
        return abs(expectation(op, rho)) - threshold

    if not exceeds_bound(expectation(op, rho0), threshold):
        return BnsdResult(BnsdKind.NEVER_VIOLATES)
    at_horizon = excess(t_max)
    if at_horizon > 0:
        raise HorizonTooShortError(t_max, at_horizon + threshold)
    if at_horizon == 0:
        return BnsdResult(BnsdKind.DIES_AT, t_max)
    tau = bisect(excess, 0.0, t_max, xtol=BRACKET_RTOL * max(1.0, t_max))
    return BnsdResult(BnsdKind.DIES_AT, tau)
