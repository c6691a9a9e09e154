"""Time sweeps of ``|<B3>|`` along both the channel and the closed form."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .analytic import (
    b3_magnitude_analytic,
    cross_term_sum,
    find_crossing_numeric,
    tau_bnsd_analytic,
)
from .bell import DEFAULT_SETTINGS, BellSettings, build_b3, exceeds_bound, expectation
from .errors import HorizonTooShortError
from .noise import DephasingModel, apply_channel, factors_at
from .states import WAmplitudes, w_state_density

CSV_HEADER = ("t", "gamma_A", "gamma_B", "gamma_C", "b3_numeric", "b3_analytic", "violates")
SELF_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class SweepConfig:
    amps: WAmplitudes = field(default_factory=WAmplitudes.standard)
    rates: DephasingModel = field(default_factory=DephasingModel)
    settings: BellSettings = DEFAULT_SETTINGS
    t_max: float = 2.0
    steps: int = 201
    threshold: float = 1.0
    output_path: str = "-"

    def __post_init__(self):
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ValueError("t_max must be positive")
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        if not self.threshold > 0:
            raise ValueError("threshold must be positive")


@dataclass(frozen=True)
class SweepRow:
    t: float
    gamma_A: float
    gamma_B: float
    gamma_C: float
    b3_numeric: float
    b3_analytic: float
    violates: bool


@dataclass(frozen=True)
class TauReport:
    """Death times from the closed form and from bisection, with status codes."""

    tau_analytic: Optional[float] = None
    tau_analytic_status: str = "not_applicable"
    tau_numeric: Optional[float] = None
    tau_numeric_status: str = "not_computed"

    @property
    def tau_difference(self) -> Optional[float]:
        if self.tau_analytic is None or self.tau_numeric is None:
            return None
        return self.tau_numeric - self.tau_analytic

    def lines(self) -> list[tuple[str, object]]:
        return [
            ("tau_analytic_status", self.tau_analytic_status),
            ("tau_analytic", self.tau_analytic),
            ("tau_numeric_status", self.tau_numeric_status),
            ("tau_numeric", self.tau_numeric),
            ("tau_difference", self.tau_difference),
        ]


@dataclass(frozen=True)
class SweepSummary:
    cross_term_sum: float
    initial_b3: float
    final_b3: float
    max_abs_diff: float
    taus: TauReport

    @property
    def self_check_passed(self) -> bool:
        return self.max_abs_diff <= SELF_CHECK_TOL


def compute_taus(config: SweepConfig) -> TauReport:
    """Closed-form tau where it applies, plus a bisection over ``[0, t_max]``.

    The closed form is only used for equal positive rates, the default
    angles and a threshold above the asymptote 1/2.
    """
    analytic, analytic_status = None, "not_applicable"
    rates = config.rates
    if (
        rates.is_uniform
        and rates.rate_A > 0
        and config.settings == DEFAULT_SETTINGS
        and config.threshold > 0.5
    ):
        res = tau_bnsd_analytic(config.amps, rates, config.threshold)
        analytic, analytic_status = res.tau, res.kind.value
    try:
        res = find_crossing_numeric(
            w_state_density(config.amps),
            rates,
            build_b3(config.settings),
            config.threshold,
            config.t_max,
        )
    except HorizonTooShortError:
        numeric, numeric_status = None, "beyond_t_max"
    else:
        numeric, numeric_status = res.tau, res.kind.value
    return TauReport(analytic, analytic_status, numeric, numeric_status)


def run_sweep(config: SweepConfig) -> tuple[list[SweepRow], SweepSummary]:
    """Evaluate ``|<B3>|`` at ``steps`` equally spaced times in ``[0, t_max]``."""
    rho0 = w_state_density(config.amps)
    op = build_b3(config.settings)
    rows = []
    for t in np.linspace(0.0, config.t_max, config.steps):
        t = float(t)
        f = factors_at(config.rates, t)
        numeric = abs(expectation(op, apply_channel(rho0, f)))
        rows.append(
            SweepRow(
                t, *f.gammas,
                b3_numeric=numeric,
                b3_analytic=b3_magnitude_analytic(config.amps, f, config.settings),
                violates=exceeds_bound(numeric, config.threshold),
            )
        )
    summary = SweepSummary(
        cross_term_sum=cross_term_sum(config.amps),
        initial_b3=rows[0].b3_numeric,
        final_b3=rows[-1].b3_numeric,
        max_abs_diff=max(abs(r.b3_numeric - r.b3_analytic) for r in rows),
        taus=compute_taus(config),
    )
    return rows, summary


def format_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [repr(float(v)) for v in (r.t, r.gamma_A, r.gamma_B, r.gamma_C, r.b3_numeric, r.b3_analytic)]
            + ["true" if r.violates else "false"]
        )
    return buf.getvalue()


def parse_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for rec in reader:
        *nums, flag = rec
        if flag not in ("true", "false"):
            raise ValueError(f"bad violates value {flag!r}")
        rows.append(SweepRow(*(float(x) for x in nums), violates=flag == "true"))
    return rows


def _fmt(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_summary(config: SweepConfig, summary: SweepSummary) -> str:
    a = config.amps
    lines = [
        ("amps", ", ".join(_fmt_complex(z) for z in (a.a1, a.a2, a.a4))),
        ("gamma_rates", ",".join(repr(r) for r in config.rates.rates)),
        ("thetas", ",".join(repr(t) for t in config.settings.thetas)),
        ("threshold", config.threshold),
        ("cross_term_sum", summary.cross_term_sum),
        ("initial_b3", summary.initial_b3),
        ("final_b3", summary.final_b3),
        ("max_abs_diff", summary.max_abs_diff),
        ("self_check", "pass" if summary.self_check_passed else "FAIL"),
        *summary.taus.lines(),
    ]
    return "".join(f"{k}: {_fmt(v)}\n" for k, v in lines)


def format_tau_lines(taus: TauReport) -> str:
    return "".join(f"{k}: {_fmt(v)}\n" for k, v in taus.lines())


def _fmt_complex(z: complex) -> str:
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"
