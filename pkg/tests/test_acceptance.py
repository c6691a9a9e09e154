"""Exit criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py -v -rA`` to see the per-criterion
PASS/FAIL lines, or ``python tests/test_acceptance.py`` for a plain report.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from bnsd import (
    BnsdKind,
    DephasingModel,
    WAmplitudes,
    apply_channel,
    b3_magnitude_analytic,
    build_b2,
    build_b3,
    evolved_w_analytic,
    expectation,
    factors_at,
    find_crossing_numeric,
    kraus_operators,
    linalg,
    pure_state_density,
    tau_bnsd_analytic,
    term_expectations,
    validate_density,
    w_state_density,
)
from bnsd.sweep import parse_csv

SEED = 1729
REPRO_ARGS = ["--state", "w-standard", "--gamma-rate", "1", "--t-max", "2", "--steps", "201"]


def report(label, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    assert ok, f"{label}: {detail}"


def _rng():
    return np.random.default_rng(SEED)


def _complex_amps(rng):
    return WAmplitudes.normalized(*(rng.normal(size=3) + 1j * rng.normal(size=3)))


def _random_density(rng):
    rank = int(rng.integers(1, 9))
    g = rng.normal(size=(8, rank)) + 1j * rng.normal(size=(8, rank))
    rho = g @ g.conj().T
    return validate_density(rho / np.trace(rho).real, 1e-10)


def test_c1_headline_tau():
    start = time.perf_counter()
    w = WAmplitudes.standard()
    analytic = tau_bnsd_analytic(w, 1.0)
    numeric = find_crossing_numeric(w_state_density(w), DephasingModel.uniform(1.0), build_b3(), 1.0, 10.0)
    elapsed = time.perf_counter() - start
    ok = (
        analytic.kind is BnsdKind.DIES_AT
        and abs(analytic.tau - math.log(2) / 2) <= 1e-12
        and abs(analytic.tau - 0.3465735903) <= 1e-10
        and abs(numeric.tau - analytic.tau) <= 1e-8
        and elapsed < 1.0
    )
    report(
        "C1 headline tau",
        ok,
        f"analytic={analytic.tau!r} numeric={numeric.tau!r} "
        f"|diff|={abs(numeric.tau - analytic.tau):.2e} ({elapsed * 1e3:.1f} ms)",
    )


def test_c2_closed_form_oracle():
    rng = _rng()
    op = build_b3()
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        amps = _complex_amps(rng)
        t, rate = rng.uniform(0, 5), rng.uniform(0.1, 10)
        f = factors_at(DephasingModel.uniform(rate), t)
        numeric = abs(expectation(op, apply_channel(w_state_density(amps), f)))
        worst = max(worst, abs(numeric - b3_magnitude_analytic(amps, f)))
    elapsed = time.perf_counter() - start
    report(
        "C2 closed-form |<B3>| oracle",
        worst <= 1e-10 and elapsed < 1.0,
        f"200 samples, max |diff|={worst:.2e}, {elapsed:.3f} s",
    )


def test_c3_evolution_oracle():
    rng = _rng()
    worst = 0.0
    for _ in range(100):
        amps = _complex_amps(rng)
        f = factors_at(DephasingModel(*rng.uniform(0.1, 10, size=3)), rng.uniform(0, 5))
        diff = apply_channel(w_state_density(amps), f).mat - evolved_w_analytic(amps, f).mat
        worst = max(worst, float(np.max(np.abs(diff))))
    report("C3 evolution oracle", worst <= 1e-12, f"100 samples, max elementwise |diff|={worst:.2e}")


def test_c4_channel_lawfulness():
    rng = _rng()
    worst_complete = worst_trace = 0.0
    min_eig = math.inf
    for _ in range(100):
        f = factors_at(DephasingModel(*rng.uniform(0.1, 10, size=3)), rng.uniform(0, 5))
        total = sum(linalg.adjoint(d) @ d for d in kraus_operators(f))
        worst_complete = max(worst_complete, float(np.max(np.abs(total - np.eye(8)))))
        out = apply_channel(_random_density(rng), f)
        worst_trace = max(worst_trace, abs(linalg.trace(out.mat) - 1))
        min_eig = min(min_eig, linalg.min_eigenvalue(out.mat))
    report(
        "C4 channel lawfulness",
        worst_complete <= 1e-12 and worst_trace <= 1e-12 and min_eig >= -1e-10,
        f"completeness {worst_complete:.2e}, trace {worst_trace:.2e}, min eig {min_eig:.2e}",
    )


@pytest.mark.parametrize("rate", [0.1, 1.0, 10.0])
def test_c5_asymptote(rate):
    w = WAmplitudes.standard()
    f = factors_at(DephasingModel.uniform(rate), 20.0 / rate)
    numeric = abs(expectation(build_b3(), apply_channel(w_state_density(w), f)))
    err = abs(numeric - 0.5)
    report(f"C5 asymptote (rate={rate})", err < 1e-8, f"| |<B3>| - 1/2 | = {err:.2e}")


def test_c6_violation_criterion():
    rng = _rng()
    op = build_b3()
    mismatches = 0
    n_violating = 0
    for _ in range(200):
        v = rng.normal(size=3)
        a1, a2, a4 = v / np.linalg.norm(v)
        predicate = a1 * a2 + a2 * a4 + a1 * a4 > 0.5
        numeric = abs(expectation(op, w_state_density(WAmplitudes(a1, a2, a4)))) > 1
        mismatches += predicate != numeric
        n_violating += predicate
    report(
        "C6 violation criterion",
        mismatches == 0 and 0 < n_violating < 200,
        f"200 real states, {n_violating} violating, {mismatches} mismatches",
    )


@pytest.mark.parametrize("t", [0.0, 0.1, 1.0])
def test_c7_term_decomposition(t):
    w = WAmplitudes.standard()
    f = factors_at(DephasingModel.uniform(1.0), t)
    gA, gB, gC = f.gammas
    a1, a2, a4 = w.a1, w.a2, w.a4
    x12 = a1 * a2.conjugate() + a2 * a1.conjugate()
    x24 = a2 * a4.conjugate() + a4 * a2.conjugate()
    x14 = a1 * a4.conjugate() + a4 * a1.conjugate()
    closed = [
        -(3 + x12 * gB * gC) / 8,
        -(1 + 3 * x12 * gB * gC) / 8,
        -gA * (x24 * gB + 3 * x14 * gC) / 8,
        gA * (3 * x24 * gB + x14 * gC) / 8,
    ]
    rho = apply_channel(w_state_density(w), f)
    terms = term_expectations(rho)
    worst = max(abs(n - c.real) for n, c in zip(terms, closed))
    recombined = terms[0] + terms[1] + terms[2] - terms[3]
    total_err = abs(recombined - expectation(build_b3(), rho))
    report(
        f"C7 term decomposition (t={t})",
        worst <= 1e-12 and total_err <= 1e-12,
        f"max term |diff|={worst:.2e}, recombination |diff|={total_err:.2e}",
    )


def test_c8_chsh_singlet():
    psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
    value = abs(expectation(build_b2(math.pi / 4), pure_state_density(psi)))
    report("C8 CHSH singlet magnitude sqrt(2)", abs(value - math.sqrt(2)) <= 1e-12, f"|<B2>|={value!r}")


def test_c8_chsh_product_local_bound():
    rng = _rng()
    op = build_b2(math.pi / 4)
    worst = 0.0
    for _ in range(100):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        worst = max(worst, abs(expectation(op, pure_state_density(psi))))
    report("C8 CHSH product-state local bound", worst <= 1 + 1e-12, f"max |<B2>| over 100 product states={worst!r}")


def test_c9_cli_determinism(tmp_path):
    outputs = []
    for k in range(2):
        path = tmp_path / f"run{k}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "bnsd", *REPRO_ARGS, "--output", str(path)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(path.read_bytes())
    rows = parse_csv(outputs[0].decode())
    worst = max(abs(r.b3_numeric - r.b3_analytic) for r in rows)
    report(
        "C9 CLI determinism and self-check",
        outputs[0] == outputs[1] and len(rows) == 201 and worst <= 1e-9,
        f"identical={outputs[0] == outputs[1]}, rows={len(rows)}, max |diff|={worst:.2e}",
    )


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    checks = [
        test_c1_headline_tau,
        test_c2_closed_form_oracle,
        test_c3_evolution_oracle,
        test_c4_channel_lawfulness,
        *(lambda r=r: test_c5_asymptote(r) for r in (0.1, 1.0, 10.0)),
        test_c6_violation_criterion,
        *(lambda t=t: test_c7_term_decomposition(t) for t in (0.0, 0.1, 1.0)),
        test_c8_chsh_singlet,
        test_c8_chsh_product_local_bound,
        lambda: test_c9_cli_determinism(Path(tempfile.mkdtemp())),
    ]
    failed = 0
    for check in checks:
        try:
            check()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
