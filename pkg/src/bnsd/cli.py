"""Command-line entry point.

Reproduce the headline numbers for the standard W state::

    bnsd --state w-standard --gamma-rate 1 --t-max 2 --steps 201 --output sweep.csv
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from .bell import DEFAULT_SETTINGS, BellSettings
from .errors import BnsdError
from .noise import DephasingModel
from .states import WAmplitudes
from .sweep import SweepConfig, compute_taus, format_csv, format_summary, format_tau_lines, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SELF_CHECK = 3
EXIT_IO = 4

PRESETS = {
    "w-standard": WAmplitudes.standard(),
}

CONFIG_KEYS = (
    "state", "amps", "auto_normalize", "gamma_rate", "gamma_rates",
    "theta_b", "theta_c", "t_max", "steps", "threshold", "output",
)
# Pairs of keys that set the same quantity; at most one per source.
_EXCLUSIVE = (("state", "amps"), ("gamma_rate", "gamma_rates"))


class ConfigError(BnsdError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def parse_complex(text: str) -> complex:
    """Parse ``re+imi`` literals such as ``0.5-0.5i``, ``1``, ``-i``."""
    s = "".join(text.split())
    if not s:
        raise ConfigError("empty complex literal")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        value = complex(s)
    except ValueError:
        raise ConfigError(f"malformed complex literal {text!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConfigError(f"non-finite complex literal {text!r}")
    return value


def _parse_triple(text: str, convert, what: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"{what} needs three comma-separated values, got {text!r}")
    return tuple(convert(p) for p in parts)


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def read_config_file(text: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values and values[key] != value:
            raise ConfigError(f"line {lineno}: conflicting values for {key!r}")
        values[key] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bnsd", description=__doc__.splitlines()[0])
    p.add_argument("--state", choices=sorted(PRESETS))
    p.add_argument("--amps", help="three complex amplitudes a1,a2,a4, e.g. 0.5+0.5i,0.5,0.5")
    p.add_argument("--no-auto-normalize", dest="auto_normalize", action="store_const", const="false")
    p.add_argument("--gamma-rate", help="dephasing rate for all three qubits")
    p.add_argument("--gamma-rates", help="per-qubit rates RA,RB,RC")
    p.add_argument("--theta-b")
    p.add_argument("--theta-c")
    p.add_argument("--t-max")
    p.add_argument("--steps")
    p.add_argument("--threshold")
    p.add_argument("--output", help="CSV path, or - for standard output")
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--find-tau", action="store_true", help="only print the death times")
    return p


def _merge(file_values: dict[str, str], flag_values: dict[str, str]) -> dict[str, str]:
    for source in (file_values, flag_values):
        for a, b in _EXCLUSIVE:
            if a in source and b in source:
                raise ConfigError(f"{a} and {b} are mutually exclusive")
    merged = dict(file_values)
    for a, b in _EXCLUSIVE:
        if a in flag_values or b in flag_values:
            merged.pop(a, None)
            merged.pop(b, None)
    merged.update(flag_values)
    return merged


def parse_config(args: Sequence[str], config_file: Optional[str] = None) -> SweepConfig:
    """Build a :class:`SweepConfig` from flags, layered over an optional file.

    ``config_file`` is a path; ``--config`` in ``args`` takes precedence.
    """
    ns = build_parser().parse_args(list(args))
    return _config_from_namespace(ns, config_file)


def _config_from_namespace(ns: argparse.Namespace, config_file: Optional[str]) -> SweepConfig:
    path = ns.config or config_file
    file_values = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                file_values = read_config_file(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
    flag_values = {
        k: v for k in CONFIG_KEYS if (v := getattr(ns, k, None)) is not None
    }
    v = _merge(file_values, flag_values)

    auto = _parse_bool(v.get("auto_normalize", "true"))
    try:
        if "amps" in v:
            raw = _parse_triple(v["amps"], parse_complex, "amps")
            amps = WAmplitudes.normalized(*raw) if auto else WAmplitudes(*raw)
        else:
            name = v.get("state", "w-standard")
            if name not in PRESETS:
                raise ConfigError(f"unknown state preset {name!r}")
            amps = PRESETS[name]

        if "gamma_rates" in v:
            rates = DephasingModel(*_parse_triple(v["gamma_rates"], _parse_float, "gamma_rates"))
        else:
            rates = DephasingModel.uniform(_parse_float(v.get("gamma_rate", "1")))

        settings = BellSettings(
            DEFAULT_SETTINGS.theta_A,
            _parse_float(v["theta_b"]) if "theta_b" in v else DEFAULT_SETTINGS.theta_B,
            _parse_float(v["theta_c"]) if "theta_c" in v else DEFAULT_SETTINGS.theta_C,
        )
        steps_text = v.get("steps", "201")
        try:
            steps = int(steps_text)
        except ValueError:
            raise ConfigError(f"steps must be an integer, got {steps_text!r}") from None
        return SweepConfig(
            amps=amps,
            rates=rates,
            settings=settings,
            t_max=_parse_float(v.get("t_max", "2")),
            steps=steps,
            threshold=_parse_float(v.get("threshold", "1")),
            output_path=v.get("output", "-"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = build_parser().parse_args(argv)
        config = _config_from_namespace(ns, None)
    except ConfigError as exc:
        print(f"bnsd: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if ns.find_tau:
        sys.stdout.write(format_tau_lines(compute_taus(config)))
        return EXIT_OK

    rows, summary = run_sweep(config)
    body = format_csv(rows)
    if config.output_path == "-":
        sys.stdout.write(body)
        summary_stream = sys.stderr
    else:
        try:
            with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(body)
        except OSError as exc:
            print(f"bnsd: cannot write {config.output_path}: {exc}", file=sys.stderr)
            return EXIT_IO
        summary_stream = sys.stdout
    summary_stream.write(format_summary(config, summary))

    if not summary.self_check_passed:
        print(
            f"bnsd: self-check failed: numeric and closed-form |<B3>| differ by "
            f"{summary.max_abs_diff!r}",
            file=sys.stderr,
        )
        return EXIT_SELF_CHECK
    return EXIT_OK
