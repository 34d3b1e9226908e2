"""Command-line front end: sweeps, validation, battery inspection.

Three subcommands:

  sweep         run the simulator over a grid of one swept variable and
                write one CSV row per point (plus closed-form predictions)
  validate      run the property suites and print a pass/fail report
  steady-state  print the battery chain distribution for given lam, mu, cap

Settings merge in a fixed order: built-in defaults, then a key=value
config file given with --config, then explicit flags.  Exit codes: 0 on
success, 1 on I/O trouble or a failed validation suite, 2 on bad
configuration (argparse uses 2 for malformed flags as well).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys

from . import validation
from .battery import geo_geo1_steady_state
from .channel import SystemParams
from .montecarlo import (
    estimate_regime_means_and_beta,
    predict_mu_a_alice_saturated,
    predict_mu_a_geo_d1,
    predict_mu_a_jimmy_saturated,
    simulate,
)


class ConfigError(Exception):
    """Bad setting from a flag or a config file; maps to exit code 2."""


_SWEEP_VARIABLES = ("lambda_j", "lambda_a", "k_active")
_MODES = ("optimized_alpha", "fixed_alpha_1")

CSV_COLUMNS = (
    "sweep_variable",
    "sweep_value",
    "mu_a",
    "ci_halfwidth",
    "p_joint_on",
    "beta_hat",
    "mean_rate_jammed",
    "mean_rate_unjammed",
    "pred_alice_saturated",
    "pred_jimmy_saturated",
    "pred_geo_d1",
)

# key -> (coercion kind, default); config files and flags share the table
_KEYS = {
    "seed": ("int", 12345),
    "slots": ("int", 40000),
    "k": ("int", 6),
    "lambda_a": ("float", 1.0),
    "lambda_j": ("float", 1.0),
    "snr_db": ("float", 20.0),
    "cap_a": ("int", 10),
    "cap_j": ("int", 10),
    "mode": ("str", "optimized_alpha"),
    "out": ("str", "sweep.csv"),
    "sweep": ("str", "lambda_j"),
    "values": ("str", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0"),
    "draws_means": ("int", 100000),
    "replicas": ("int", 1),
    "workers": ("int", 1),
}


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved settings for one sweep run."""

    params: SystemParams = SystemParams()
    sweep_variable: str = "lambda_j"
    sweep_values: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    n_slots: int = 40000
    n_draws_means: int = 100000
    mode: str = "optimized_alpha"
    output_path: str = "sweep.csv"
    n_replicas: int = 1
    workers: int = 1

    def __post_init__(self):
        if self.sweep_variable not in _SWEEP_VARIABLES:
            raise ConfigError(f"unknown sweep variable '{self.sweep_variable}'")
        if self.mode not in _MODES:
            raise ConfigError(f"unknown mode '{self.mode}'")
        if not self.sweep_values:
            raise ConfigError("sweep values list is empty")
        if self.n_slots < 1 or self.n_draws_means < 1:
            raise ConfigError("slots and draws_means must be positive")
        if self.n_replicas < 1 or self.workers < 1:
            raise ConfigError("replicas and workers must be positive")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secjam",
        description="Secrecy-rate simulator for a battery-powered source "
        "assisted by a multi-antenna battery-powered jammer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="sweep one variable and write a CSV")
    sweep.add_argument("--config", help="key=value settings file")
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--slots", type=int, help="counted slots per sweep point")
    sweep.add_argument("--k", type=int, help="active jammer antennas")
    sweep.add_argument("--lambda-a", type=float, help="source energy arrival rate")
    sweep.add_argument("--lambda-j", type=float, help="jammer energy arrival rate")
    sweep.add_argument("--snr-db", type=float, help="transmit and jamming SNR in dB")
    sweep.add_argument("--cap-a", type=int, help="source battery capacity")
    sweep.add_argument("--cap-j", type=int, help="jammer battery capacity")
    sweep.add_argument("--mode", choices=_MODES)
    sweep.add_argument("--out", help="output CSV path")
    sweep.add_argument("--sweep", choices=_SWEEP_VARIABLES, dest="sweep_var")
    sweep.add_argument("--values", help="comma-separated sweep values")
    sweep.add_argument("--draws-means", type=int, help="draws for the closed-form means")
    sweep.add_argument("--replicas", type=int, help="independent replicas per point")
    sweep.add_argument("--workers", type=int, help="worker processes for replicas")

    val = sub.add_parser("validate", help="run the property suites")
    val.add_argument("--seed", type=int)

    steady = sub.add_parser(
        "steady-state", help="print a battery steady-state distribution"
    )
    steady.add_argument("--lam", type=float, required=True, help="arrival probability")
    steady.add_argument("--mu", type=float, required=True, help="service probability")
    steady.add_argument("--cap", type=int, required=True, help="battery capacity")

    return parser


def _coerce(key: str, raw: str):
    kind = _KEYS[key][0]
    if kind == "str":
        return raw
    try:
        return int(raw) if kind == "int" else float(raw)
    except ValueError:
        wanted = "an integer" if kind == "int" else "a number"
        raise ConfigError(f"invalid value '{raw}' for {key}: expected {wanted}") from None


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    settings = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got '{raw}'")
        if key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
        settings[key] = _coerce(key, value.strip())
    return settings


def _parse_sweep_values(variable: str, text: str, n_antennas: int) -> tuple:
    values = []
    for token in text.split(","):
        token = token.strip()
        if variable == "k_active":
            try:
                v = int(token)
            except ValueError:
                raise ConfigError(
                    f"invalid sweep value '{token}' for k_active: expected an integer"
                ) from None
            if not 2 <= v <= n_antennas:
                raise ConfigError(
                    f"invalid sweep value '{token}' for k_active: "
                    f"outside [2, {n_antennas}]"
                )
        else:
            try:
                v = float(token)
            except ValueError:
                raise ConfigError(
                    f"invalid sweep value '{token}' for {variable}: expected a number"
                ) from None
            if not 0.0 <= v <= 1.0:
                raise ConfigError(
                    f"invalid sweep value '{token}' for {variable}: outside [0, 1]"
                )
        values.append(v)
    if not values:
        raise ConfigError("sweep values list is empty")
    return tuple(values)


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """Resolve defaults, config file, and flags into an ExperimentConfig."""
    merged = {key: default for key, (_, default) in _KEYS.items()}
    if args.config:
        merged.update(_load_config(args.config))
    flag_names = {key: key for key in _KEYS}
    flag_names["sweep"] = "sweep_var"
    for key, attr in flag_names.items():
        value = getattr(args, attr, None)
        if value is not None:
            merged[key] = value

    snr = 10.0 ** (merged["snr_db"] / 10.0)
    alpha_fixed = 1.0 if merged["mode"] == "fixed_alpha_1" else None
    try:
        params = SystemParams(
            k_active=merged["k"],
            snr_a=snr,
            snr_j=snr,
            lambda_a=merged["lambda_a"],
            lambda_j=merged["lambda_j"],
            cap_a=merged["cap_a"],
            cap_j=merged["cap_j"],
            alpha_fixed=alpha_fixed,
            seed=merged["seed"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    values = _parse_sweep_values(merged["sweep"], merged["values"], params.n_antennas)
    return ExperimentConfig(
        params=params,
        sweep_variable=merged["sweep"],
        sweep_values=values,
        n_slots=merged["slots"],
        n_draws_means=merged["draws_means"],
        mode=merged["mode"],
        output_path=merged["out"],
        n_replicas=merged["replicas"],
        workers=merged["workers"],
    )


def _point_params(base: SystemParams, variable: str, value) -> SystemParams:
    if variable == "k_active":
        return dataclasses.replace(base, k_active=int(value))
    return dataclasses.replace(base, **{variable: float(value)})


def run_sweep(cfg: ExperimentConfig) -> list[dict]:
    """Simulate every sweep point; one result dict per CSV row.

    All points share the seed in cfg.params, which gives every point the
    same channel and arrival randomness: differences between neighboring
    rows then reflect the swept variable, not resampling noise.
    """
    rows = []
    means_cache = {}
    for value in cfg.sweep_values:
        p = _point_params(cfg.params, cfg.sweep_variable, value)
        key = (p.k_active, p.snr_a, p.snr_j, p.alpha_fixed, p.alpha_grid)
        if key not in means_cache:
            means_cache[key] = estimate_regime_means_and_beta(p, cfg.n_draws_means)
        mean_jammed, mean_unjammed, beta = means_cache[key]
        res = simulate(p, cfg.n_slots, n_replicas=cfg.n_replicas, workers=cfg.workers)
        rows.append(
            {
                "sweep_variable": cfg.sweep_variable,
                "sweep_value": value,
                "mu_a": res.mu_a,
                "ci_halfwidth": res.ci_halfwidth,
                "p_joint_on": res.p_joint_on,
                "beta_hat": res.beta_hat,
                "mean_rate_jammed": res.mean_rate_jammed,
                "mean_rate_unjammed": res.mean_rate_unjammed,
                "pred_alice_saturated": predict_mu_a_alice_saturated(
                    mean_jammed, mean_unjammed, p.lambda_j, beta
                ),
                "pred_jimmy_saturated": predict_mu_a_jimmy_saturated(
                    mean_jammed, p.lambda_a, beta
                ),
                "pred_geo_d1": predict_mu_a_geo_d1(
                    mean_jammed, mean_unjammed, p.lambda_a, p.lambda_j
                ),
            }
        )
    return rows


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(rows: list[dict], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row[col]) for col in CSV_COLUMNS])


def _cmd_sweep(args) -> int:
    cfg = config_from_args(args)
    rows = run_sweep(cfg)
    try:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    except OSError as exc:
        print(f"error: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} sweep points to {cfg.output_path}")
    return 0


def _cmd_validate(args) -> int:
    seed = args.seed if args.seed is not None else _KEYS["seed"][1]
    results = validation.run_all(seed)
    print(validation.render_report(results))
    return 0 if all(r.passed for r in results) else 1


def _cmd_steady_state(args) -> int:
    try:
        chain = geo_geo1_steady_state(args.lam, args.mu, args.cap)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print("level,probability")
    for level, prob in enumerate(chain.steady):
        print(f"{level},{format(float(prob), '.17g')}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "validate": _cmd_validate,
        "steady-state": _cmd_steady_state,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
