#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command-line interface for spintherm: battery sweeps, response curves, entropy and
heat tables, and the polarization map, emitted as CSV, JSON or XLSX data
"""

import argparse
import dataclasses
import logging
import math
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from spintherm import (
    ArgumentError,
    BatterySpec,
    CapacityError,
    Config,
    DomainError,
    EnsembleSpec,
    EntropyBattery,
    Exporters,
    FileOperations,
    InfeasibleError,
    ResponseModel,
    Responses,
    Statistics,
    StatMechCore,
    Thermo,
    ThermalPoint,
)

logger = logging.getLogger("spintherm.cli")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3

BATTERY_COLUMNS = ["d_s", "tau_batt", "tau_env", "tau_f", "Q_env", "Q_batt", "spin_therm", "W_battery",
                   "eta_energy", "eta_carnot", "eta_endoreversible", "eta_generalized", "residual"]
CONVERGE_COLUMNS = ["d_s", "tau_batt", "tau_env", "d_E", "d_E_refined",
                    "eta_energy", "eta_energy_refined", "eta_shift"]
RESPONSE_COLUMNS = ["tau", "C_s", "C_s_over_tau"]
ENTROPY_COLUMNS = ["tau", "entropy", "heat"]
BOSON_EXTRA_COLUMNS = ["entropy_analytic", "heat_analytic"]
POLARIZATION_COLUMNS = ["S", "alpha", "tau", "tau_limit"]

COMMON_DEFAULTS: Dict[str, Any] = {
    "format": "csv",
    "out": None,
    "timestamp": False,
    "threads": None,
}

GRID_DEFAULTS: Dict[str, Any] = {
    "tau": None,
    "tau_start": 0.05,
    "tau_stop": 10.0,
    "tau_count": 200,
    "tau_spacing": "linear",
}

BATH_DEFAULTS: Dict[str, Any] = {
    "tau_env": None,
    "tau_batt": None,
    "ds": "0",
    "d_env": Config.DEFAULT_D_ENV,
    "d_E": Config.DEFAULT_D_E,
    "weight_env": Config.DEFAULT_WEIGHT_ENV,
    "weight_E": Config.DEFAULT_WEIGHT_E,
    "weight_s": Config.DEFAULT_WEIGHT_S,
}

COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "battery": dict(BATH_DEFAULTS),
    "converge": dict(BATH_DEFAULTS, factor=Config.CONVERGENCE_FACTOR),
    "response": dict(GRID_DEFAULTS, model=None, d=2, cutoff=1.0),
    "entropy": dict(GRID_DEFAULTS, statistics=None, N=None, d=None),
    "polarization": {"spins": None, "alpha": None, "alpha_count": 19},
}


class ConfigError(ArgumentError):
    """The run configuration (flags or config file) is invalid"""


def setup_logging(verbose: bool = False, log_file: Optional[str] = None) -> logging.Logger:
    """Send spintherm logs to stderr and optionally to a file; data never goes to these handlers."""
    logger_root = logging.getLogger("spintherm")
    logger_root.setLevel(logging.DEBUG)
    logger_root.handlers.clear()
    formatter = logging.Formatter(Config.LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
    console_handler.setFormatter(formatter)
    logger_root.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger_root.addHandler(file_handler)

    return logger_root


# ---------------------------------------------------------------- value parsing

def _number(text: Any) -> float:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    try:
        return float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a number: {text!r}") from None


def parse_float_list(value: Any) -> List[float]:
    """'0.3,0.367' or a TOML list or a single number"""
    if isinstance(value, (list, tuple)):
        return [_number(v) for v in value]
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        if not parts:
            raise ConfigError("empty list")
        return [_number(p) for p in parts]
    return [_number(value)]


def parse_int_list(value: Any) -> List[int]:
    """'0..8' (inclusive), '0,2,5', '0,2..8', a TOML list or a single integer"""
    if isinstance(value, (list, tuple)):
        items = [str(v) for v in value]
    elif isinstance(value, str):
        items = [p.strip() for p in value.split(",") if p.strip()]
        if not items:
            raise ConfigError("empty integer list")
    else:
        items = [str(value)]

    result: List[int] = []
    for item in items:
        if ".." in item:
            lo, _, hi = item.partition("..")
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise ConfigError(f"bad integer range {item!r}") from None
            if hi_i < lo_i:
                raise ConfigError(f"empty integer range {item!r}")
            result.extend(range(lo_i, hi_i + 1))
        else:
            try:
                result.append(int(item))
            except ValueError:
                raise ConfigError(f"bad integer list {value!r}") from None
    return result


def build_tau_grid(settings: Dict[str, Any]) -> List[float]:
    """Explicit --tau list, or start/stop/count/spacing"""
    if settings.get("tau") is not None:
        grid = parse_float_list(settings["tau"])
        if any(t <= 0 for t in grid):
            raise ConfigError("tau values must be > 0")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("tau values must be strictly increasing")
        return grid

    start, stop = _number(settings["tau_start"]), _number(settings["tau_stop"])
    count, spacing = int(settings["tau_count"]), str(settings["tau_spacing"])
    if count < 2:
        raise ConfigError(f"tau grid needs count >= 2, got {count}")
    if not 0 < start < stop:
        raise ConfigError(f"tau grid needs 0 < start < stop, got start={start}, stop={stop}")
    if spacing == "linear":
        return [float(t) for t in np.linspace(start, stop, count)]
    if spacing == "log":
        return [float(t) for t in np.geomspace(start, stop, count)]
    raise ConfigError(f"tau spacing must be linear or log, got {spacing!r}")


def load_config_file(path: str) -> Dict[str, Any]:
    """Flat TOML: key = value pairs, lists allowed, no tables"""
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from None
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"invalid config file {path}: {e}") from None

    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigError(f"config file {path}: nested table [{key}] is not supported")
    return {key.replace("-", "_"): value for key, value in data.items()}


def resolve_settings(command: str, args: argparse.Namespace) -> Dict[str, Any]:
    """Config defaults, then the config file, then flags"""
    settings = dict(COMMON_DEFAULTS)
    settings.update(COMMAND_DEFAULTS[command])

    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose", "log_file")}
    if getattr(args, "config", None):
        from_file = load_config_file(args.config)
        unknown = sorted(set(from_file) - set(settings))
        if unknown:
            raise ConfigError(f"unknown key(s) for '{command}' in {args.config}: {', '.join(unknown)}")
        settings.update(from_file)
    settings.update(flags)
    return settings


def _require(settings: Dict[str, Any], *keys: str):
    missing = [k for k in keys if settings.get(k) is None]
    if missing:
        flags = ", ".join("--" + k.replace("_", "-") for k in missing)
        raise ConfigError(f"missing required setting(s): {flags}")


def _workers(settings: Dict[str, Any]) -> int:
    if settings.get("threads") is None:
        return Config.thread_count()
    threads = int(settings["threads"])
    if threads < 1:
        raise ConfigError(f"--threads must be >= 1, got {threads}")
    return threads


# ---------------------------------------------------------------- subcommands

def _base_battery(settings: Dict[str, Any]) -> Tuple[BatterySpec, List[int], List[float]]:
    _require(settings, "tau_env", "tau_batt")
    tau_batt_values = parse_float_list(settings["tau_batt"])
    d_s_values = parse_int_list(settings["ds"])
    bad = [d for d in d_s_values if d < 0 or d == 1]
    if bad:
        raise ConfigError(f"spin-bath sizes must be 0 or >= 2, got {bad}")
    params = {k: settings[k] for k in ("d_env", "d_E", "weight_env", "weight_E", "weight_s")}
    params["d_env"], params["d_E"] = int(params["d_env"]), int(params["d_E"])
    spec = BatterySpec.from_params(_number(settings["tau_env"]), min(tau_batt_values), params)
    return spec, d_s_values, tau_batt_values


def cmd_battery(settings: Dict[str, Any]) -> Tuple[List[Dict[str, Any]], List[str], int]:
    """Efficiency sweep over spin-bath sizes and battery temperatures"""
    spec, d_s_values, tau_batt_values = _base_battery(settings)
    battery = EntropyBattery(dict(Config.get_battery_params(), workers=_workers(settings)))
    sweep = battery.sweep_efficiency(spec, d_s_values, tau_batt_values)

    rows = []
    status = EXIT_OK
    for cell in sweep:
        row: Dict[str, Any] = {"d_s": cell.d_s, "tau_batt": cell.tau_batt, "tau_env": spec.tau_env}
        if cell.ok:
            result = cell.result
            row.update({c: getattr(result, c) for c in BATTERY_COLUMNS if hasattr(result, c)})
        else:
            status = max(status, EXIT_INFEASIBLE if cell.infeasible else EXIT_CONFIG)
            logger.error("d_s=%d tau_batt=%r: %s", cell.d_s, cell.tau_batt, cell.error)
        rows.append(row)
    return rows, BATTERY_COLUMNS, status


def cmd_converge(settings: Dict[str, Any]) -> Tuple[List[Dict[str, Any]], List[str], int]:
    """Efficiency shift when the energy-bath truncation is multiplied by factor"""
    spec, d_s_values, tau_batt_values = _base_battery(settings)
    factor = int(settings["factor"])
    battery = EntropyBattery(dict(Config.get_battery_params(), workers=_workers(settings)))

    rows = []
    for d_s in d_s_values:
        for tau_batt in tau_batt_values:
            cell = dataclasses.replace(spec, d_s=d_s, tau_E0=tau_batt, tau_s0=tau_batt)
            report = battery.convergence_check(cell, factor)
            rows.append({
                "d_s": d_s,
                "tau_batt": tau_batt,
                "tau_env": spec.tau_env,
                "d_E": spec.d_E,
                "d_E_refined": spec.d_E * factor,
                "eta_energy": report.base.eta_energy,
                "eta_energy_refined": report.refined.eta_energy,
                "eta_shift": report.eta_shift,
            })
    return rows, CONVERGE_COLUMNS, EXIT_OK


def cmd_response(settings: Dict[str, Any]) -> Tuple[List[Dict[str, Any]], List[str], int]:
    """C_s and C_s/tau of an analytic model over a tau grid"""
    _require(settings, "model")
    model = ResponseModel(str(settings["model"]), d=int(settings["d"]), cutoff=_number(settings["cutoff"]))
    grid = build_tau_grid(settings)
    responses = Responses(dict(Config.get_response_params(), workers=_workers(settings)))

    curve = responses.response_curve(model, grid)
    rows = [{"tau": tau, "C_s": c, "C_s_over_tau": c / tau} for tau, c in zip(curve.tau_grid, curve.values)]
    return rows, RESPONSE_COLUMNS, EXIT_OK


def cmd_entropy(settings: Dict[str, Any]) -> Tuple[List[Dict[str, Any]], List[str], int]:
    """Finite-N entropy and heat, plus the infinite-N per-particle forms for bosons"""
    _require(settings, "statistics", "N", "d")
    spec = EnsembleSpec.from_states(int(settings["N"]), int(settings["d"]), Statistics.parse(settings["statistics"]))
    grid = build_tau_grid(settings)
    boson = spec.statistics is Statistics.BOSON and spec.d >= 2

    rows = []
    for tau in grid:
        row: Dict[str, Any] = {
            "tau": tau,
            "entropy": StatMechCore.entropy(ThermalPoint.at_tau(spec, tau)),
            "heat": StatMechCore.ensemble_heat(spec, tau),
        }
        if boson:
            row["entropy_analytic"] = Thermo.boson_entropy_analytic(spec.d, tau)
            row["heat_analytic"] = Thermo.boson_heat(spec.d, tau)
        rows.append(row)
    columns = ENTROPY_COLUMNS + (BOSON_EXTRA_COLUMNS if boson else [])
    return rows, columns, EXIT_OK


def cmd_polarization(settings: Dict[str, Any]) -> Tuple[List[Dict[str, Any]], List[str], int]:
    """Spin temperature of each (S, alpha); alpha = 1/2 is flagged in tau_limit"""
    _require(settings, "spins")
    spins = parse_float_list(settings["spins"])
    if settings.get("alpha") is not None:
        alphas = parse_float_list(settings["alpha"])
    else:
        count = int(settings["alpha_count"])
        if count < 1:
            raise ConfigError(f"--alpha-count must be >= 1, got {count}")
        alphas = [k / (count + 1) for k in range(1, count + 1)]
    bad = [a for a in alphas if not 0 < a < 1]
    if bad:
        raise ConfigError(f"alpha values must lie in (0, 1), got {bad}")

    rows = []
    for S in spins:
        for alpha in alphas:
            tau = Thermo.polarization_to_tau(alpha, S)
            if math.isinf(tau):
                rows.append({"S": S, "alpha": alpha, "tau": None, "tau_limit": "inf"})
            else:
                rows.append({"S": S, "alpha": alpha, "tau": tau, "tau_limit": None})
    return rows, POLARIZATION_COLUMNS, EXIT_OK


COMMANDS: Dict[str, Callable[[Dict[str, Any]], Tuple[List[Dict[str, Any]], List[str], int]]] = {
    "battery": cmd_battery,
    "converge": cmd_converge,
    "response": cmd_response,
    "entropy": cmd_entropy,
    "polarization": cmd_polarization,
}


# ---------------------------------------------------------------- argument parser

def _add_bath_arguments(p: argparse.ArgumentParser):
    S = argparse.SUPPRESS
    p.add_argument("--tau-env", dest="tau_env", type=float, default=S, help="Environment temperature")
    p.add_argument("--tau-batt", dest="tau_batt", default=S,
                   help="Battery start temperature(s), comma separated")
    p.add_argument("--ds", default=S, help="Spin-bath state counts: '0,2..8' or '0,2,5' (default 0)")
    p.add_argument("--d-env", dest="d_env", type=int, default=S,
                   help=f"Environment truncation (default {Config.DEFAULT_D_ENV})")
    p.add_argument("--d-E", dest="d_E", type=int, default=S,
                   help=f"Battery energy-bath truncation (default {Config.DEFAULT_D_E})")
    p.add_argument("--weight-env", dest="weight_env", type=float, default=S, help="Environment bath weight")
    p.add_argument("--weight-E", dest="weight_E", type=float, default=S, help="Energy bath weight")
    p.add_argument("--weight-s", dest="weight_s", type=float, default=S, help="Spin bath weight")


def _add_grid_arguments(p: argparse.ArgumentParser):
    S = argparse.SUPPRESS
    p.add_argument("--tau", default=S, help="Explicit tau values, comma separated (overrides the grid)")
    p.add_argument("--tau-start", dest="tau_start", type=float, default=S, help="Grid start (default 0.05)")
    p.add_argument("--tau-stop", dest="tau_stop", type=float, default=S, help="Grid stop (default 10)")
    p.add_argument("--tau-count", dest="tau_count", type=int, default=S, help="Grid points (default 200)")
    p.add_argument("--tau-spacing", dest="tau_spacing", choices=["linear", "log"], default=S,
                   help="Grid spacing (default linear)")


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat TOML file with settings; flags override it")
    common.add_argument("--format", choices=Exporters.FORMATS, default=S, help="Output format (default csv)")
    common.add_argument("--out", default=S, help="Write data to this path instead of stdout")
    common.add_argument("--timestamp", action="store_true", default=S,
                        help="Append a timestamp to the --out file name")
    common.add_argument("--threads", type=int, default=S,
                        help=f"Worker threads (default ${Config.THREADS_ENV_VAR} or {Config.DEFAULT_THREADS})")
    common.add_argument("--verbose", "-v", action="store_true", default=False, help="Debug logging on stderr")
    common.add_argument("--log-file", dest="log_file", default=None, help="Also write a debug log here")

    p = argparse.ArgumentParser(description="Spin thermodynamics and entropy-battery data generator.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    battery = sub.add_parser("battery", parents=[common], help="Battery efficiency sweep")
    _add_bath_arguments(battery)

    converge = sub.add_parser("converge", parents=[common], help="Energy-bath truncation check")
    _add_bath_arguments(converge)
    converge.add_argument("--factor", type=int, default=S,
                          help=f"Truncation multiplier (default {Config.CONVERGENCE_FACTOR})")

    response = sub.add_parser("response", parents=[common], help="Waste and entropic response curves")
    response.add_argument("--model", default=S, help="distinguishable, boson, einstein or debye")
    response.add_argument("--d", type=int, default=S, help="States per particle (default 2)")
    response.add_argument("--cutoff", type=float, default=S, help="Debye cutoff 2S (default 1)")
    _add_grid_arguments(response)

    entropy = sub.add_parser("entropy", parents=[common], help="Entropy and heat of a finite ensemble")
    entropy.add_argument("--statistics", default=S, help="distinguishable, boson or fermion")
    entropy.add_argument("--N", type=int, default=S, help="Particle count")
    entropy.add_argument("--d", type=int, default=S, help="States per particle")
    _add_grid_arguments(entropy)

    polarization = sub.add_parser("polarization", parents=[common], help="Polarization to spin temperature")
    polarization.add_argument("--spins", default=S, help="Spin values, comma separated (e.g. 1/2,1,5,200)")
    polarization.add_argument("--alpha", default=S, help="Polarizations in (0, 1), comma separated")
    polarization.add_argument("--alpha-count", dest="alpha_count", type=int, default=S,
                              help="Evenly spaced interior alpha grid when --alpha is absent (default 19)")
    return p


def main(argv: Optional[Sequence[str]] = None, configure_logging: bool = True) -> int:
    """Run one subcommand; returns 0 on success, 2 on configuration errors, 3 on infeasibility"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_CONFIG

    if configure_logging:
        setup_logging(args.verbose, args.log_file)

    try:
        settings = resolve_settings(args.command, args)
        rows, columns, status = COMMANDS[args.command](settings)
        out = FileOperations.output_path(settings["out"], bool(settings["timestamp"]))
        Exporters.export(rows, columns, str(settings["format"]), out, sheet_title=args.command)
    except InfeasibleError as e:
        logger.error("Infeasible: %s", e)
        return EXIT_INFEASIBLE
    except (ArgumentError, DomainError, CapacityError) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
    except OSError as e:
        logger.error("Cannot write output: %s", e)
        return EXIT_CONFIG

    return status


if __name__ == "__main__":
    raise SystemExit(main())
