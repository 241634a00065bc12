"""TOML configuration files for the experiment harness.

A configuration is a flat key-value document. Physical quantities are
written as strings with an explicit unit suffix ("28 GHz", "1 mW",
"-90 dBm") so link budgets read the way they are quoted; bare numbers are
accepted only for dimensionless or metre-valued keys. Unknown keys are
rejected rather than ignored, so typos surface immediately.
"""

from __future__ import annotations

import math
import re

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .experiments import ALL_METHODS, ExperimentConfig
from .pso import PsoConfig


class ConfigError(ValueError):
    """A configuration file is malformed or contains invalid values."""


_QUANTITY = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([a-zA-Z]+)\s*$")

_FREQUENCY_UNITS = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
_LENGTH_UNITS = {"m": 1.0, "cm": 1e-2, "mm": 1e-3}


def _split_quantity(text: str) -> tuple[float, str]:
    match = _QUANTITY.match(text)
    if match is None:
        raise ConfigError(f"cannot parse quantity {text!r}; expected e.g. '28 GHz'")
    return float(match.group(1)), match.group(2).lower()


def parse_frequency(value) -> float:
    """Frequency in Hz from a number or a string like ``"28 GHz"``."""
    if isinstance(value, (int, float)):
        return float(value)
    value_num, unit = _split_quantity(str(value))
    if unit not in _FREQUENCY_UNITS:
        raise ConfigError(f"unknown frequency unit {unit!r}")
    return value_num * _FREQUENCY_UNITS[unit]


def parse_power(value) -> float:
    """Power in watts from a number or a string like ``"1 mW"`` or ``"-90 dBm"``.

    Decibel-milliwatt values convert as ``10**((dBm - 30) / 10)`` watts.
    """
    if isinstance(value, (int, float)):
        return float(value)
    value_num, unit = _split_quantity(str(value))
    if unit == "dbm":
        return 10.0 ** ((value_num - 30.0) / 10.0)
    scale = {"w": 1.0, "mw": 1e-3, "uw": 1e-6, "nw": 1e-9}.get(unit)
    if scale is None:
        raise ConfigError(f"unknown power unit {unit!r}")
    return value_num * scale


def parse_length(value) -> float:
    """Length in metres from a number or a string like ``"3 m"`` or ``"5 mm"``."""
    if isinstance(value, (int, float)):
        return float(value)
    value_num, unit = _split_quantity(str(value))
    if unit not in _LENGTH_UNITS:
        raise ConfigError(f"unknown length unit {unit!r}")
    return value_num * _LENGTH_UNITS[unit]


_PSO_KEYS = {
    "swarm_size": int,
    "max_iters": int,
    "c1": float,
    "c2": float,
    "inertia_max": float,
    "inertia_min": float,
    "penalty": float,
    "velocity_init_span": float,
}

_TOP_KEYS = {
    "l_values",
    "m_values",
    "num_users",
    "num_drops",
    "master_seed",
    "methods",
    "grid_step",
    "height",
    "carrier_freq",
    "n_eff",
    "tx_power",
    "noise_power",
    "min_spacing",
} | set(_PSO_KEYS)


def config_from_mapping(data: dict) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from a flat parsed document."""
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")

    pso_kwargs = {}
    for key, cast in _PSO_KEYS.items():
        if key in data:
            try:
                pso_kwargs[key] = cast(data[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key!r}: {data[key]!r}") from exc

    kwargs = {}
    passthrough = {
        "num_users": int,
        "num_drops": int,
        "master_seed": int,
        "n_eff": float,
        "grid_step": float,
    }
    for key, cast in passthrough.items():
        if key in data:
            try:
                kwargs[key] = cast(data[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key!r}: {data[key]!r}") from exc
    if "l_values" in data:
        values = data["l_values"]
        if not isinstance(values, (list, tuple)):
            raise ConfigError("l_values must be a list of area sides in metres")
        kwargs["l_values"] = tuple(parse_length(v) for v in values)
    if "m_values" in data:
        values = data["m_values"]
        if not isinstance(values, (list, tuple)):
            raise ConfigError("m_values must be a list of antenna counts")
        kwargs["m_values"] = tuple(int(v) for v in values)
    if "methods" in data:
        methods = data["methods"]
        if isinstance(methods, str):
            methods = [methods]
        methods = tuple(str(m) for m in methods)
        bad = set(methods) - set(ALL_METHODS)
        if bad:
            raise ConfigError(f"unknown methods {sorted(bad)}; choose from {ALL_METHODS}")
        kwargs["methods"] = methods
    if "height" in data:
        kwargs["height"] = parse_length(data["height"])
    if "min_spacing" in data:
        kwargs["min_spacing"] = parse_length(data["min_spacing"])
    # Link-budget quantities must carry a unit suffix; a bare number is too
    # easy to misread by three or nine orders of magnitude.
    for key, parser in (
        ("carrier_freq", parse_frequency),
        ("tx_power", parse_power),
        ("noise_power", parse_power),
    ):
        if key in data:
            if not isinstance(data[key], str):
                raise ConfigError(
                    f"{key} must be a string with a unit suffix, e.g. '28 GHz' or '1 mW'"
                )
            kwargs[key] = parser(data[key])

    try:
        config = ExperimentConfig(pso=PsoConfig(**pso_kwargs), **kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for name in ("height", "carrier_freq", "n_eff", "tx_power", "noise_power", "grid_step"):
        value = getattr(config, name)
        if not math.isfinite(value) or value <= 0:
            raise ConfigError(f"{name} must be positive and finite, got {value}")
    return config


def load_config(path) -> ExperimentConfig:
    """Read a TOML experiment configuration from `path`."""
    try:
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    return config_from_mapping(data)
