"""Command-line interface for scenario optimisation and Monte Carlo sweeps.

Exit codes: 0 on success, 1 for usage or configuration errors, 2 for
runtime failures such as an unwritable output path.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from .channel import multicast_rate, snr_per_user
from .config import ConfigError, load_config
from .experiments import (
    ExperimentConfig,
    derive_run_seed,
    drop_users,
    heatmap,
    sweep_area,
    write_heatmap_csv,
    write_records_csv,
)
from .oracle import GridSpec, grid_search
from .pso import run_pso


class UsageError(Exception):
    """Bad flags or invalid argument combinations."""


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems via exceptions.

    The stock parser exits with status 2 on bad flags; this project reserves
    2 for runtime failures, so usage problems are raised and mapped to 1.
    """

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pinchcast",
        description="Multicast antenna placement on a pinched waveguide: "
        "optimise single scenarios, sweep areas, rasterise radiation maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_out: bool):
        p.add_argument("--config", help="TOML experiment configuration file")
        p.add_argument("--seed", type=int, default=0,
                       help="scenario seed; the same seed reproduces the same users (default 0)")
        p.add_argument("--l", type=float, default=None,
                       help="service area side in metres (default: first configured value)")
        p.add_argument("--m", type=int, default=None,
                       help="number of antennas (default: first configured value)")
        p.add_argument("--out", required=needs_out, help="output file path")

    p_opt = sub.add_parser("optimize", help="swarm-optimise one scenario")
    add_common(p_opt, needs_out=False)
    p_opt.set_defaults(handler=_cmd_optimize)

    p_sweep = sub.add_parser("sweep-l", help="Monte Carlo sweep over area sides, CSV output")
    p_sweep.add_argument("--config", help="TOML experiment configuration file")
    p_sweep.add_argument("--seed", type=int, default=None,
                         help="override the configured master seed")
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="worker processes for drop evaluation (default 1)")
    p_sweep.add_argument("--out", required=True, help="CSV output path")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_map = sub.add_parser("heatmap", help="normalised gain raster of an optimised layout, CSV output")
    add_common(p_map, needs_out=True)
    p_map.add_argument("--grid-step", type=float, default=None,
                       help="raster step in metres (default: configured grid_step)")
    p_map.set_defaults(handler=_cmd_heatmap)

    p_oracle = sub.add_parser("oracle", help="brute-force grid reference for one scenario")
    add_common(p_oracle, needs_out=False)
    p_oracle.add_argument("--resolution", type=float, default=1e-3,
                          help="grid resolution in metres (default 0.001)")
    p_oracle.set_defaults(handler=_cmd_oracle)
    return parser


def _load_experiment_config(args) -> ExperimentConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return ExperimentConfig()


def _scenario(args, config: ExperimentConfig):
    area_side = args.l if args.l is not None else config.l_values[0]
    num_antennas = args.m if args.m is not None else config.m_values[0]
    params = config.make_params(area_side, num_antennas)
    users = drop_users(config.num_users, area_side, args.seed)
    return users, params


def _write_json(path, payload) -> None:
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _cmd_optimize(args) -> int:
    config = _load_experiment_config(args)
    users, params = _scenario(args, config)
    pso_config = replace(config.pso, seed=derive_run_seed(args.seed, params.num_antennas))
    result = run_pso(users, params, pso_config)
    per_user = snr_per_user(users, result.best_layout, params)

    print(f"area_side_m={params.area_side} antennas={params.num_antennas} "
          f"users={len(users)} seed={args.seed}")
    print(f"layout_m={result.best_layout.tolist()}")
    print(f"min_snr_linear={result.best_min_snr!r}")
    print(f"rate_bps_hz={result.best_rate!r}")
    print(f"feasible={'true' if result.feasible else 'false'}")
    if args.out:
        _write_json(args.out, {
            "method": "pass-pso",
            "seed": args.seed,
            "area_side_m": params.area_side,
            "num_antennas": params.num_antennas,
            "users": users.tolist(),
            "layout_m": result.best_layout.tolist(),
            "per_user_snr_linear": per_user.tolist(),
            "min_snr_linear": result.best_min_snr,
            "rate_bps_hz": result.best_rate,
            "feasible": result.feasible,
            "final_fitness": float(result.fitness_history[-1]),
        })
    return 0


def _cmd_sweep(args) -> int:
    config = _load_experiment_config(args)
    if args.seed is not None:
        config = replace(config, master_seed=args.seed)
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    records = sweep_area(config, n_workers=args.workers)
    write_records_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_heatmap(args) -> int:
    config = _load_experiment_config(args)
    users, params = _scenario(args, config)
    step = args.grid_step if args.grid_step is not None else config.grid_step
    pso_config = replace(config.pso, seed=derive_run_seed(args.seed, params.num_antennas))
    result = run_pso(users, params, pso_config)
    raster = heatmap(result.best_layout, params, step, users=users)
    write_heatmap_csv(raster, args.out)

    print(f"layout_m={result.best_layout.tolist()} feasible={'true' if result.feasible else 'false'}")
    print(f"raster={raster.gain.shape[0]}x{raster.gain.shape[1]} median_gain={float(np.median(raster.gain))!r}")
    for idx, gain in enumerate(raster.user_gains):
        print(f"user{idx}_gain={float(gain)!r}")
    print(f"wrote raster to {args.out}")
    return 0


def _cmd_oracle(args) -> int:
    config = _load_experiment_config(args)
    users, params = _scenario(args, config)
    layout, value = grid_search(users, params, GridSpec(resolution=args.resolution))
    rate = float(multicast_rate(value))

    print(f"area_side_m={params.area_side} antennas={params.num_antennas} "
          f"users={len(users)} seed={args.seed} resolution_m={args.resolution}")
    print(f"layout_m={layout.tolist()}")
    print(f"min_snr_linear={value!r}")
    print(f"rate_bps_hz={rate!r}")
    if args.out:
        _write_json(args.out, {
            "method": "grid-oracle",
            "seed": args.seed,
            "area_side_m": params.area_side,
            "num_antennas": params.num_antennas,
            "resolution_m": args.resolution,
            "users": users.tolist(),
            "layout_m": layout.tolist(),
            "min_snr_linear": value,
            "rate_bps_hz": rate,
        })
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.handler(args)
    except (UsageError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
