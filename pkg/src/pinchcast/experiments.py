"""Monte Carlo harness: seeded user drops, method sweeps, CSV artefacts.

A *drop* is one random placement of users inside the service square. Drop
seeds are derived deterministically from ``(master_seed, area_side,
drop_index)``, so the same user population is replayed when the same area is
studied with different antenna counts or methods; the swarm optimiser's own
seed is derived separately from ``(drop_seed, num_antennas)``. All outputs
are plain CSV with fixed headers and row order, so repeated runs with the
same configuration are comparable value-for-value regardless of how many
worker processes computed them.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np
from joblib import Parallel, delayed

from .baseline import BaselineKind, baseline_min_snr
from .channel import channel_gain, multicast_rate
from .params import SystemParams, check_layout, check_users, uniform_axis
from .pso import PsoConfig, run_pso

METHOD_PSO = "pass-pso"
METHOD_FIXED_ARRAY = "fixed-array"
METHOD_COHERENT_BOUND = "coherent-bound"
ALL_METHODS = (METHOD_PSO, METHOD_FIXED_ARRAY, METHOD_COHERENT_BOUND)

RECORD_CSV_FIELDS = (
    "drop_seed",
    "L",
    "M",
    "method",
    "min_snr_linear",
    "rate_bps_hz",
    "feasible",
    "wall_time_s",
)
HEATMAP_CSV_FIELDS = ("x_m", "y_m", "normalized_gain")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of a Monte Carlo study.

    ``l_values`` and ``m_values`` are the area sides and antenna counts to
    sweep; every (area, antennas, drop, method) combination produces one
    record. Physics fields fill the :class:`SystemParams` template for each
    cell via :meth:`make_params`.
    """

    l_values: tuple = (5.0, 10.0, 15.0, 20.0)
    m_values: tuple = (2, 10)
    num_users: int = 4
    num_drops: int = 200
    master_seed: int = 1
    methods: tuple = ALL_METHODS
    pso: PsoConfig = field(default_factory=PsoConfig)
    grid_step: float = 0.05
    height: float = 3.0
    carrier_freq: float = 28e9
    n_eff: float = 1.4
    tx_power: float = 1e-3
    noise_power: float = 1e-12
    min_spacing: float | None = None

    def __post_init__(self):
        # Canonical sweep order: records are emitted sorted by (L, M, drop,
        # method), so the value lists are sorted and deduplicated up front.
        object.__setattr__(self, "l_values", tuple(sorted({float(v) for v in self.l_values})))
        object.__setattr__(self, "m_values", tuple(sorted({int(v) for v in self.m_values})))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.l_values or any(v <= 0 for v in self.l_values):
            raise ValueError("l_values must be non-empty and positive")
        if not self.m_values or any(v < 1 for v in self.m_values):
            raise ValueError("m_values must be non-empty and at least 1")
        if self.num_users < 1:
            raise ValueError(f"num_users must be at least 1, got {self.num_users}")
        if self.num_drops < 1:
            raise ValueError(f"num_drops must be at least 1, got {self.num_drops}")
        if self.master_seed < 0:
            raise ValueError("master_seed must be a non-negative integer")
        unknown = set(self.methods) - set(ALL_METHODS)
        if not self.methods or unknown:
            raise ValueError(f"methods must be a non-empty subset of {ALL_METHODS}, got {self.methods}")
        if not self.grid_step > 0:
            raise ValueError(f"grid_step must be positive, got {self.grid_step}")

    def make_params(self, area_side: float, num_antennas: int) -> SystemParams:
        """System parameters for one sweep cell."""
        return SystemParams(
            area_side=area_side,
            num_antennas=num_antennas,
            height=self.height,
            carrier_freq=self.carrier_freq,
            n_eff=self.n_eff,
            tx_power=self.tx_power,
            noise_power=self.noise_power,
            min_spacing=self.min_spacing,
        )


@dataclass(frozen=True)
class ExperimentRecord:
    """One (drop, method) outcome. ``rate`` is always ``log2(1 + min_snr)``."""

    drop_seed: int
    area_side: float
    num_antennas: int
    method: str
    min_snr: float
    rate: float
    feasible: bool
    wall_time: float


def derive_drop_seed(master_seed: int, area_side: float, drop_index: int) -> int:
    """Deterministic per-drop seed, identical across antenna counts and methods.

    The area side enters through its exact float bit pattern, so drops depend
    on the geometry they are drawn in but not on where that geometry appears
    in a sweep list.
    """
    encoded_area = int(np.float64(area_side).view(np.uint64))
    seq = np.random.SeedSequence((int(master_seed), encoded_area, int(drop_index)))
    return int(seq.generate_state(1, np.uint64)[0])


def derive_run_seed(drop_seed: int, num_antennas: int) -> int:
    """Seed for one optimiser run, keyed by drop and array size."""
    seq = np.random.SeedSequence((int(drop_seed), int(num_antennas)))
    return int(seq.generate_state(1, np.uint64)[0])


def drop_users(num_users: int, area_side: float, seed: int) -> np.ndarray:
    """Draw user ground positions uniformly over the service square."""
    if num_users < 1:
        raise ValueError(f"num_users must be at least 1, got {num_users}")
    half = area_side / 2.0
    rng = np.random.default_rng(seed)
    return rng.uniform(-half, half, size=(num_users, 2))


def evaluate_method(users, params: SystemParams, method: str, run_seed: int,
                    pso: PsoConfig) -> tuple[float, bool]:
    """Worst-user SNR and feasibility flag for one method on one drop."""
    if method == METHOD_PSO:
        result = run_pso(users, params, replace(pso, seed=run_seed))
        return result.best_min_snr, result.feasible
    if method == METHOD_FIXED_ARRAY:
        return baseline_min_snr(users, params, BaselineKind.FIXED_ARRAY), True
    if method == METHOD_COHERENT_BOUND:
        return baseline_min_snr(users, params, BaselineKind.COHERENT_UPPER_BOUND), True
    raise ValueError(f"unknown method: {method!r}")


def run_drop(config: ExperimentConfig, area_side: float, num_antennas: int,
             drop_index: int) -> list[ExperimentRecord]:
    """All method records for one user drop in one sweep cell.

    Methods are evaluated in alphabetical order. A method that raises is
    recorded with NaN SNR and rate and ``feasible=False`` instead of
    aborting the sweep.
    """
    drop_seed = derive_drop_seed(config.master_seed, area_side, drop_index)
    users = drop_users(config.num_users, area_side, drop_seed)
    params = config.make_params(area_side, num_antennas)
    run_seed = derive_run_seed(drop_seed, num_antennas)

    records = []
    for method in sorted(config.methods):
        started = time.perf_counter()
        try:
            min_snr, feasible = evaluate_method(users, params, method, run_seed, config.pso)
            rate = float(multicast_rate(min_snr))
        except Exception:
            min_snr, rate, feasible = math.nan, math.nan, False
        records.append(
            ExperimentRecord(
                drop_seed=drop_seed,
                area_side=area_side,
                num_antennas=num_antennas,
                method=method,
                min_snr=float(min_snr),
                rate=rate,
                feasible=bool(feasible),
                wall_time=time.perf_counter() - started,
            )
        )
    return records


def sweep_area(config: ExperimentConfig, n_workers: int = 1) -> list[ExperimentRecord]:
    """Run the full (area, antennas, drop, method) grid of the configuration.

    Records come back in canonical order: area sides and antenna counts in
    configuration order, drop indices ascending, methods alphabetical. Drops
    are distributed over ``n_workers`` processes; because every record is a
    pure function of the configuration, the output is identical for any
    worker count.
    """
    cells = [
        (area_side, num_antennas, drop)
        for area_side in config.l_values
        for num_antennas in config.m_values
        for drop in range(config.num_drops)
    ]
    if n_workers == 1:
        nested = [run_drop(config, *cell) for cell in cells]
    else:
        nested = Parallel(n_jobs=n_workers)(delayed(run_drop)(config, *cell) for cell in cells)
    return [record for drop_records in nested for record in drop_records]


def aggregate_mean_rates(records) -> dict:
    """Mean multicast rate keyed by (area_side, num_antennas, method)."""
    sums: dict = {}
    for rec in records:
        key = (rec.area_side, rec.num_antennas, rec.method)
        total, count = sums.get(key, (0.0, 0))
        sums[key] = (total + rec.rate, count + 1)
    return {key: total / count for key, (total, count) in sums.items()}


def write_records_csv(records, path) -> None:
    """Write experiment records with the fixed column set, one row per record."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RECORD_CSV_FIELDS)
        for rec in records:
            writer.writerow(
                [
                    rec.drop_seed,
                    repr(float(rec.area_side)),
                    rec.num_antennas,
                    rec.method,
                    repr(float(rec.min_snr)),
                    repr(float(rec.rate)),
                    "true" if rec.feasible else "false",
                    repr(float(rec.wall_time)),
                ]
            )


def read_records_csv(path) -> list[ExperimentRecord]:
    """Parse a CSV produced by :func:`write_records_csv`."""
    records = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != RECORD_CSV_FIELDS:
            raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
        for row in reader:
            records.append(
                ExperimentRecord(
                    drop_seed=int(row["drop_seed"]),
                    area_side=float(row["L"]),
                    num_antennas=int(row["M"]),
                    method=row["method"],
                    min_snr=float(row["min_snr_linear"]),
                    rate=float(row["rate_bps_hz"]),
                    feasible=row["feasible"] == "true",
                    wall_time=float(row["wall_time_s"]),
                )
            )
    return records


@dataclass(frozen=True)
class HeatmapRaster:
    """Normalised radiation map over the service square.

    ``gain`` has shape (len(y), len(x)) and peaks at exactly 1.0. When user
    positions were supplied, ``user_gains`` holds the normalised gain at
    each user location.
    """

    x: np.ndarray
    y: np.ndarray
    gain: np.ndarray
    layout: np.ndarray
    user_positions: np.ndarray | None = None
    user_gains: np.ndarray | None = None


def heatmap(layout, params: SystemParams, grid_step: float,
            users=None) -> HeatmapRaster:
    """Evaluate the normalised received gain of a layout over a ground raster."""
    layout = check_layout(layout, params)
    axis = uniform_axis(params.area_side, grid_step)
    grid_x, grid_y = np.meshgrid(axis, axis)
    points = np.column_stack([grid_x.ravel(), grid_y.ravel()])
    gains = channel_gain(points, layout, params)
    peak = float(gains.max())
    raster = (gains / peak).reshape(axis.size, axis.size)

    user_positions = None
    user_gains = None
    if users is not None:
        user_positions = check_users(users, params.area_side)
        user_gains = channel_gain(user_positions, layout, params) / peak
    return HeatmapRaster(
        x=axis,
        y=axis.copy(),
        gain=raster,
        layout=layout,
        user_positions=user_positions,
        user_gains=user_gains,
    )


def write_heatmap_csv(raster: HeatmapRaster, path) -> None:
    """Write a radiation map as (x, y, gain) rows, x varying fastest."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(HEATMAP_CSV_FIELDS)
        for iy, y in enumerate(raster.y):
            for ix, x in enumerate(raster.x):
                writer.writerow([repr(float(x)), repr(float(y)), repr(float(raster.gain[iy, ix]))])
