"""Worst-user multicast simulation and placement search for pinched waveguide arrays.

A single waveguide carries a common multicast stream; small pinching
antennas placed along it radiate to users on the ground plane. The package
models the in-guide plus line-of-sight channel, optimises antenna positions
for the worst user with a penalised particle swarm, provides fixed-array
and phase-aligned-bound references plus a brute-force grid oracle, and runs
seeded Monte Carlo sweeps with CSV outputs. Scikit-learn style estimators
wrap the optimisers for use with standard tooling.
"""

from .baseline import (
    BaselineKind,
    baseline_min_snr,
    coherent_bound_per_user,
    fixed_array_layout,
)
from .channel import (
    MulticastSnr,
    channel_gain,
    freespace_vector,
    guide_wavelength,
    inwaveguide_vector,
    multicast_rate,
    multicast_snr,
    multicast_snr_batch,
    pairwise_distances,
    snr_per_user,
    snr_user,
    user_pa_distance,
)
from .config import ConfigError, load_config, parse_frequency, parse_length, parse_power
from .estimators import FixedArrayPlacement, GridSearchPlacement, SwarmPlacement
from .experiments import (
    ALL_METHODS,
    ExperimentConfig,
    ExperimentRecord,
    HeatmapRaster,
    aggregate_mean_rates,
    derive_drop_seed,
    derive_run_seed,
    drop_users,
    heatmap,
    read_records_csv,
    run_drop,
    sweep_area,
    write_heatmap_csv,
    write_records_csv,
)
from .oracle import GridSpec, grid_search, layout_grid
from .params import (
    SPEED_OF_LIGHT,
    SystemParams,
    check_layout,
    check_users,
    is_feasible_layout,
    min_pairwise_spacing,
    uniform_axis,
)
from .pso import (
    PsoConfig,
    PsoResult,
    SwarmState,
    clamp_positions,
    fitness,
    inertia_weight,
    init_swarm,
    particle_rngs,
    penalty_count,
    run_pso,
    update_position,
    update_velocity,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_METHODS",
    "BaselineKind",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentRecord",
    "FixedArrayPlacement",
    "GridSearchPlacement",
    "GridSpec",
    "HeatmapRaster",
    "MulticastSnr",
    "PsoConfig",
    "PsoResult",
    "SPEED_OF_LIGHT",
    "SwarmPlacement",
    "SwarmState",
    "SystemParams",
    "aggregate_mean_rates",
    "baseline_min_snr",
    "channel_gain",
    "check_layout",
    "check_users",
    "clamp_positions",
    "coherent_bound_per_user",
    "derive_drop_seed",
    "derive_run_seed",
    "drop_users",
    "fitness",
    "fixed_array_layout",
    "freespace_vector",
    "grid_search",
    "guide_wavelength",
    "heatmap",
    "inertia_weight",
    "init_swarm",
    "inwaveguide_vector",
    "is_feasible_layout",
    "layout_grid",
    "load_config",
    "min_pairwise_spacing",
    "multicast_rate",
    "multicast_snr",
    "multicast_snr_batch",
    "pairwise_distances",
    "parse_frequency",
    "parse_length",
    "parse_power",
    "particle_rngs",
    "penalty_count",
    "read_records_csv",
    "run_drop",
    "run_pso",
    "snr_per_user",
    "snr_user",
    "sweep_area",
    "uniform_axis",
    "update_position",
    "update_velocity",
    "user_pa_distance",
    "write_heatmap_csv",
    "write_records_csv",
]
