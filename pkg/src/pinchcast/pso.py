"""Particle swarm search over antenna positions with a spacing penalty.

The decision variable is the vector of M antenna x positions on the guide.
Fitness is the worst-user SNR minus a large penalty per antenna pair closer
than the minimum spacing, so infeasible layouts are tolerated early in the
search but never survive as incumbents once any feasible layout of similar
quality appears.

Update semantics follow the classic global-best swarm: particles are swept
in index order and the global best is refreshed immediately, so particle
i+1 already chases an improvement found by particle i within the same
iteration. Personal and global incumbents move only on strict improvement.

For speed the sweep is executed in speculative batches: velocities,
positions and fitnesses for all remaining particles are computed with one
vectorised pass under the current global best, then committed only up to
the first particle that improves the global best; the rest of the sweep is
recomputed under the new incumbent. Randomness comes from one independent
stream per particle, so results are bit-identical to the plain
particle-by-particle loop regardless of batching.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .channel import multicast_rate, multicast_snr, multicast_snr_batch
from .params import SystemParams, check_users, is_feasible_layout


@dataclass(frozen=True)
class PsoConfig:
    """Swarm hyperparameters.

    ``velocity_init_span`` bounds the magnitude of the uniform initial
    velocities; when None it defaults to a tenth of the area side. The
    inertia weight decays linearly from ``inertia_max`` to ``inertia_min``
    over ``max_iters`` iterations.
    """

    swarm_size: int = 50
    max_iters: int = 1000
    c1: float = 1.5
    c2: float = 1.5
    inertia_max: float = 0.8
    inertia_min: float = 0.2
    penalty: float = 1000.0
    seed: int = 0
    velocity_init_span: float | None = None

    def __post_init__(self):
        if self.swarm_size < 1:
            raise ValueError(f"swarm_size must be at least 1, got {self.swarm_size}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("acceleration coefficients must be non-negative")
        if self.inertia_max < self.inertia_min:
            raise ValueError("inertia_max must be at least inertia_min")
        if self.penalty < 0:
            raise ValueError(f"penalty must be non-negative, got {self.penalty}")
        if self.velocity_init_span is not None and not self.velocity_init_span > 0:
            raise ValueError("velocity_init_span must be positive when given")


@dataclass
class SwarmState:
    """Struct-of-arrays snapshot of a swarm.

    Positions and velocities have shape (swarm_size, num_antennas); the
    incumbent arrays track the best point each particle has visited and the
    best point any particle has visited. ``rngs`` holds one independent
    generator per particle; :func:`run_pso` consumes them in particle order.
    """

    positions: np.ndarray
    velocities: np.ndarray
    best_positions: np.ndarray
    best_fitness: np.ndarray
    global_best_position: np.ndarray
    global_best_fitness: float
    iteration: int = 0
    rngs: Sequence[np.random.Generator] = field(default_factory=tuple)


@dataclass(frozen=True)
class PsoResult:
    """Outcome of one swarm run.

    ``best_layout`` is sorted ascending. ``best_min_snr`` is the worst-user
    SNR of that layout recomputed without the penalty term, so it is a true
    physical value even if the run ends on an infeasible incumbent (in which
    case ``feasible`` is False). ``fitness_history`` has one entry per
    iteration and is non-decreasing.
    """

    best_layout: np.ndarray
    best_min_snr: float
    best_rate: float
    feasible: bool
    fitness_history: np.ndarray


def particle_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Independent per-particle random streams spawned from one seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]


def inertia_weight(iteration: int, config: PsoConfig) -> float:
    """Linearly decaying inertia for 1-based `iteration` in [1, max_iters]."""
    if iteration < 0 or iteration > config.max_iters:
        raise ValueError(f"iteration must lie in [0, {config.max_iters}], got {iteration}")
    return config.inertia_max - (config.inertia_max - config.inertia_min) * (
        iteration / config.max_iters
    )


def update_velocity(velocity, position, best_position, global_best, inertia, c1, c2, alpha1, alpha2):
    """One velocity update; `alpha1`/`alpha2` are the uniform random factors."""
    return (
        inertia * velocity
        + c1 * alpha1 * (best_position - position)
        + c2 * alpha2 * (global_best - position)
    )


def clamp_positions(positions, area_side: float) -> np.ndarray:
    """Project positions back onto the guide interval [-area_side/2, area_side/2]."""
    half = area_side / 2.0
    return np.clip(positions, -half, half)


def update_position(position, velocity, area_side: float) -> np.ndarray:
    """Move by one velocity step and clamp to the guide."""
    return clamp_positions(position + velocity, area_side)


def penalty_count(layout, min_spacing: float):
    """Number of unordered antenna pairs strictly closer than `min_spacing`.

    Accepts a single layout (M,) or a batch (..., M); returns an integer
    count per layout.
    """
    x = np.asarray(layout, dtype=float)
    m = x.shape[-1]
    if m < 2:
        return np.zeros(x.shape[:-1], dtype=np.int64) if x.ndim > 1 else 0
    iu, ju = np.triu_indices(m, k=1)
    gaps = np.abs(x[..., :, None] - x[..., None, :])[..., iu, ju]
    count = (gaps < min_spacing).sum(axis=-1)
    return count if x.ndim > 1 else int(count)


def fitness(layout, users, params: SystemParams, penalty: float) -> float:
    """Penalised objective: worst-user SNR minus `penalty` per violating pair."""
    value = multicast_snr(users, layout, params).value
    return value - penalty * penalty_count(layout, params.min_spacing)


def _fitness_batch(layouts, users, params: SystemParams, penalty: float) -> np.ndarray:
    """Vectorised :func:`fitness` over a batch of layouts, shape (..., M)."""
    values = multicast_snr_batch(users, layouts, params)
    return values - penalty * penalty_count(layouts, params.min_spacing)


def init_swarm(users, params: SystemParams, config: PsoConfig) -> SwarmState:
    """Draw initial positions and velocities and score the swarm.

    Each particle draws its initial position uniformly over the guide and
    its initial velocity uniformly over ``[-span, span]`` from its own
    stream, in that order; iteration draws follow on the same streams.
    """
    users = check_users(users, params.area_side)
    half = params.area_side / 2.0
    span = config.velocity_init_span
    if span is None:
        span = params.area_side / 10.0
    rngs = particle_rngs(config.seed, config.swarm_size)

    m = params.num_antennas
    positions = np.empty((config.swarm_size, m))
    velocities = np.empty((config.swarm_size, m))
    for i, rng in enumerate(rngs):
        positions[i] = rng.uniform(-half, half, m)
        velocities[i] = rng.uniform(-span, span, m)

    fit = _fitness_batch(positions, users, params, config.penalty)
    leader = int(np.argmax(fit))
    return SwarmState(
        positions=positions,
        velocities=velocities,
        best_positions=positions.copy(),
        best_fitness=fit.copy(),
        global_best_position=positions[leader].copy(),
        global_best_fitness=float(fit[leader]),
        iteration=0,
        rngs=rngs,
    )


def run_pso(users, params: SystemParams, config: PsoConfig | None = None) -> PsoResult:
    """Optimise antenna positions for the worst user of one scenario.

    Returns the best layout found (sorted ascending), its true worst-user
    SNR and rate, a feasibility flag for the spacing constraint, and the
    per-iteration incumbent fitness trace.
    """
    if config is None:
        config = PsoConfig()
    users = check_users(users, params.area_side)
    state = init_swarm(users, params, config)
    n, m = state.positions.shape
    iters = config.max_iters

    # Pre-draw every per-iteration random factor. Each particle's stream
    # emits, after its two init draws, the flattened (iteration, alpha1 |
    # alpha2, antenna) block below, which is exactly the order the plain
    # loop would consume them in.
    draws = np.empty((n, iters, 2, m))
    for i, rng in enumerate(state.rngs):
        draws[i] = rng.random((iters, 2, m))

    positions = state.positions
    velocities = state.velocities
    best_positions = state.best_positions
    best_fitness = state.best_fitness
    global_best = state.global_best_position
    global_fitness = state.global_best_fitness
    history = np.empty(iters)

    for t in range(1, iters + 1):
        w = inertia_weight(t, config)
        alpha1 = draws[:, t - 1, 0, :]
        alpha2 = draws[:, t - 1, 1, :]
        start = 0
        while start < n:
            # Speculative pass: advance every remaining particle under the
            # current incumbent, then keep results only up to (and
            # including) the first one that beats it.
            v_new = update_velocity(
                velocities[start:], positions[start:], best_positions[start:],
                global_best, w, config.c1, config.c2, alpha1[start:], alpha2[start:],
            )
            x_new = update_position(positions[start:], v_new, params.area_side)
            f_new = _fitness_batch(x_new, users, params, config.penalty)

            better = np.nonzero(f_new > global_fitness)[0]
            take = int(better[0]) + 1 if better.size else f_new.size
            stop = start + take
            velocities[start:stop] = v_new[:take]
            positions[start:stop] = x_new[:take]

            improved = np.nonzero(f_new[:take] > best_fitness[start:stop])[0]
            rows = start + improved
            best_positions[rows] = x_new[improved]
            best_fitness[rows] = f_new[improved]
            if better.size:
                global_best = x_new[take - 1].copy()
                global_fitness = float(f_new[take - 1])
            start = stop
        history[t - 1] = global_fitness

    state.iteration = iters
    state.global_best_position = global_best
    state.global_best_fitness = global_fitness

    layout = np.sort(global_best)
    value = multicast_snr(users, layout, params).value
    return PsoResult(
        best_layout=layout,
        best_min_snr=value,
        best_rate=float(multicast_rate(value)),
        feasible=is_feasible_layout(layout, params),
        fitness_history=history,
    )
