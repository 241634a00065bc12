"""Brute-force grid search used as ground truth for small instances.

Exhaustive evaluation of the worst-user SNR on a uniform grid of antenna
positions. Supported for one or two antennas only; beyond that the number
of grid combinations explodes and better tooling than brute force is
needed. Results serve as an optimiser-independent reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import multicast_snr_batch
from .params import SystemParams, check_users, uniform_axis


@dataclass(frozen=True)
class GridSpec:
    """Grid resolution in metres and the largest array size to accept."""

    resolution: float
    max_antennas: int = 2

    def __post_init__(self):
        if not self.resolution > 0:
            raise ValueError(f"resolution must be positive, got {self.resolution}")
        if self.max_antennas not in (1, 2):
            raise ValueError(f"grid search supports 1 or 2 antennas, got {self.max_antennas}")


def layout_grid(area_side: float, resolution: float) -> np.ndarray:
    """Candidate antenna coordinates: uniform grid including both guide ends."""
    return uniform_axis(area_side, resolution)


def grid_search(users, params: SystemParams, grid: GridSpec) -> tuple[np.ndarray, float]:
    """Exhaustively maximise the worst-user SNR over grid layouts.

    For one antenna every grid point is scored; for two antennas every
    ordered pair ``x1 < x2`` with ``x2 - x1 >= min_spacing`` is scored
    (layouts are permutation invariant, so ordered pairs cover everything).
    Returns the best layout and its worst-user SNR. Exact ties are resolved
    toward the lexicographically smallest layout, which makes the result
    independent of evaluation order.

    The grid can only realise spacings that are multiples of the step, so
    with a resolution coarser than ``min_spacing`` the constraint is simply
    inactive between distinct points and the returned optimum is a
    conservative (never optimistic) reference for continuum optimisers.
    """
    users = check_users(users, params.area_side)
    m = params.num_antennas
    if m > grid.max_antennas or m > 2:
        raise ValueError(f"grid search supports at most {min(grid.max_antennas, 2)} antennas, got {m}")
    points = layout_grid(params.area_side, grid.resolution)

    if m == 1:
        values = multicast_snr_batch(users, points[:, None], params)
        best = int(np.argmax(values))  # argmax returns the first, i.e. smallest x, on ties
        return points[best : best + 1].copy(), float(values[best])

    best_layout = None
    best_value = -np.inf
    for i, x1 in enumerate(points):
        partners = points[i + 1 :]
        partners = partners[partners - x1 >= params.min_spacing]
        if partners.size == 0:
            break  # points ascend, so no later x1 has a partner either
        layouts = np.column_stack([np.full(partners.size, x1), partners])
        values = multicast_snr_batch(users, layouts, params)
        j = int(np.argmax(values))
        if values[j] > best_value:
            best_value = float(values[j])
            best_layout = layouts[j].copy()
    if best_layout is None:
        raise ValueError(
            "no grid pair satisfies the spacing constraint; "
            "the guide is too short for two antennas at this spacing"
        )
    return best_layout, best_value
