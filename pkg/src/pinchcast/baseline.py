"""Reference layouts and performance ceilings for comparison runs.

Two baselines bracket the optimiser. A fixed half-wavelength array pinned to
the feed end of the guide stands in for a conventional antenna array that
cannot adapt to user positions. A phase-aligned upper bound assumes every
antenna's contribution adds perfectly in phase at every user simultaneously,
which no real placement can achieve for more than one user in general; it
caps what any position optimiser could possibly reach.
"""

from __future__ import annotations

import enum

import numpy as np

from .channel import _snr_prefactor, multicast_snr, pairwise_distances
from .params import SystemParams, check_users


class BaselineKind(enum.Enum):
    """Which reference quantity to report."""

    FIXED_ARRAY = "fixed-array"
    COHERENT_UPPER_BOUND = "coherent-bound"


def fixed_array_layout(params: SystemParams) -> np.ndarray:
    """Antenna positions of the non-reconfigurable reference array.

    Antennas sit at the feed end of the guide with exactly the minimum
    spacing between neighbours: ``x_m = -area_side/2 + m * min_spacing``
    for m = 0..M-1.
    """
    if params.num_antennas * params.min_spacing > params.area_side:
        raise ValueError(
            f"{params.num_antennas} antennas at spacing {params.min_spacing} "
            f"do not fit on a guide of length {params.area_side}"
        )
    return params.feed_x + np.arange(params.num_antennas) * params.min_spacing


def coherent_bound_per_user(users, layout, params: SystemParams) -> np.ndarray:
    """Upper bound on each user's SNR if all antenna phases aligned at that user.

    By the triangle inequality ``|sum_m e^{j phi_m} / d_m| <= sum_m 1 / d_m``,
    so ``P * eta / (M * noise) * (sum_m 1/d_m)^2`` bounds the achievable SNR
    for any choice of phases, hence for any antenna placement with these
    distances.
    """
    users = check_users(users)
    d = pairwise_distances(users, np.asarray(layout, dtype=float), params.height)
    amplitude = (1.0 / d).sum(axis=-1)
    return _snr_prefactor(params) * amplitude**2


def baseline_min_snr(users, params: SystemParams, kind: BaselineKind) -> float:
    """Worst-user SNR of the requested baseline, both on the fixed array layout.

    The fixed-array value is the exact multicast SNR of
    :func:`fixed_array_layout`; the coherent bound evaluates
    :func:`coherent_bound_per_user` on the same layout and takes the minimum
    over users.
    """
    layout = fixed_array_layout(params)
    if kind is BaselineKind.FIXED_ARRAY:
        return multicast_snr(users, layout, params).value
    if kind is BaselineKind.COHERENT_UPPER_BOUND:
        return float(coherent_bound_per_user(users, layout, params).min())
    raise ValueError(f"unknown baseline kind: {kind!r}")
