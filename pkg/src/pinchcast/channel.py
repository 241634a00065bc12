"""Line-of-sight channel model and multicast SNR for a pinched waveguide array.

Signal path
-----------
The transmit signal enters the waveguide at the feed (x = -area_side/2),
travels inside the guide to each pinching antenna, and radiates from there
to the user over a direct line-of-sight path. Antenna m at position ``x_m``
therefore contributes, at a user located at ``(u_x, u_y)`` on the ground:

* amplitude ``sqrt(eta) / d_m`` with ``d_m = sqrt((u_x - x_m)^2 + u_y^2 + H^2)``
  and ``sqrt(eta) = wavelength / (4 pi)`` the free-space gain at 1 m,
* phase ``-(2 pi / wavelength) d_m`` accumulated over the air, plus
  ``-(2 pi / guide_wavelength) (x_m + area_side/2)`` accumulated inside
  the guide between the feed and the pinch point.

The per-user SNR with total power P split over M antennas is

    snr = P / (M * noise) * eta * | sum_m exp(j phase_m) / d_m |^2 .

All users receive the same multicast stream, so the system metric is the
worst SNR across users; the common rate is ``log2(1 + min_k snr_k)``.

Two equivalent evaluation routes are exposed. :func:`snr_per_user` works on
the combined phase directly and is the fast production path (it broadcasts
over batches of candidate layouts). :func:`freespace_vector` and
:func:`inwaveguide_vector` build the two channel factors explicitly; their
inner product feeds :func:`snr_user` style computations in tests and keeps
the model honest.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .params import SystemParams, check_layout, check_users

TWO_PI = 2.0 * math.pi


def guide_wavelength(wavelength: float, n_eff: float) -> float:
    """Wavelength inside the guide: free-space wavelength over the effective index."""
    if not wavelength > 0 or not n_eff > 0:
        raise ValueError("wavelength and n_eff must be positive")
    return wavelength / n_eff


def user_pa_distance(user, antenna_x: float, height: float) -> float:
    """Euclidean distance from a ground user to one antenna on the guide.

    `user` is the pair ``(u_x, u_y)``; the antenna sits at
    ``(antenna_x, 0, height)``.
    """
    ux, uy = float(user[0]), float(user[1])
    return math.sqrt((ux - antenna_x) ** 2 + uy**2 + height**2)


def pairwise_distances(users, layout, height: float) -> np.ndarray:
    """Distances between K users and M antennas as a (K, M) array.

    Accepts a batch of layouts with shape (..., M), in which case the result
    has shape (..., K, M).
    """
    users = np.asarray(users, dtype=float)
    x = np.asarray(layout, dtype=float)
    dx = users[:, 0][:, None] - x[..., None, :]
    vertical = users[:, 1] ** 2 + height**2
    return np.sqrt(dx**2 + vertical[:, None])


def inwaveguide_vector(layout, area_side: float, guide_wl: float) -> np.ndarray:
    """Unit-modulus phase factors accrued inside the guide, one per antenna.

    Entry m is ``exp(-j (2 pi / guide_wl) (x_m + area_side/2))``: the feed
    sits at ``-area_side/2``, so the argument of the exponential is the
    distance the signal travels inside the guide before radiating.
    """
    x = np.asarray(layout, dtype=float)
    travel = x + area_side / 2.0
    return np.exp(-1j * (TWO_PI / guide_wl) * travel)


def freespace_vector(user, layout, params: SystemParams) -> np.ndarray:
    """Line-of-sight channel coefficients from each antenna to one user.

    Entry m is ``sqrt(eta) / d_m * exp(-j (2 pi / wavelength) d_m)`` with
    ``d_m`` the user-to-antenna distance. The inner product of this vector
    with :func:`inwaveguide_vector` is the effective complex channel.
    """
    x = check_layout(layout, params)
    d = pairwise_distances(np.asarray(user, dtype=float).reshape(1, 2), x, params.height)[0]
    if np.any(d == 0.0):
        raise ValueError("user coincides with an antenna; distance would be zero")
    return params.amplitude_root / d * np.exp(-1j * (TWO_PI / params.wavelength) * d)


def _path_sum(users: np.ndarray, layouts: np.ndarray, params: SystemParams) -> np.ndarray:
    """Coherent sum over antennas of ``exp(j phase) / distance`` per user.

    `layouts` may be a single (M,) vector or any batch (..., M); the result
    is complex with shape ``layouts.shape[:-1] + (K,)``. This is the hot
    path shared by every SNR routine, so it stays free of validation.
    """
    x = np.asarray(layouts, dtype=float)
    d = pairwise_distances(users, x, params.height)
    phase = -(TWO_PI / params.wavelength) * d - (TWO_PI / params.guide_wavelength) * (
        x[..., None, :] + params.area_side / 2.0
    )
    real = (np.cos(phase) / d).sum(axis=-1)
    imag = (np.sin(phase) / d).sum(axis=-1)
    return real + 1j * imag


def _snr_prefactor(params: SystemParams) -> float:
    """Common scale ``P * eta / (M * noise)`` applied to the squared path sum."""
    return (
        params.tx_power
        * params.amplitude_root**2
        / (params.num_antennas * params.noise_power)
    )


def channel_gain(users, layout, params: SystemParams) -> np.ndarray:
    """Received power gain ``eta |sum_m exp(j phase_m)/d_m|^2`` per user.

    This is the SNR without the ``P / (M * noise)`` link-budget scale, useful
    for radiation maps. Broadcasts over layout batches like :func:`snr_per_user`.
    """
    users = np.asarray(users, dtype=float)
    s = _path_sum(users, np.asarray(layout, dtype=float), params)
    return params.amplitude_root**2 * (s.real**2 + s.imag**2)


def snr_per_user(users, layout, params: SystemParams) -> np.ndarray:
    """Linear SNR of every user for one antenna layout, shape (K,)."""
    users = check_users(users)
    x = check_layout(layout, params)
    s = _path_sum(users, x, params)
    return _snr_prefactor(params) * (s.real**2 + s.imag**2)


def snr_user(user, layout, params: SystemParams) -> float:
    """Linear SNR of a single user at ground position ``(u_x, u_y)``."""
    return float(snr_per_user(np.asarray(user, dtype=float).reshape(1, 2), layout, params)[0])


class MulticastSnr(NamedTuple):
    """Worst-user SNR together with the index of the user attaining it."""

    value: float
    worst_user: int


def multicast_snr(users, layout, params: SystemParams) -> MulticastSnr:
    """Multicast SNR: the minimum per-user SNR, with the limiting user index."""
    per_user = snr_per_user(users, layout, params)
    worst = int(np.argmin(per_user))
    return MulticastSnr(float(per_user[worst]), worst)


def multicast_snr_batch(users, layouts, params: SystemParams) -> np.ndarray:
    """Worst-user SNR for a batch of layouts with shape (..., M).

    Returns an array of shape ``layouts.shape[:-1]``. Skips per-element
    validation; callers are expected to pass clean arrays (optimizer
    internals, grid sweeps).
    """
    users = np.asarray(users, dtype=float)
    x = np.asarray(layouts, dtype=float)
    if x.shape[-1] != params.num_antennas:
        raise ValueError(
            f"layout batch has {x.shape[-1]} positions per row, expected {params.num_antennas}"
        )
    s = _path_sum(users, x, params)
    return (_snr_prefactor(params) * (s.real**2 + s.imag**2)).min(axis=-1)


def multicast_rate(snr) -> float | np.ndarray:
    """Common rate ``log2(1 + snr)`` in bits/s/Hz supported by every user."""
    snr = np.asarray(snr, dtype=float)
    rate = np.log2(1.0 + snr)
    return float(rate) if rate.ndim == 0 else rate
