"""System parameters and input validation for the waveguide multicast model.

The geometry is a square service area of side ``area_side`` centred on the
origin. A single dielectric waveguide runs along the x axis at height
``height`` above the ground plane, fed from its left end at
``x = -area_side / 2``. Pinching antennas are small radiating elements that
can be placed anywhere along the guide; users lie on the ground plane inside
the square. All lengths are metres and all powers are watts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0
"""Propagation speed used for wavelength conversions, in m/s."""


@dataclass(frozen=True)
class SystemParams:
    """Physical and link-budget description of one deployment.

    Parameters
    ----------
    area_side : float
        Side length of the square service area, metres.
    num_antennas : int
        Number of pinching antennas on the waveguide.
    height : float
        Height of the waveguide above the user plane, metres.
    carrier_freq : float
        Carrier frequency in Hz.
    n_eff : float
        Effective refractive index of the waveguide. The guided wavelength
        is the free-space wavelength divided by this factor.
    tx_power : float
        Total transmit power in watts, split evenly across antennas.
    noise_power : float
        Receiver noise power in watts.
    min_spacing : float, optional
        Minimum allowed distance between any two antennas, metres.
        Defaults to half a free-space wavelength, which keeps mutual
        coupling between neighbouring elements negligible.
    lightspeed : float
        Propagation speed used for the wavelength, m/s.
    """

    area_side: float
    num_antennas: int
    height: float = 3.0
    carrier_freq: float = 28e9
    n_eff: float = 1.4
    tx_power: float = 1e-3
    noise_power: float = 1e-12
    min_spacing: float | None = None
    lightspeed: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not self.area_side > 0:
            raise ValueError(f"area_side must be positive, got {self.area_side}")
        if int(self.num_antennas) != self.num_antennas or self.num_antennas < 1:
            raise ValueError(f"num_antennas must be a positive integer, got {self.num_antennas}")
        object.__setattr__(self, "num_antennas", int(self.num_antennas))
        for name in ("height", "carrier_freq", "n_eff", "tx_power", "noise_power", "lightspeed"):
            value = getattr(self, name)
            if not value > 0 or not math.isfinite(value):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        if self.min_spacing is None:
            object.__setattr__(self, "min_spacing", self.wavelength / 2.0)
        if not self.min_spacing > 0:
            raise ValueError(f"min_spacing must be positive, got {self.min_spacing}")

    @property
    def wavelength(self) -> float:
        """Free-space carrier wavelength in metres."""
        return self.lightspeed / self.carrier_freq

    @property
    def guide_wavelength(self) -> float:
        """Wavelength of the signal while travelling inside the guide."""
        return self.wavelength / self.n_eff

    @property
    def amplitude_root(self) -> float:
        """Square root of the free-space channel gain at 1 m, ``wavelength / (4 pi)``."""
        return self.wavelength / (4.0 * math.pi)

    @property
    def feed_x(self) -> float:
        """x coordinate of the waveguide feed point."""
        return -self.area_side / 2.0


def check_users(users, area_side: float | None = None) -> np.ndarray:
    """Validate an array of user ground positions.

    `users` must be convertible to a float array of shape (K, 2) with K >= 1
    and finite entries. When `area_side` is given, both coordinates must lie
    inside the closed square [-area_side/2, area_side/2]^2.

    Returns the validated positions as a fresh float64 array.
    """
    arr = np.asarray(users, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
        raise ValueError(f"users must have shape (K, 2) with K >= 1, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("user coordinates must be finite")
    if area_side is not None:
        half = area_side / 2.0
        if np.any(np.abs(arr) > half):
            raise ValueError(f"user coordinates must lie within [-{half}, {half}] on both axes")
    return arr.copy()


def check_layout(layout, params: SystemParams | None = None) -> np.ndarray:
    """Validate a vector of antenna x positions.

    `layout` must be a finite one-dimensional float vector. When `params`
    is given, its length must equal ``params.num_antennas`` and every entry
    must lie in the closed interval [-area_side/2, area_side/2].

    Returns the validated layout as a fresh float64 array.
    """
    arr = np.asarray(layout, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"layout must be a one-dimensional vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("antenna positions must be finite")
    if params is not None:
        if arr.size != params.num_antennas:
            raise ValueError(
                f"layout has {arr.size} positions but params.num_antennas is {params.num_antennas}"
            )
        half = params.area_side / 2.0
        if np.any(np.abs(arr) > half):
            raise ValueError(f"antenna positions must lie within [-{half}, {half}]")
    return arr.copy()


def min_pairwise_spacing(layout) -> float:
    """Smallest distance between any two antennas; ``inf`` for a single antenna."""
    x = np.sort(np.asarray(layout, dtype=float))
    if x.size < 2:
        return math.inf
    return float(np.diff(x).min())


def is_feasible_layout(layout, params: SystemParams, tol: float = 1e-9) -> bool:
    """Whether a layout respects the spacing constraint and stays on the guide.

    A layout is feasible when every antenna lies in the closed interval
    [-area_side/2, area_side/2] and all pairwise spacings are at least
    ``params.min_spacing - tol``. The small tolerance absorbs round-off from
    optimizers that push antennas to exactly the minimum spacing.
    """
    x = np.asarray(layout, dtype=float)
    if x.ndim != 1 or x.size != params.num_antennas or not np.all(np.isfinite(x)):
        return False
    half = params.area_side / 2.0
    if np.any(np.abs(x) > half):
        return False
    return min_pairwise_spacing(x) >= params.min_spacing - tol


def uniform_axis(area_side: float, step: float) -> np.ndarray:
    """Evenly spaced coordinates spanning [-area_side/2, area_side/2].

    The number of intervals is ``round(area_side / step)``, so both endpoints
    are always included and the effective step is the closest value to `step`
    that divides the span evenly.
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    if not area_side > 0:
        raise ValueError(f"area_side must be positive, got {area_side}")
    n_intervals = max(int(round(area_side / step)), 1)
    half = area_side / 2.0
    return np.linspace(-half, half, n_intervals + 1)
