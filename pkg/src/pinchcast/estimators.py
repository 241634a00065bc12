"""Scikit-learn style estimators wrapping the placement optimisers.

Each estimator is fitted on an array ``X`` of shape (n_users, 2) holding
user ground coordinates. Fitting chooses an antenna layout for those users
and exposes it as ``layout_`` together with the achieved worst-user SNR
(``min_snr_``), the multicast rate (``rate_``), the index of the limiting
user (``worst_user_``) and a spacing feasibility flag (``feasible_``).
``predict(X)`` returns per-user linear SNR under the fitted layout and
``score(X)`` the multicast rate, so the estimators compose with standard
model-selection tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .baseline import coherent_bound_per_user, fixed_array_layout
from .channel import multicast_rate, snr_per_user
from .oracle import GridSpec, grid_search
from .params import SystemParams, check_users
from .pso import PsoConfig, run_pso


class _PlacementMixin:
    """Shared fit/predict plumbing; subclasses implement ``_fit_layout``."""

    def _system_params(self) -> SystemParams:
        return SystemParams(
            area_side=self.area_side,
            num_antennas=self.n_antennas,
            height=self.height,
            carrier_freq=self.carrier_freq,
            n_eff=self.n_eff,
            tx_power=self.tx_power,
            noise_power=self.noise_power,
            min_spacing=self.min_spacing,
        )

    def fit(self, X, y=None):
        """Choose an antenna layout for the users in `X` (shape (n_users, 2))."""
        params = self._system_params()
        users = check_users(X, params.area_side)
        self.params_ = params
        self.n_features_in_ = 2
        self._fit_layout(users, params)
        per_user = self._per_user_snr(users)
        self.worst_user_ = int(np.argmin(per_user))
        self.min_snr_ = float(per_user[self.worst_user_])
        self.rate_ = float(multicast_rate(self.min_snr_))
        return self

    def _per_user_snr(self, users) -> np.ndarray:
        return snr_per_user(users, self.layout_, self.params_)

    def predict(self, X) -> np.ndarray:
        """Per-user linear SNR under the fitted layout for users in `X`."""
        check_is_fitted(self, "layout_")
        return self._per_user_snr(check_users(X))

    def score(self, X, y=None) -> float:
        """Multicast rate (bits/s/Hz) the fitted layout delivers to users `X`."""
        check_is_fitted(self, "layout_")
        return float(multicast_rate(self._per_user_snr(check_users(X)).min()))


class SwarmPlacement(_PlacementMixin, BaseEstimator):
    """Antenna placement by penalised particle swarm search.

    Fitting runs the swarm optimiser on the users in ``X`` and keeps the
    best layout found. Besides the shared fitted attributes this estimator
    exposes ``fitness_history_`` (incumbent fitness per iteration) and the
    raw ``result_``. ``feasible_`` is False when the returned layout
    violates the minimum spacing, which the harness treats as a failed run.
    """

    def __init__(
        self,
        area_side=5.0,
        n_antennas=2,
        height=3.0,
        carrier_freq=28e9,
        n_eff=1.4,
        tx_power=1e-3,
        noise_power=1e-12,
        min_spacing=None,
        swarm_size=50,
        max_iters=1000,
        c1=1.5,
        c2=1.5,
        inertia_max=0.8,
        inertia_min=0.2,
        penalty=1000.0,
        velocity_init_span=None,
        seed=0,
    ):
        self.area_side = area_side
        self.n_antennas = n_antennas
        self.height = height
        self.carrier_freq = carrier_freq
        self.n_eff = n_eff
        self.tx_power = tx_power
        self.noise_power = noise_power
        self.min_spacing = min_spacing
        self.swarm_size = swarm_size
        self.max_iters = max_iters
        self.c1 = c1
        self.c2 = c2
        self.inertia_max = inertia_max
        self.inertia_min = inertia_min
        self.penalty = penalty
        self.velocity_init_span = velocity_init_span
        self.seed = seed

    def _fit_layout(self, users, params):
        config = PsoConfig(
            swarm_size=self.swarm_size,
            max_iters=self.max_iters,
            c1=self.c1,
            c2=self.c2,
            inertia_max=self.inertia_max,
            inertia_min=self.inertia_min,
            penalty=self.penalty,
            seed=self.seed,
            velocity_init_span=self.velocity_init_span,
        )
        result = run_pso(users, params, config)
        self.result_ = result
        self.layout_ = result.best_layout
        self.feasible_ = result.feasible
        self.fitness_history_ = result.fitness_history


class FixedArrayPlacement(_PlacementMixin, BaseEstimator):
    """Non-adaptive reference array pinned at the feed end of the guide.

    With ``coherent_bound=False`` the estimator reports the exact SNR of the
    fixed layout. With ``coherent_bound=True`` it reports the phase-aligned
    upper bound on the same layout instead, both in ``min_snr_`` and in
    ``predict``.
    """

    def __init__(
        self,
        area_side=5.0,
        n_antennas=2,
        height=3.0,
        carrier_freq=28e9,
        n_eff=1.4,
        tx_power=1e-3,
        noise_power=1e-12,
        min_spacing=None,
        coherent_bound=False,
    ):
        self.area_side = area_side
        self.n_antennas = n_antennas
        self.height = height
        self.carrier_freq = carrier_freq
        self.n_eff = n_eff
        self.tx_power = tx_power
        self.noise_power = noise_power
        self.min_spacing = min_spacing
        self.coherent_bound = coherent_bound

    def _fit_layout(self, users, params):
        self.layout_ = fixed_array_layout(params)
        self.feasible_ = True

    def _per_user_snr(self, users):
        if self.coherent_bound:
            return coherent_bound_per_user(users, self.layout_, self.params_)
        return snr_per_user(users, self.layout_, self.params_)


class GridSearchPlacement(_PlacementMixin, BaseEstimator):
    """Exhaustive placement on a uniform grid; exact but limited to 1 or 2 antennas."""

    def __init__(
        self,
        area_side=5.0,
        n_antennas=1,
        height=3.0,
        carrier_freq=28e9,
        n_eff=1.4,
        tx_power=1e-3,
        noise_power=1e-12,
        min_spacing=None,
        resolution=1e-3,
    ):
        self.area_side = area_side
        self.n_antennas = n_antennas
        self.height = height
        self.carrier_freq = carrier_freq
        self.n_eff = n_eff
        self.tx_power = tx_power
        self.noise_power = noise_power
        self.min_spacing = min_spacing
        self.resolution = resolution

    def _fit_layout(self, users, params):
        layout, value = grid_search(users, params, GridSpec(resolution=self.resolution))
        self.layout_ = layout
        self.grid_optimum_ = value
        self.feasible_ = True
