"""Generators of covariance matrices with a prescribed saturation pattern.

A conforming fixture is ``T (sigma_sat (+) sigma_rest) T^T`` where ``sigma_sat`` is a
one-mode pure covariance (determinant ``hbar^2/4``) placed at mode ``j``,
``sigma_rest`` is a valid mixed covariance on the other modes and ``T`` is a
symplectic map acting only on those other modes.
"""

from __future__ import annotations

import numpy as np

from .states import GaussianMixedState
from .symplectic import direct_sum, random_symplectic


def _place_mode(n: int, j: int, one: np.ndarray, rest: np.ndarray) -> np.ndarray:
    """Direct sum with the one-mode block at 0-based position ``j``."""
    full = direct_sum(one, rest) if n > 1 else np.asarray(one, dtype=float)
    order = list(range(1, j + 1)) + [0] + list(range(j + 1, n))
    idx = np.r_[order, np.array(order) + n]
    return full[np.ix_(idx, idx)]


def thermal_like(nu, hbar: float = 1.0, seed=None, n_factors: int = 4) -> np.ndarray:
    """``T diag(nu, nu) T^T`` with random symplectic ``T``: a covariance with symplectic spectrum ``nu``."""
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    T = random_symplectic(len(nu), seed, n_factors)
    return T @ np.diag(np.concatenate([nu, nu])) @ T.T


def saturated_fixture(n: int, j: int, seed=None, hbar: float = 1.0) -> GaussianMixedState:
    """Quantum covariance with the uncertainty inequality of mode ``j`` (0-based) saturated."""
    rng = np.random.default_rng(seed)
    sat = thermal_like([0.5 * hbar], hbar, rng, n_factors=3)
    if n == 1:
        return GaussianMixedState(sat, hbar=hbar)
    nu = 0.5 * hbar * rng.uniform(1.0, 4.0, size=n - 1)
    rest = thermal_like(nu, hbar, rng, n_factors=4)
    return GaussianMixedState(_place_mode(n, j, sat, rest), hbar=hbar)


def slack_fixture(n: int, seed=None, hbar: float = 1.0, lambda1: float = 0.5) -> GaussianMixedState:
    """Quantum covariance whose ellipsoid matrix ``M`` has largest symplectic eigenvalue ``lambda1 < 1``."""
    rng = np.random.default_rng(seed)
    lam = np.concatenate([[lambda1], lambda1 * rng.uniform(0.3, 1.0, size=n - 1)])
    nu = 0.5 * hbar / lam
    return GaussianMixedState(thermal_like(nu, hbar, rng), hbar=hbar)


def diagonal_fixture(hbar: float = 1.0) -> GaussianMixedState:
    """Two-mode ``diag(hbar/2, hbar, hbar/2, 2 hbar)``: mode 1 saturated, mode 2 mixed."""
    return GaussianMixedState(np.diag([0.5, 1.0, 0.5, 2.0]) * hbar, hbar=hbar)
