r"""Mixed and pure Gaussian states.

A mixed Gaussian state is stored through its mean vector and covariance matrix
:math:`\Sigma`; a pure Gaussian through the pair ``(X, Y)`` of its wavefunction

.. math::

    \psi_{X,Y}(x) = (\pi\hbar)^{-n/4} (\det X)^{1/4} e^{-x^T (X + iY) x / 2\hbar},

whose Wigner function is :math:`(\pi\hbar)^{-n} e^{-z^T G z/\hbar}` with

.. math::

    G = \begin{pmatrix} X + Y X^{-1} Y & Y X^{-1} \\ X^{-1} Y & X^{-1} \end{pmatrix}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import DimensionError, DomainError, NotSPDError, NumericalFailure
from .symplectic import (
    TOL_SYMP,
    _check_spd,
    check_symmetric,
    is_symplectic,
    mode_indices,
    num_modes,
    spd_sqrt,
    standard_form,
    symplectic_capacity,
    symplectic_spectrum,
)

TOL_SAT = 1e-8
TOL_QUANTUM = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _mean_or_zeros(mean, n: int) -> np.ndarray:
    if mean is None:
        return _frozen(np.zeros(2 * n))
    mean = np.asarray(mean, dtype=float).ravel()
    if mean.shape != (2 * n,):
        raise DimensionError(f"mean must have length {2 * n}, got {mean.shape[0]}")
    return _frozen(mean)


@dataclass(frozen=True)
class GaussianMixedState:
    """Gaussian state given by its covariance matrix ``sigma`` and ``mean``.

    ``sigma`` uses the ``(x_1..x_n, p_1..p_n)`` layout, so its blocks are
    ``Delta(X, X)``, ``Delta(X, P)`` and ``Delta(P, P)``.
    """

    sigma: np.ndarray
    mean: Optional[np.ndarray] = None
    hbar: float = 1.0

    def __post_init__(self):
        sigma = check_symmetric(self.sigma)
        n = num_modes(sigma)
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")
        object.__setattr__(self, "sigma", _frozen(sigma))
        object.__setattr__(self, "mean", _mean_or_zeros(self.mean, n))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.sigma.shape[0] // 2

    @property
    def xx(self) -> np.ndarray:
        return self.sigma[: self.n, : self.n]

    @property
    def xp(self) -> np.ndarray:
        return self.sigma[: self.n, self.n :]

    @property
    def pp(self) -> np.ndarray:
        return self.sigma[self.n :, self.n :]

    def mode_block(self, j: int) -> np.ndarray:
        """2x2 covariance block of ``(x_j, p_j)``, ``j`` 0-based."""
        idx = mode_indices(self.n, j)
        return self.sigma[np.ix_(idx, idx)].copy()

    @property
    def M(self) -> np.ndarray:
        """Matrix ``(hbar/2) sigma^{-1}`` of the covariance ellipsoid ``z^T M z <= hbar``."""
        _check_spd(self.sigma)
        M = 0.5 * self.hbar * np.linalg.inv(self.sigma)
        return 0.5 * (M + M.T)


@dataclass(frozen=True)
class PureGaussian:
    """Pure Gaussian ``psi_{X,Y}`` translated to ``mean``."""

    X: np.ndarray
    Y: Optional[np.ndarray] = None
    mean: Optional[np.ndarray] = None
    hbar: float = 1.0

    def __post_init__(self):
        X = check_symmetric(np.atleast_2d(self.X))
        n = X.shape[0]
        Y = np.zeros((n, n)) if self.Y is None else check_symmetric(np.atleast_2d(self.Y))
        if Y.shape != X.shape:
            raise DimensionError("X and Y must have the same shape")
        if np.linalg.eigvalsh(X)[0] <= 0:
            raise NotSPDError("X must be positive definite")
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "Y", _frozen(Y))
        object.__setattr__(self, "mean", _mean_or_zeros(self.mean, n))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True)
class WignerGaussian:
    """Gaussian Wigner function ``(pi hbar)^{-n} exp(-(z - mean)^T G (z - mean) / hbar)``."""

    G: np.ndarray
    mean: Optional[np.ndarray] = None
    hbar: float = 1.0

    def __post_init__(self):
        G = check_symmetric(self.G)
        object.__setattr__(self, "G", _frozen(G))
        object.__setattr__(self, "mean", _mean_or_zeros(self.mean, num_modes(G)))
        object.__setattr__(self, "hbar", float(self.hbar))


@dataclass(frozen=True)
class RSReport:
    """Per-mode Robertson-Schroedinger inequality bookkeeping.

    ``lhs[j] = Var(x_j) Var(p_j)``, ``rhs[j] = Cov(x_j, p_j)^2 + hbar^2/4``.
    """

    lhs: np.ndarray
    rhs: np.ndarray
    tol: float = TOL_SAT
    slack: np.ndarray = field(init=False)
    saturated: np.ndarray = field(init=False)

    def __post_init__(self):
        slack = self.lhs - self.rhs
        object.__setattr__(self, "slack", slack)
        object.__setattr__(self, "saturated", np.abs(slack) <= self.tol * self.rhs)

    @property
    def saturated_indices(self) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.saturated)]

    @property
    def partially_saturated(self) -> bool:
        """At least one, but not all, inequalities are equalities."""
        k = int(np.count_nonzero(self.saturated))
        return 0 < k < len(self.saturated)

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs.tolist(),
            "rhs": self.rhs.tolist(),
            "slack": self.slack.tolist(),
            "saturated": self.saturated.tolist(),
            "partially_saturated": self.partially_saturated,
            "tol": self.tol,
        }


def rs_report(rho: GaussianMixedState, tol: float = TOL_SAT) -> RSReport:
    """Evaluate the uncertainty inequality of every conjugate pair ``(x_j, p_j)``."""
    var_x = np.diag(rho.xx)
    var_p = np.diag(rho.pp)
    cov = np.diag(rho.xp)
    return RSReport(lhs=var_x * var_p, rhs=cov**2 + 0.25 * rho.hbar**2, tol=tol)


def quantum_condition(rho: GaussianMixedState, tol: float = TOL_QUANTUM) -> bool:
    """``sigma + (i hbar/2) J`` is positive semidefinite up to ``tol * ||sigma||``."""
    return quantum_margin(rho) >= -tol * np.linalg.norm(rho.sigma, 2)


def quantum_margin(rho: GaussianMixedState) -> float:
    """Smallest eigenvalue of the Hermitian matrix ``sigma + (i hbar/2) J``."""
    H = rho.sigma + 0.5j * rho.hbar * standard_form(rho.n)
    return float(np.linalg.eigvalsh(H)[0])


def quantum_condition_williamson(rho: GaussianMixedState, tol: float = TOL_QUANTUM) -> bool:
    """Same verdict as :func:`quantum_condition`, decided on the symplectic spectrum of ``sigma``.

    Non-positive-definite ``sigma`` is never a quantum covariance matrix.
    """
    try:
        nu_min = symplectic_spectrum(rho.sigma)[-1]
    except NotSPDError:
        return False
    return nu_min >= 0.5 * rho.hbar * (1.0 - tol)


def capacity_of_state(rho: GaussianMixedState) -> float:
    """Symplectic capacity of the covariance ellipsoid ``z^T M z <= hbar``."""
    return symplectic_capacity(rho.M, rho.hbar)


def wigner_of_pure(psi: PureGaussian, tol: float = TOL_SYMP) -> WignerGaussian:
    """Wigner matrix ``G`` of a pure Gaussian; verified symmetric positive definite and symplectic."""
    X, Y = psi.X, psi.Y
    try:
        Xi = np.linalg.inv(X)
    except np.linalg.LinAlgError as exc:
        raise NotSPDError("X is singular") from exc
    G = np.block([[X + Y @ Xi @ Y, Y @ Xi], [Xi @ Y, Xi]])
    G = 0.5 * (G + G.T)
    _check_spd(G)
    scale = 1.0 + np.max(np.abs(G)) ** 2
    if not is_symplectic(G, tol * scale):
        raise NumericalFailure("Wigner matrix lost symplecticity")
    return WignerGaussian(G=G, mean=psi.mean, hbar=psi.hbar)


def factor_G(W: Union[WignerGaussian, np.ndarray], tol: float = 1e-9, hbar: float = 1.0):
    """Factor a symplectic positive definite ``G`` as ``S^T S`` and recover ``(X, Y)``.

    ``X = (G_pp)^{-1}`` and ``Y = X G_px``, and
    ``S = [[X^{1/2}, 0], [X^{-1/2} Y, X^{-1/2}]]``.

    Returns
    -------
    S : ndarray
    psi : PureGaussian

    Raises
    ------
    DomainError
        If ``G`` is not symplectic, in which case no pure state has this Wigner matrix.
    """
    if not isinstance(W, WignerGaussian):
        W = WignerGaussian(G=W, hbar=hbar)
    G = W.G
    n = num_modes(G)
    _check_spd(G)
    if not is_symplectic(G, tol * (1.0 + np.max(np.abs(G)) ** 2)):
        raise DomainError("G is not symplectic; it is not the Wigner matrix of a pure state")
    X = np.linalg.inv(G[n:, n:])
    X = 0.5 * (X + X.T)
    Y = X @ G[n:, :n]
    Y = 0.5 * (Y + Y.T)
    Xh = spd_sqrt(X)
    Xhi = np.linalg.inv(Xh)
    S = np.block([[Xh, np.zeros((n, n))], [Xhi @ Y, Xhi]])
    return S, PureGaussian(X=X, Y=Y, mean=W.mean, hbar=W.hbar)


def covariance_of_pure(psi: PureGaussian) -> GaussianMixedState:
    """Covariance matrix ``(hbar/2) G^{-1}`` of a pure Gaussian."""
    G = wigner_of_pure(psi).G
    return GaussianMixedState(sigma=0.5 * psi.hbar * np.linalg.inv(G), mean=psi.mean, hbar=psi.hbar)


def transform_state(S: np.ndarray, state, tol: float = 1e-9):
    """Push a state forward by the affine-free symplectic map ``z -> S z``.

    Covariances transform as ``S sigma S^T`` and Wigner matrices as
    ``S^{-T} G S^{-1}``; means as ``S mean``. Pure states are refactored into
    ``(X', Y')``.
    """
    S = np.asarray(S, dtype=float)
    if not is_symplectic(S, tol * (1.0 + np.max(np.abs(S)) ** 2)):
        raise DomainError("transformation matrix is not symplectic")
    if isinstance(state, GaussianMixedState):
        return GaussianMixedState(S @ state.sigma @ S.T, S @ state.mean, state.hbar)
    Si = np.linalg.inv(S)
    if isinstance(state, PureGaussian):
        W = wigner_of_pure(state)
    elif isinstance(state, WignerGaussian):
        W = state
    else:
        raise TypeError(f"cannot transform {type(state).__name__}")
    G = Si.T @ W.G @ Si
    W2 = WignerGaussian(0.5 * (G + G.T), S @ W.mean, W.hbar)
    if isinstance(state, WignerGaussian):
        return W2
    try:
        return factor_G(W2, tol=tol)[1]
    except DomainError as exc:
        raise NumericalFailure("transformed Wigner matrix lost symplecticity") from exc


def wigner_value(state, z: np.ndarray) -> np.ndarray:
    """Evaluate the Wigner function at ``z`` (shape ``(2n,)`` or ``(..., 2n)``).

    Mixed states use the normalized density
    ``(2 pi)^{-n} det(sigma)^{-1/2} exp(-(z-m)^T sigma^{-1} (z-m) / 2)``.
    """
    z = np.asarray(z, dtype=float)
    if isinstance(state, GaussianMixedState):
        n = state.n
        d = z - state.mean
        sigma_inv = np.linalg.inv(state.sigma)
        q = np.einsum("...i,ij,...j->...", d, sigma_inv, d)
        pref = (2 * np.pi) ** (-n) / np.sqrt(np.linalg.det(state.sigma))
        return pref * np.exp(-0.5 * q)
    if isinstance(state, PureGaussian):
        state = wigner_of_pure(state)
    if isinstance(state, WignerGaussian):
        n = state.G.shape[0] // 2
        d = z - state.mean
        q = np.einsum("...i,ij,...j->...", d, state.G, d)
        return (np.pi * state.hbar) ** (-n) * np.exp(-q / state.hbar)
    raise TypeError(f"unsupported state type {type(state).__name__}")
