r"""Pure Gaussian state attached to a partially saturated mixed Gaussian state.

If one uncertainty inequality of a quantum covariance matrix :math:`\Sigma` is an
equality, the covariance ellipsoid :math:`\Omega = \{z^T M z \le \hbar\}`,
:math:`M = (\hbar/2)\Sigma^{-1}`, has symplectic capacity exactly :math:`\pi\hbar`.
A Williamson diagonalization :math:`S^T M S = \mathrm{diag}(\Lambda, \Lambda)` then has
:math:`\lambda_1 = 1` and the symplectic ball :math:`S(B_{\sqrt\hbar})` (a *quantum blob*)
sits inside :math:`\Omega`. The pure state with Wigner matrix :math:`(SS^T)^{-1}` has the
same covariance block as :math:`\Sigma` on the saturated conjugate pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import expm

from .errors import (
    CapacityError,
    DomainError,
    InconsistencyError,
    InvalidStateError,
    NotSaturatedError,
    NumericalFailure,
)
from .states import (
    TOL_SAT,
    GaussianMixedState,
    PureGaussian,
    covariance_of_pure,
    factor_G,
    quantum_condition,
    rs_report,
    wigner_of_pure,
)
from .symplectic import (
    _check_spd,
    is_symplectic,
    mode_indices,
    num_modes,
    standard_form,
    symplectic_rotation,
    williamson,
)

TOL_PURIFY = 1e-8


def _min_eig(A: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(0.5 * (A + A.T))[0])


@dataclass(frozen=True)
class QuantumBlob:
    """Symplectic ball ``S(B_sqrt(hbar))``; ``canonical = S S^T`` identifies it."""

    S: np.ndarray
    hbar: float = 1.0
    canonical: np.ndarray = field(init=False)

    def __post_init__(self):
        S = np.array(self.S, dtype=float)
        S.setflags(write=False)
        C = S @ S.T
        C = 0.5 * (C + C.T)
        C.setflags(write=False)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "canonical", C)

    @property
    def quadratic_form(self) -> np.ndarray:
        """``(S S^T)^{-1}``; the blob is ``{z : z^T Q z <= hbar}``."""
        Q = np.linalg.inv(self.canonical)
        return 0.5 * (Q + Q.T)


@dataclass(frozen=True)
class PurificationResult:
    psi: PureGaussian
    blob: QuantumBlob
    saturated_index: int
    diagnostics: dict


@dataclass(frozen=True)
class DualEllipsoid:
    """Ellipsoid ``{z : z^T Q z / 2 <= 1}``."""

    Q: np.ndarray


def check_saturation_implies_capacity(rho: GaussianMixedState, j: int, tol: float = TOL_PURIFY) -> dict:
    """Check that saturation at mode ``j`` forces ``lambda_1(M) = 1`` and capacity ``pi hbar``.

    Raises
    ------
    InvalidStateError
        ``rho`` violates the quantum condition.
    NotSaturatedError
        The inequality at ``j`` is strict.
    InconsistencyError
        ``lambda_1`` differs from 1 by more than ``tol``.
    """
    if not quantum_condition(rho):
        raise InvalidStateError("covariance matrix violates the quantum condition")
    rep = rs_report(rho, tol)
    mode_indices(rho.n, j)
    if not rep.saturated[j]:
        raise NotSaturatedError(f"index {j + 1} not saturated (slack {rep.slack[j]:.3e})")
    lam1 = float(williamson(rho.M).spectrum[0])
    capacity = np.pi * rho.hbar / lam1
    if abs(lam1 - 1.0) > tol:
        raise InconsistencyError(f"saturated state has lambda_1 = {lam1!r}, expected 1")
    return {"lambda1": lam1, "capacity": capacity}


def eigenvalues_of_Dinv_plus_iJ(spectrum) -> np.ndarray:
    """Closed-form eigenvalues ``1/lambda_j +- 1`` of ``diag(L^-1, L^-1) + iJ``, sorted ascending."""
    lam = np.asarray(spectrum, dtype=float)
    return np.sort(np.concatenate([1.0 / lam + 1.0, 1.0 / lam - 1.0]))


def Dinv_plus_iJ(spectrum) -> np.ndarray:
    lam = np.asarray(spectrum, dtype=float)
    n = lam.shape[0]
    return np.diag(np.concatenate([1.0 / lam, 1.0 / lam])) + 1j * standard_form(n)


def extract_blob(rho: GaussianMixedState, tol: float = TOL_PURIFY) -> QuantumBlob:
    """Largest quantum blob inside the covariance ellipsoid of ``rho``.

    Requires ``lambda_1(M) = 1`` within ``tol`` (capacity ``pi hbar``).
    """
    if not quantum_condition(rho):
        raise InvalidStateError("covariance matrix violates the quantum condition")
    M = rho.M
    W = williamson(M)
    lam1 = W.spectrum[0]
    if abs(lam1 - 1.0) > tol:
        raise CapacityError(
            f"capacity {np.pi * rho.hbar / lam1:.10g} differs from pi*hbar (lambda_1 = {lam1:.10g})"
        )
    blob = QuantumBlob(W.S, rho.hbar)
    margin = _min_eig(blob.quadratic_form - M)
    if margin < -tol * np.linalg.norm(M, 2):
        raise NumericalFailure(f"blob not contained in covariance ellipsoid (margin {margin:.3e})")
    return blob


def purify(rho: GaussianMixedState, j: Optional[int] = None, tol: float = TOL_PURIFY) -> PurificationResult:
    """Build the pure Gaussian dominated by ``rho`` that shares its covariance block at mode ``j``.

    Parameters
    ----------
    rho : GaussianMixedState
    j : int, optional
        0-based saturated mode. Defaults to the smallest saturated index.
    tol : float
        Tolerance for saturation, capacity, block match and domination.
    """
    if j is None:
        sat = rs_report(rho, tol).saturated_indices
        if not sat:
            raise NotSaturatedError("no uncertainty inequality is saturated")
        j = sat[0]
    cap = check_saturation_implies_capacity(rho, j, tol)
    blob = extract_blob(rho, tol)
    G = blob.quadratic_form
    _, psi = factor_G(G, hbar=rho.hbar)
    psi = PureGaussian(psi.X, psi.Y, rho.mean, rho.hbar)

    sigma_psi = 0.5 * rho.hbar * blob.canonical
    idx = mode_indices(rho.n, j)
    block_rho = rho.sigma[np.ix_(idx, idx)]
    block_psi = sigma_psi[np.ix_(idx, idx)]
    mismatch = float(np.max(np.abs(block_rho - block_psi)))
    dom = _min_eig(G - rho.M)
    diagnostics = {
        "lambda1": cap["lambda1"],
        "capacity": cap["capacity"],
        "block_mismatch": mismatch,
        "domination_min_eig": dom,
        "tol": tol,
    }
    if mismatch > tol * max(1.0, float(np.max(np.abs(block_rho)))):
        raise InconsistencyError(f"covariance block mismatch {mismatch:.3e} at index {j + 1}")
    return PurificationResult(psi=psi, blob=blob, saturated_index=j, diagnostics=diagnostics)


def dominates(psi: PureGaussian, rho: GaussianMixedState, tol: float = 1e-9) -> bool:
    """Exponent-wise domination ``z^T M z <= z^T G_psi z`` for all ``z``.

    Equivalent to the covariance ordering ``sigma_psi <= sigma_rho``.
    """
    if psi.n != rho.n:
        raise DomainError("states have different numbers of modes")
    if psi.hbar != rho.hbar:
        raise DomainError("states have different hbar")
    if not np.allclose(psi.mean, rho.mean):
        raise DomainError("states have different means")
    M = rho.M
    G = wigner_of_pure(psi).G
    return _min_eig(G - M) >= -tol * np.linalg.norm(M, 2)


def compare_blobs(S1: np.ndarray, S2: np.ndarray, tol: float = 1e-8) -> dict:
    """Compare ``S1(B)`` and ``S2(B)`` two ways.

    The rotation test checks that ``U = S1^{-1} S2`` lies in ``U(n)`` (orthogonal
    and commuting with ``J``); the canonical test compares ``S1 S1^T`` with
    ``S2 S2^T``.
    """
    S1 = np.asarray(S1, dtype=float)
    S2 = np.asarray(S2, dtype=float)
    if S1.shape != S2.shape:
        raise DomainError("matrices have different shapes")
    for S in (S1, S2):
        if not is_symplectic(S, 1e-9 * (1.0 + np.max(np.abs(S)) ** 2)):
            raise DomainError("blob matrix is not symplectic")
    J = standard_form(num_modes(S1))
    U = np.linalg.solve(S1, S2)
    ortho = float(np.max(np.abs(U.T @ U - np.eye(len(U)))))
    commute = float(np.max(np.abs(U @ J - J @ U)))
    C1, C2 = S1 @ S1.T, S2 @ S2.T
    canon = float(np.max(np.abs(C1 - C2)))
    scale = max(1.0, float(np.max(np.abs(C1))))
    return {
        "rotation_residual": max(ortho, commute),
        "canonical_residual": canon,
        "rotation_equal": max(ortho, commute) <= tol * scale,
        "canonical_equal": canon <= tol * scale,
        "tol": tol,
    }


def blobs_equal(S1: np.ndarray, S2: np.ndarray, tol: float = 1e-8) -> bool:
    """True if ``S1(B_R) == S2(B_R)``; both criteria of :func:`compare_blobs` must agree."""
    c = compare_blobs(S1, S2, tol)
    if c["rotation_equal"] != c["canonical_equal"]:
        raise NumericalFailure(
            f"blob comparison criteria disagree (rotation {c['rotation_residual']:.3e}, "
            f"canonical {c['canonical_residual']:.3e})"
        )
    return c["canonical_equal"]


@dataclass(frozen=True)
class Counterexample:
    """A second quantum blob inside the covariance ellipsoid."""

    T: np.ndarray
    trial: int
    distance: float
    inclusion_margin: float


def _random_symmetric(rng: np.random.Generator, k: int) -> np.ndarray:
    A = rng.normal(size=(k, k))
    return 0.5 * (A + A.T)


def uniqueness_search(
    rho: GaussianMixedState,
    blob: QuantumBlob,
    trials: int = 1000,
    seed: int = 0,
    tol: float = 1e-6,
    inclusion_tol: float = 1e-10,
) -> Optional[Counterexample]:
    """Randomized search for a quantum blob in ``Omega`` distinct from ``blob``.

    Candidates are ``T = S_w E R`` with ``S_w`` a Williamson diagonalizer of ``M``,
    ``R`` a random symplectic rotation and ``E = expm(J H)`` a near-identity
    symplectic perturbation. Even trials draw a generic symmetric ``H``; odd trials
    restrict ``H`` to the Williamson modes with ``lambda_k < 1``, which is where
    the ellipsoid leaves room. Perturbation sizes are log-uniform in ``[1e-3, 1]``.

    A candidate counts when ``(T T^T)^{-1} - M >= -inclusion_tol ||M||`` and
    ``||T T^T - S S^T||_max > tol``. Each trial uses its own generator seeded by
    ``(seed, trial)``.
    """
    M = rho.M
    n = rho.n
    J = standard_form(n)
    W = williamson(M)
    slack_modes = np.flatnonzero(W.spectrum < 1.0 - 1e-6)
    scale_M = np.linalg.norm(M, 2)
    C = blob.canonical
    scale_C = max(1.0, float(np.max(np.abs(C))))
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        eps = 10.0 ** rng.uniform(-3, 0)
        if trial % 2 == 0 or slack_modes.size == 0:
            H = _random_symmetric(rng, 2 * n)
        else:
            idx = np.r_[slack_modes, n + slack_modes]
            H = np.zeros((2 * n, 2 * n))
            H[np.ix_(idx, idx)] = _random_symmetric(rng, idx.size)
        H *= eps / max(np.linalg.norm(H, 2), 1e-300)
        E = expm(J @ H)
        R = symplectic_rotation(n, rng)
        T = W.S @ E @ R
        TT = T @ T.T
        distance = float(np.max(np.abs(TT - C)))
        if distance <= tol * scale_C:
            continue
        margin = _min_eig(np.linalg.inv(TT) - M)
        if margin >= -inclusion_tol * scale_M:
            return Counterexample(T=T, trial=trial, distance=distance, inclusion_margin=margin)
    return None


def dual_ellipsoid(Q: np.ndarray) -> DualEllipsoid:
    """Dual of ``{z^T Q z / 2 <= 1}`` is ``{z^T Q^{-1} z / 2 <= 1}``."""
    Q, w, V = _check_spd(Q)
    Qi = (V / w) @ V.T
    return DualEllipsoid(0.5 * (Qi + Qi.T))


def dual_section_area(rho: GaussianMixedState, j: int) -> float:
    """Area of ``{z^T sigma z / 2 <= 1}`` cut by the ``(x_j, p_j)`` plane: ``2 pi / sqrt(det B_j)``."""
    _check_spd(rho.sigma)
    B = rho.mode_block(j)
    return float(2.0 * np.pi / np.sqrt(np.linalg.det(B)))


def ellipsoid_section_area(rho: GaussianMixedState, j: int) -> float:
    """Area of the covariance ellipsoid ``{z^T M z <= hbar}`` cut by the ``(x_j, p_j)`` plane."""
    M = rho.M
    idx = mode_indices(rho.n, j)
    return float(np.pi * rho.hbar / np.sqrt(np.linalg.det(M[np.ix_(idx, idx)])))


def covariance_of_blob(blob: QuantumBlob) -> np.ndarray:
    """Covariance ``(hbar/2) S S^T`` of the pure state attached to ``blob``."""
    return 0.5 * blob.hbar * blob.canonical

