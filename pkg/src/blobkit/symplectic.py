r"""Real linear algebra for the symplectic group :math:`Sp(2n, \mathbb{R})`.

Phase-space vectors are ordered ``z = (x_1, ..., x_n, p_1, ..., p_n)`` throughout,
so the standard symplectic form is

.. math::

    J = \begin{pmatrix} 0 & I_n \\ -I_n & 0 \end{pmatrix}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import expm

from .errors import DimensionError, NotSPDError, NotSymmetricError, NumericalFailure

TOL_SYM = 1e-10
TOL_SYMP = 1e-10
TOL_WILL = 1e-8
MAX_COND = 1e12


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def num_modes(A: np.ndarray) -> int:
    """Return ``n`` for a ``2n x 2n`` matrix, raising :class:`DimensionError` otherwise."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] == 0 or A.shape[0] % 2:
        raise DimensionError(f"phase-space matrices must have even size, got {A.shape[0]}")
    return A.shape[0] // 2


def standard_form(n: int) -> np.ndarray:
    """Standard symplectic matrix ``J = [[0, I], [-I, 0]]`` of size ``2n``."""
    if int(n) != n or n < 1:
        raise DimensionError(f"number of modes must be a positive integer, got {n}")
    n = int(n)
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def check_symmetric(A: np.ndarray, tol: float = TOL_SYM) -> np.ndarray:
    """Return the symmetrized float copy of ``A`` after checking it is symmetric within ``tol``."""
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotSymmetricError("matrix has non-finite entries")
    if _max_abs(A - A.T) > tol * (1.0 + _max_abs(A)):
        raise NotSymmetricError("matrix is not symmetric")
    return 0.5 * (A + A.T)


def is_symplectic(S: np.ndarray, tol: float = TOL_SYMP) -> bool:
    r"""Check :math:`\|S^T J S - J\|_{max} \le tol`."""
    S = np.asarray(S, dtype=float)
    J = standard_form(num_modes(S))
    return _max_abs(S.T @ J @ S - J) <= tol


def symplectic_residual(S: np.ndarray) -> float:
    """Max-norm residual of ``S^T J S - J``."""
    S = np.asarray(S, dtype=float)
    J = standard_form(num_modes(S))
    return _max_abs(S.T @ J @ S - J)


# Generators. These are the symplectic matrices underlying the Fourier transform,
# the chirps and the dilations of the metaplectic group.


def chirp(P: np.ndarray) -> np.ndarray:
    """Shear ``[[I, 0], [-P, I]]`` for a symmetric ``n x n`` matrix ``P``."""
    P = check_symmetric(np.atleast_2d(P))
    n = P.shape[0]
    V = np.eye(2 * n)
    V[n:, :n] = -P
    return V


def dilation(L: np.ndarray) -> np.ndarray:
    """Block-diagonal ``[[L^{-1}, 0], [0, L^T]]`` for an invertible ``n x n`` matrix ``L``."""
    L = np.atleast_2d(np.asarray(L, dtype=float))
    n = L.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = np.linalg.inv(L)
    out[n:, n:] = L.T
    return out


def random_symplectic(
    n: int,
    seed: Optional[int | np.random.Generator] = None,
    n_factors: int = 6,
    scale: float = 0.5,
) -> np.ndarray:
    """Random symplectic matrix as a product of ``n_factors`` random generators.

    Each factor is drawn uniformly among ``J``, a chirp with symmetric ``P`` whose
    entries lie in ``[-scale, scale]``, and a dilation ``L = expm(A)`` with the
    entries of ``A`` in ``[-scale, scale] / sqrt(n)``. Bounded entries keep the
    condition number of the product under control.

    Parameters
    ----------
    n : int
        Number of modes.
    seed : int or numpy.random.Generator, optional
        Seed for reproducibility. Same seed, same matrix.
    n_factors : int
        Number of generators in the product, at least 1.
    scale : float
        Bound on the generator parameters.
    """
    J = standard_form(n)
    if n_factors < 1:
        raise ValueError("n_factors must be >= 1")
    rng = np.random.default_rng(seed)
    S = np.eye(2 * n)
    for _ in range(n_factors):
        kind = rng.integers(3)
        if kind == 0:
            F = J
        elif kind == 1:
            P = rng.uniform(-scale, scale, size=(n, n))
            F = chirp(0.5 * (P + P.T))
        else:
            A = rng.uniform(-scale, scale, size=(n, n)) / np.sqrt(n)
            F = dilation(expm(A))
        S = S @ F
    return S


def symplectic_rotation(n: int, seed=None) -> np.ndarray:
    r"""Random element of :math:`U(n) = Sp(2n) \cap O(2n)`, built from a random unitary ``A + iB``."""
    rng = np.random.default_rng(seed)
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    U = Q * (np.diag(R) / np.abs(np.diag(R)))
    A, B = U.real, U.imag
    return np.block([[A, -B], [B, A]])


def direct_sum(*mats: np.ndarray) -> np.ndarray:
    """Direct sum of phase-space matrices respecting the ``(x..., p...)`` ordering.

    Mode blocks of the inputs are interleaved so the result acts on the concatenated
    modes: ``direct_sum(A_1mode, B_2modes)`` acts on ``(x1, x2, x3, p1, p2, p3)``.
    """
    ns = [num_modes(m) for m in mats]
    n = sum(ns)
    out = np.zeros((2 * n, 2 * n))
    offset = 0
    for m, k in zip(mats, ns):
        idx = np.r_[offset : offset + k, n + offset : n + offset + k]
        out[np.ix_(idx, idx)] = np.asarray(m, dtype=float)
        offset += k
    return out


def mode_indices(n: int, j: int) -> np.ndarray:
    """Indices of ``(x_j, p_j)`` for 0-based mode ``j``."""
    if not 0 <= j < n:
        raise DimensionError(f"mode index {j} out of range for n={n}")
    return np.array([j, n + j])


def _check_spd(M: np.ndarray, tol: float = TOL_SYM) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    M = check_symmetric(M, tol)
    w, V = np.linalg.eigh(M)
    if w[0] <= 0:
        raise NotSPDError(f"matrix is not positive definite (min eigenvalue {w[0]:.3e})")
    if w[-1] / w[0] > MAX_COND:
        raise NumericalFailure(f"condition number {w[-1] / w[0]:.3e} exceeds {MAX_COND:.0e}")
    return M, w, V


def spd_sqrt(M: np.ndarray) -> np.ndarray:
    """Positive square root of a symmetric positive definite matrix."""
    _, w, V = _check_spd(M)
    K = (V * np.sqrt(w)) @ V.T
    return 0.5 * (K + K.T)


def _skew_normal_form(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal ``Q`` and ``lam > 0`` (decreasing) with ``Q^T A Q = [[0, L], [-L, 0]]``.

    ``A`` is real skew-symmetric and invertible. The Hermitian matrix ``iA`` has
    eigenpairs ``(lam, v)`` and ``(-lam, conj(v))``; for ``v = a + ib`` of unit norm
    one has ``A a = lam b`` and ``A b = -lam a`` with ``a, b`` orthogonal of norm
    ``1/sqrt(2)``. The columns ``sqrt(2) b`` and ``sqrt(2) a`` then form one
    conjugate pair of ``Q``.
    """
    n = A.shape[0] // 2
    w, V = np.linalg.eigh(1j * A)
    # eigh sorts ascending; the last n are the positive ones, largest last
    order = np.arange(2 * n - 1, n - 1, -1)
    lam = w[order]
    Vp = V[:, order]
    # fix phases so the largest component of each eigenvector is +i|.|; diagonal M gives Q = I
    k = np.argmax(np.abs(Vp), axis=0)
    phase = Vp[k, np.arange(n)]
    Vp = Vp * (1j * np.abs(phase) / phase)
    a = np.sqrt(2) * Vp.real
    b = np.sqrt(2) * Vp.imag
    Q = np.hstack([b, a])
    # re-orthonormalize by polar projection (nearest orthogonal matrix)
    U, _, Wt = np.linalg.svd(Q)
    Q = U @ Wt
    return Q, lam


def symplectic_spectrum(M: np.ndarray) -> np.ndarray:
    r"""Symplectic eigenvalues of ``M`` in decreasing order.

    Computed from the skew-symmetric matrix :math:`M^{1/2} J M^{1/2}`, which has
    the same eigenvalues :math:`\pm i\lambda_j` as :math:`JM`.
    """
    n = num_modes(M)
    K = spd_sqrt(M)
    A = K @ standard_form(n) @ K
    w = np.linalg.eigvalsh(1j * 0.5 * (A - A.T))
    return w[n:][::-1].copy()


def symplectic_spectrum_eig(M: np.ndarray) -> np.ndarray:
    """Independent route: positive imaginary parts of the eigenvalues of ``JM``."""
    n = num_modes(M)
    _check_spd(M)
    ev = np.linalg.eigvals(standard_form(n) @ np.asarray(M, dtype=float))
    return np.sort(np.abs(ev.imag))[::-1][::2].copy()


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """``S`` symplectic and ``spectrum`` decreasing with ``S^T M S = diag(spectrum, spectrum)``."""

    S: np.ndarray
    spectrum: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(np.concatenate([self.spectrum, self.spectrum]))


def williamson(M: np.ndarray, tol: float = TOL_WILL) -> WilliamsonDecomposition:
    r"""Symplectic diagonalization of a symmetric positive definite matrix.

    With :math:`K = M^{1/2}` and the skew normal form
    :math:`Q^T (KJK) Q = [[0, \Lambda], [-\Lambda, 0]]`, the matrix
    :math:`S = K^{-1} Q \,\mathrm{diag}(\Lambda^{1/2}, \Lambda^{1/2})` is symplectic and
    :math:`S^T M S = \mathrm{diag}(\Lambda, \Lambda)`.

    When symplectic eigenvalues are degenerate ``S`` is only defined up to a
    symplectic rotation on the right; ``S @ S.T`` is unique.

    Raises
    ------
    NotSPDError
        If ``M`` is not positive definite.
    NumericalFailure
        If either identity fails the relative tolerance ``tol`` after construction.
    """
    M, w, V = _check_spd(M)
    n = num_modes(M)
    J = standard_form(n)
    K = (V * np.sqrt(w)) @ V.T
    K_inv = (V / np.sqrt(w)) @ V.T
    A = K @ J @ K
    Q, lam = _skew_normal_form(0.5 * (A - A.T))
    root = np.sqrt(np.concatenate([lam, lam]))
    S = K_inv @ Q * root

    D = np.diag(np.concatenate([lam, lam]))
    scale = np.linalg.norm(M, 2)
    res_diag = np.linalg.norm(S.T @ M @ S - D, 2)
    res_symp = _max_abs(S.T @ J @ S - J)
    if res_diag > tol * scale or res_symp > tol * (1.0 + _max_abs(S) ** 2):
        raise NumericalFailure(
            f"Williamson verification failed: diag residual {res_diag:.2e}, "
            f"symplectic residual {res_symp:.2e}"
        )
    return WilliamsonDecomposition(S=S, spectrum=lam)


def symplectic_capacity(M: np.ndarray, hbar: float = 1.0) -> float:
    r"""Capacity :math:`\pi\hbar/\lambda_1` of the ellipsoid :math:`z^T M z \le \hbar`."""
    return float(np.pi * hbar / symplectic_spectrum(M)[0])
