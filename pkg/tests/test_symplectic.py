import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blobkit.errors import DimensionError, NotSPDError, NumericalFailure
from blobkit.symplectic import (
    chirp,
    dilation,
    direct_sum,
    is_symplectic,
    random_symplectic,
    spd_sqrt,
    standard_form,
    symplectic_capacity,
    symplectic_rotation,
    symplectic_spectrum,
    symplectic_spectrum_eig,
    williamson,
)

from conftest import random_spd


def test_standard_form_small():
    np.testing.assert_array_equal(standard_form(1), [[0, 1], [-1, 0]])
    J2 = standard_form(2)
    np.testing.assert_array_equal(J2[:2, 2:], np.eye(2))
    np.testing.assert_array_equal(J2[2:, :2], -np.eye(2))
    np.testing.assert_array_equal(J2[:2, :2], 0)


def test_standard_form_squares_to_minus_identity():
    J = standard_form(3)
    np.testing.assert_array_equal(J @ J, -np.eye(6))
    np.testing.assert_array_equal(J.T, -J)


@pytest.mark.parametrize("n", [0, -1, 1.5])
def test_standard_form_rejects_bad_n(n):
    with pytest.raises(DimensionError):
        standard_form(n)


@pytest.mark.parametrize(
    "S, expected",
    [
        (np.eye(4), True),
        (np.diag([2.0, 0.5]), True),
        (np.diag([2.0, 2.0]), False),
    ],
)
def test_is_symplectic(S, expected):
    assert is_symplectic(S) is expected


def test_is_symplectic_odd_dimension():
    with pytest.raises(DimensionError):
        is_symplectic(np.eye(3))


def test_zero_chirp_is_identity():
    np.testing.assert_array_equal(chirp(np.zeros((2, 2))), np.eye(4))


def test_generators_are_symplectic(rng):
    P = rng.normal(size=(3, 3))
    assert is_symplectic(chirp(P + P.T))
    assert is_symplectic(dilation(rng.normal(size=(3, 3)) + 3 * np.eye(3)))
    assert is_symplectic(standard_form(3))
    assert is_symplectic(symplectic_rotation(3, 1))


def test_random_symplectic_deterministic():
    a = random_symplectic(3, seed=7, n_factors=5)
    b = random_symplectic(3, seed=7, n_factors=5)
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, random_symplectic(3, seed=8, n_factors=5))


def test_random_symplectic_needs_a_factor():
    with pytest.raises(ValueError):
        random_symplectic(2, seed=0, n_factors=0)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6), k=st.integers(1, 10))
def test_random_symplectic_property(seed, n, k):
    S = random_symplectic(n, seed, k)
    J = standard_form(n)
    assert np.max(np.abs(S.T @ J @ S - J)) <= 1e-10
    assert np.linalg.det(S) == pytest.approx(1.0, rel=1e-9)


def test_direct_sum_layout():
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    B = 10 * np.arange(1, 17, dtype=float).reshape(4, 4)
    D = direct_sum(A, B)
    # mode 0 from A, modes 1-2 from B, in (x0, x1, x2, p0, p1, p2) order
    assert D[0, 0] == 1 and D[0, 3] == 2 and D[3, 0] == 3 and D[3, 3] == 4
    np.testing.assert_array_equal(D[np.ix_([1, 2, 4, 5], [1, 2, 4, 5])], B)
    assert D[0, 1] == 0 and D[3, 4] == 0


def test_spd_sqrt_examples():
    np.testing.assert_allclose(spd_sqrt(np.eye(2)), np.eye(2))
    np.testing.assert_allclose(spd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))


def test_spd_sqrt_random(rng):
    for n in range(1, 5):
        M = random_spd(rng, n)
        K = spd_sqrt(M)
        np.testing.assert_allclose(K, K.T)
        assert np.linalg.eigvalsh(K)[0] > 0
        assert np.linalg.norm(K @ K - M) <= 1e-10 * np.linalg.norm(M)


@pytest.mark.parametrize("M", [np.diag([1.0, -1.0]), np.diag([1.0, 0.0]), -np.eye(4)])
def test_spd_sqrt_rejects_non_spd(M):
    with pytest.raises(NotSPDError):
        spd_sqrt(M)


def test_conditioning_guard():
    with pytest.raises(NumericalFailure):
        williamson(np.diag([1e-7, 1e7]))


def test_spectrum_identity():
    np.testing.assert_allclose(symplectic_spectrum(np.eye(6)), np.ones(3))


@pytest.mark.parametrize("a, b", [(4.0, 9.0), (0.3, 2.0), (1.0, 1.0)])
def test_spectrum_one_mode_closed_form(a, b):
    # JM = [[0, b], [-a, 0]] has characteristic polynomial t^2 + ab
    assert symplectic_spectrum(np.diag([a, b]))[0] == pytest.approx(np.sqrt(a * b), rel=1e-13)


def test_spectrum_scaling(rng):
    M = random_spd(rng, 3)
    np.testing.assert_allclose(symplectic_spectrum(3 * M), 3 * symplectic_spectrum(M), rtol=1e-12)


def test_spectrum_inversion(rng):
    M = random_spd(rng, 4)
    lam = symplectic_spectrum(M)
    np.testing.assert_allclose(symplectic_spectrum(np.linalg.inv(M)), (1 / lam)[::-1], rtol=1e-10)


def test_spectrum_symplectic_invariance(rng):
    M = random_spd(rng, 3)
    S = random_symplectic(3, 4, 6)
    np.testing.assert_allclose(symplectic_spectrum(S.T @ M @ S), symplectic_spectrum(M), rtol=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
def test_spectrum_two_oracles(seed, n):
    M = random_spd(np.random.default_rng(seed), n)
    np.testing.assert_allclose(symplectic_spectrum(M), symplectic_spectrum_eig(M), atol=1e-9)


def test_williamson_identity():
    W = williamson(np.eye(4))
    np.testing.assert_allclose(W.S @ W.S.T, np.eye(4), atol=1e-14)
    np.testing.assert_allclose(W.spectrum, [1.0, 1.0])


def test_williamson_one_mode_diagonal():
    a, b = 4.0, 9.0
    W = williamson(np.diag([a, b]))
    assert W.spectrum[0] == pytest.approx(6.0)
    # up to a rotation, S = diag((b/a)^(1/4), (a/b)^(1/4))
    S0 = np.diag([(b / a) ** 0.25, (a / b) ** 0.25])
    np.testing.assert_allclose(W.S @ W.S.T, S0 @ S0.T, atol=1e-13)
    np.testing.assert_allclose(W.S.T @ np.diag([a, b]) @ W.S, 6.0 * np.eye(2), atol=1e-12)


def test_williamson_degenerate_spectrum(rng):
    T = random_symplectic(3, 11, 6)
    M = T.T @ np.diag([2.0, 2.0, 0.5, 2.0, 2.0, 0.5]) @ T
    W = williamson(M)
    np.testing.assert_allclose(W.spectrum, [2.0, 2.0, 0.5], rtol=1e-10)
    assert is_symplectic(W.S, 1e-9)
    # S is not canonical in a degenerate block but S S^T is
    Ti = np.linalg.inv(T)
    np.testing.assert_allclose(W.S @ W.S.T, Ti @ Ti.T, atol=1e-8)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
def test_williamson_property(seed, n):
    M = random_spd(np.random.default_rng(seed), n)
    W = williamson(M)
    J = standard_form(n)
    assert np.linalg.norm(W.S.T @ M @ W.S - W.diagonal, 2) <= 1e-8 * np.linalg.norm(M, 2)
    assert np.max(np.abs(W.S.T @ J @ W.S - J)) <= 1e-10
    assert np.all(np.diff(W.spectrum) <= 0)


def test_williamson_rejects_non_spd():
    with pytest.raises(NotSPDError):
        williamson(np.diag([1.0, -2.0]))


def test_capacity_examples():
    assert symplectic_capacity(np.eye(2), hbar=1.0) == pytest.approx(np.pi)
    assert symplectic_capacity(np.diag([4.0, 9.0]), hbar=1.0) == pytest.approx(np.pi / 6)


def test_capacity_invariance(rng):
    M = random_spd(rng, 3)
    S = random_symplectic(3, 2, 6)
    assert symplectic_capacity(S.T @ M @ S, 2.0) == pytest.approx(symplectic_capacity(M, 2.0), rel=1e-9)
