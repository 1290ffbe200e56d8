import numpy as np
import pytest

from blobkit.errors import (
    CapacityError,
    DomainError,
    InvalidStateError,
    NotSaturatedError,
    NumericalFailure,
)
from blobkit.fixtures import _place_mode, diagonal_fixture, saturated_fixture, slack_fixture
from blobkit.purification import (
    Dinv_plus_iJ,
    QuantumBlob,
    blobs_equal,
    check_saturation_implies_capacity,
    compare_blobs,
    covariance_of_blob,
    dominates,
    dual_ellipsoid,
    dual_section_area,
    eigenvalues_of_Dinv_plus_iJ,
    ellipsoid_section_area,
    extract_blob,
    purify,
    uniqueness_search,
)
from blobkit.states import GaussianMixedState, PureGaussian, covariance_of_pure, rs_report, transform_state
from blobkit.symplectic import direct_sum, random_symplectic, standard_form, symplectic_spectrum, williamson

from conftest import random_spd

R2 = 2**0.5


def test_saturation_forces_capacity_minimal_state():
    out = check_saturation_implies_capacity(GaussianMixedState(0.5 * np.eye(4)), 0)
    assert out["lambda1"] == pytest.approx(1.0)
    assert out["capacity"] == pytest.approx(np.pi)


def test_saturation_forces_capacity_fixture():
    out = check_saturation_implies_capacity(diagonal_fixture(), 0)
    assert out["lambda1"] == pytest.approx(1.0, abs=1e-14)
    # M = diag(1, 1/2, 1, 1/4): mode spectra 1 and sqrt(1/8)
    np.testing.assert_allclose(symplectic_spectrum(diagonal_fixture().M), [1.0, 1 / (2 * R2)])


def test_saturation_errors():
    with pytest.raises(NotSaturatedError):
        check_saturation_implies_capacity(GaussianMixedState(np.eye(2)), 0)
    with pytest.raises(InvalidStateError):
        check_saturation_implies_capacity(GaussianMixedState(0.25 * np.eye(2)), 0)


def test_Dinv_plus_iJ_examples():
    np.testing.assert_allclose(eigenvalues_of_Dinv_plus_iJ([1.0, 1.0, 1.0]), [0, 0, 0, 2, 2, 2])
    np.testing.assert_allclose(eigenvalues_of_Dinv_plus_iJ([1.0, 0.5]), [0, 1, 2, 3])


def test_Dinv_plus_iJ_against_eigensolve(rng):
    for _ in range(20):
        lam = np.sort(rng.uniform(0.1, 3.0, size=rng.integers(1, 6)))[::-1]
        direct = np.linalg.eigvalsh(Dinv_plus_iJ(lam))
        np.testing.assert_allclose(direct, eigenvalues_of_Dinv_plus_iJ(lam), atol=1e-10)


def test_Dinv_plus_iJ_positive_below_one(rng):
    lam = rng.uniform(0.05, 0.999, size=4)
    assert np.all(eigenvalues_of_Dinv_plus_iJ(lam) > 0)


def test_extract_blob_minimal_state():
    np.testing.assert_allclose(extract_blob(GaussianMixedState(0.5 * np.eye(4))).canonical, np.eye(4), atol=1e-14)


def test_extract_blob_fixture():
    blob = extract_blob(diagonal_fixture())
    np.testing.assert_allclose(blob.canonical, np.diag([1.0, 1 / R2, 1.0, R2]), atol=1e-14)


def test_extract_blob_capacity_error():
    with pytest.raises(CapacityError):
        extract_blob(slack_fixture(2, seed=0))


def test_extract_blob_conjugated_fixture():
    T = direct_sum(np.eye(2), random_symplectic(1, 9, 5))
    rho = transform_state(T, diagonal_fixture())
    blob = extract_blob(rho)
    assert np.linalg.eigvalsh(blob.quadratic_form - rho.M)[0] >= -1e-8


def test_purify_minimal_state():
    res = purify(GaussianMixedState(0.5 * np.eye(4)), 0)
    np.testing.assert_allclose(res.psi.X, np.eye(2), atol=1e-14)
    np.testing.assert_allclose(res.psi.Y, 0, atol=1e-14)
    assert res.diagnostics["block_mismatch"] == 0


def test_purify_diagonal_walkthrough():
    rho = diagonal_fixture()
    res = purify(rho, 0)
    np.testing.assert_allclose(res.psi.X, np.diag([1.0, R2]), atol=1e-12)
    np.testing.assert_allclose(res.psi.Y, 0, atol=1e-12)
    sigma_psi = covariance_of_pure(res.psi).sigma
    np.testing.assert_allclose(sigma_psi, 0.5 * np.diag([1.0, 1 / R2, 1.0, R2]), atol=1e-12)
    np.testing.assert_allclose(sigma_psi[np.ix_([0, 2], [0, 2])], 0.5 * np.eye(2), atol=1e-12)


def test_purify_default_index_and_mean():
    rho = GaussianMixedState(np.diag([1.0, 0.5, 2.0, 0.5]), mean=[1, 2, 3, 4])
    res = purify(rho)
    assert res.saturated_index == 1
    np.testing.assert_array_equal(res.psi.mean, rho.mean)


def test_purify_not_saturated():
    with pytest.raises(NotSaturatedError):
        purify(GaussianMixedState(np.eye(4)))
    with pytest.raises(NotSaturatedError):
        purify(diagonal_fixture(), 1)


def test_purify_mode_two_conjugation():
    rho = diagonal_fixture()
    base = purify(rho, 0)
    for seed in range(5):
        T = direct_sum(np.eye(2), random_symplectic(1, seed, 6))
        res = purify(transform_state(T, rho), 0)
        np.testing.assert_allclose(res.blob.canonical[np.ix_([0, 2], [0, 2])], np.eye(2), atol=1e-8)
        # equivariance: blob moves with T
        np.testing.assert_allclose(res.blob.canonical, T @ base.blob.canonical @ T.T, atol=1e-8)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_purify_properties(n):
    for seed in range(10):
        j = seed % n
        rho = saturated_fixture(n, j, seed=seed, hbar=1.5)
        res = purify(rho, j)
        sigma_psi = covariance_of_pure(res.psi)
        assert sigma_psi.hbar == 1.5
        assert j in rs_report(sigma_psi).saturated_indices
        np.testing.assert_allclose(sigma_psi.mode_block(j), rho.mode_block(j), atol=1e-8)
        assert dominates(res.psi, rho)
        np.testing.assert_allclose(symplectic_spectrum(sigma_psi.sigma), 0.75, atol=1e-9)


def test_purify_equivariance_other_modes():
    rho = saturated_fixture(3, 1, seed=4)
    res = purify(rho, 1)
    # T is the identity on mode 1 and a random symplectic map on modes 0 and 2
    T = _place_mode(3, 1, np.eye(2), random_symplectic(2, 2, 6))
    res2 = purify(transform_state(T, rho), 1)
    np.testing.assert_allclose(res2.blob.canonical, T @ res.blob.canonical @ T.T, atol=1e-8)
    expected = transform_state(T, res.psi)
    np.testing.assert_allclose(res2.psi.X, expected.X, atol=1e-8)
    np.testing.assert_allclose(res2.psi.Y, expected.Y, atol=1e-8)


def test_canonical_independent_of_williamson_branch():
    # a degenerate spectrum leaves S free up to U(n); S S^T must not care
    rho = GaussianMixedState(direct_sum(0.5 * np.eye(2), 0.5 * np.eye(2), np.diag([1.0, 3.0])))
    blob = extract_blob(rho)
    U = direct_sum(*[np.eye(2)] * 3)
    U[np.ix_([0, 1, 3, 4], [0, 1, 3, 4])] = np.block(
        [[np.cos(0.3) * np.eye(2), -np.sin(0.3) * np.eye(2)], [np.sin(0.3) * np.eye(2), np.cos(0.3) * np.eye(2)]]
    )
    other = QuantumBlob(blob.S @ U)
    np.testing.assert_allclose(other.canonical, blob.canonical, atol=1e-12)


def test_dominates_examples():
    assert dominates(PureGaussian(np.eye(1)), GaussianMixedState(0.5 * np.eye(2)))
    # X = 1/2: sigma_psi = diag(1, 1/4); x-variance exceeds 1/2
    assert not dominates(PureGaussian(0.5 * np.eye(1)), GaussianMixedState(0.5 * np.eye(2)))


def test_dominates_fixture_margin():
    rho = diagonal_fixture()
    res = purify(rho, 0)
    diff = rho.sigma - covariance_of_pure(res.psi).sigma
    np.testing.assert_allclose(np.diag(diff), [0.0, 1 - 1 / (2 * R2), 0.0, 2 - R2 / 2], atol=1e-12)
    assert dominates(res.psi, rho)


def test_dominates_domain_errors():
    with pytest.raises(DomainError):
        dominates(PureGaussian(np.eye(2)), GaussianMixedState(0.5 * np.eye(2)))
    with pytest.raises(DomainError):
        dominates(PureGaussian(np.eye(1), hbar=2.0), GaussianMixedState(0.5 * np.eye(2)))
    with pytest.raises(DomainError):
        dominates(PureGaussian(np.eye(1), mean=[1, 0]), GaussianMixedState(0.5 * np.eye(2)))


def test_blobs_equal_examples():
    S1 = random_symplectic(2, 3, 5)
    assert blobs_equal(S1, S1 @ standard_form(2))
    c, s = np.cos(0.7), np.sin(0.7)
    rot = np.block([[c * np.eye(2), s * np.eye(2)], [-s * np.eye(2), c * np.eye(2)]])
    assert blobs_equal(S1, S1 @ rot)
    one = random_symplectic(1, 3, 5)
    assert not blobs_equal(one, one @ np.diag([2.0, 0.5]))


def test_compare_blobs_reports_both():
    S1 = random_symplectic(2, 6, 5)
    c = compare_blobs(S1, S1 @ standard_form(2))
    assert c["rotation_equal"] and c["canonical_equal"]


def test_blobs_equal_rejects_non_symplectic():
    with pytest.raises(DomainError):
        blobs_equal(np.eye(2), np.diag([2.0, 2.0]))


def test_uniqueness_pure_state():
    rho = GaussianMixedState(0.5 * np.eye(2))
    assert uniqueness_search(rho, extract_blob(rho), trials=1000, seed=0) is None


def test_uniqueness_pure_multimode():
    T = random_symplectic(3, 8, 6)
    rho = GaussianMixedState(0.5 * T @ T.T)
    assert uniqueness_search(rho, extract_blob(rho), trials=500, seed=1) is None


def test_second_blob_in_diagonal_fixture():
    # The unit ball lies in {x1^2 + p1^2 + x2^2/2 + p2^2/4 <= 1} as does the Williamson blob:
    # the dominated pure state sharing the (x1, p1) block is not unique once mode 2 is mixed.
    rho = diagonal_fixture()
    res = purify(rho, 0)
    ground = PureGaussian(np.eye(2))
    assert dominates(ground, rho)
    np.testing.assert_allclose(covariance_of_pure(ground).mode_block(0), rho.mode_block(0))
    assert not blobs_equal(np.eye(4), res.blob.S)
    found = uniqueness_search(rho, res.blob, trials=1000, seed=0)
    assert found is not None
    assert np.linalg.eigvalsh(np.linalg.inv(found.T @ found.T.T) - rho.M)[0] >= -1e-10 * np.linalg.norm(rho.M, 2)


def test_uniqueness_slack_fixture_finds_blob():
    rho = slack_fixture(2, seed=3)
    blob = QuantumBlob(williamson(rho.M).S)
    found = uniqueness_search(rho, blob, trials=200, seed=0)
    assert found is not None and found.distance > 1e-6


def test_uniqueness_search_deterministic():
    rho = slack_fixture(2, seed=3)
    blob = QuantumBlob(williamson(rho.M).S)
    a = uniqueness_search(rho, blob, trials=50, seed=9)
    b = uniqueness_search(rho, blob, trials=50, seed=9)
    assert a.trial == b.trial and a.T.tobytes() == b.T.tobytes()


def test_dual_ellipsoid_examples():
    np.testing.assert_allclose(dual_ellipsoid(np.eye(2)).Q, np.eye(2))
    np.testing.assert_allclose(dual_ellipsoid(np.diag([4.0, 1.0])).Q, np.diag([0.25, 1.0]))


def test_dual_reverses_inclusion(rng):
    for _ in range(20):
        A = random_spd(rng, 2)
        B = A + random_spd(rng, 2, shift=0.01)
        # {z^T B z <= 2} inside {z^T A z <= 2}; duals swap
        dA, dB = dual_ellipsoid(A).Q, dual_ellipsoid(B).Q
        assert np.linalg.eigvalsh(dA - dB)[0] >= -1e-12


def test_dual_section_area_examples():
    assert dual_section_area(GaussianMixedState(0.5 * np.eye(2)), 0) == pytest.approx(4 * np.pi)
    assert dual_section_area(GaussianMixedState(2.0 * np.eye(4), hbar=2.0), 1) == pytest.approx(np.pi)


@pytest.mark.parametrize("hbar", [1.0, 0.5, 3.0])
def test_dual_section_area_saturated(hbar):
    for seed in range(5):
        rho = saturated_fixture(3, seed % 3, seed=seed, hbar=hbar)
        assert dual_section_area(rho, seed % 3) == pytest.approx(4 * np.pi / hbar, rel=1e-10)


def test_ellipsoid_section_area_saturated():
    # on the saturated plane the covariance ellipsoid section is the quantum-blob disk area
    rho = saturated_fixture(3, 2, seed=1, hbar=2.0)
    assert ellipsoid_section_area(rho, 2) == pytest.approx(2 * np.pi)


def test_covariance_of_blob():
    blob = extract_blob(diagonal_fixture())
    np.testing.assert_allclose(covariance_of_blob(blob), covariance_of_pure(purify(diagonal_fixture()).psi).sigma)
