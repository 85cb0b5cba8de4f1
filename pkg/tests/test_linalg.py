"""Tests for the dense linear algebra substrate."""

import numpy as np
import pytest

import oracles
from teleportlab import (
    DimensionError,
    NormalizationError,
    basis_state,
    dagger,
    normalize_state,
    operator_abs,
    polar_decompose,
    svd,
    tensor_product,
)

RECON_TOL = 1e-10


def test_svd_diagonal_sorted():
    factors = svd(np.diag([3.0, 4.0]))
    np.testing.assert_allclose(factors.singular_values, [4.0, 3.0], atol=1e-14)


@pytest.mark.parametrize("d", [1, 2, 5])
def test_svd_identity(d):
    factors = svd(np.eye(d))
    np.testing.assert_allclose(factors.singular_values, np.ones(d), atol=1e-14)


def test_svd_nilpotent_matches_characteristic_polynomial_oracle():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    expected = oracles.singular_values_2x2(m)
    np.testing.assert_allclose(expected, [1.0, 0.0], atol=1e-14)
    np.testing.assert_allclose(svd(m).singular_values, expected, atol=1e-12)


def test_svd_random_2x2_matches_oracle():
    rng = np.random.default_rng(21)
    for _ in range(25):
        m = oracles.random_complex(rng, (2, 2))
        np.testing.assert_allclose(
            svd(m).singular_values, oracles.singular_values_2x2(m), atol=1e-10
        )


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_svd_reconstruction_and_unitarity(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(10):
        m = oracles.random_complex(rng, (d, d))
        factors = svd(m)
        scale = 1.0 + np.linalg.norm(m)
        assert np.linalg.norm(factors.reconstruct() - m) <= RECON_TOL * scale
        assert np.max(np.abs(dagger(factors.left) @ factors.left - np.eye(d))) <= RECON_TOL
        assert np.max(np.abs(dagger(factors.right) @ factors.right - np.eye(d))) <= RECON_TOL
        assert np.all(np.diff(factors.singular_values) <= 0)
        assert np.all(factors.singular_values >= 0)


@pytest.mark.parametrize("d", [2, 4])
def test_singular_values_invariant_under_unitaries(d):
    rng = np.random.default_rng(7)
    m = oracles.random_complex(rng, (d, d))
    reference = svd(m).singular_values
    for _ in range(5):
        u = oracles.random_unitary(rng, d)
        v = oracles.random_unitary(rng, d)
        np.testing.assert_allclose(svd(u @ m @ v).singular_values, reference, atol=1e-10)


def test_polar_already_positive():
    m = np.diag([1.0, 0.0])
    u, p = polar_decompose(m)
    np.testing.assert_allclose(p, m, atol=1e-12)
    np.testing.assert_allclose(u @ p, m, atol=1e-12)


def test_polar_of_unitary_is_unitary_times_identity():
    rng = np.random.default_rng(5)
    w = oracles.random_unitary(rng, 3)
    u, p = polar_decompose(w)
    np.testing.assert_allclose(p, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(u, w, atol=1e-12)


def test_polar_nilpotent_against_spectral_oracle():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    expected_abs = oracles.sqrt_psd_2x2(oracles.dagger(m) @ m)
    np.testing.assert_allclose(expected_abs, np.diag([0.0, 1.0]), atol=1e-14)
    u, p = polar_decompose(m)
    np.testing.assert_allclose(p, expected_abs, atol=1e-12)
    np.testing.assert_allclose(u @ p, m, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 6])
def test_polar_reconstruction_properties(d):
    rng = np.random.default_rng(200 + d)
    for _ in range(10):
        m = oracles.random_complex(rng, (d, d))
        u, p = polar_decompose(m)
        scale = 1.0 + np.linalg.norm(m)
        assert np.linalg.norm(u @ p - m) <= RECON_TOL * scale
        assert np.max(np.abs(dagger(u) @ u - np.eye(d))) <= RECON_TOL
        np.testing.assert_allclose(p, dagger(p), atol=1e-12)
        assert np.all(np.linalg.eigvalsh(p) >= -1e-12)


def test_operator_abs_removes_signs():
    np.testing.assert_allclose(operator_abs(np.diag([-2.0, 3.0])), np.diag([2.0, 3.0]), atol=1e-12)


def test_operator_abs_of_unitary():
    rng = np.random.default_rng(9)
    w = oracles.random_unitary(rng, 4)
    np.testing.assert_allclose(operator_abs(w), np.eye(4), atol=1e-12)


def test_operator_abs_trace_is_nuclear_norm():
    rng = np.random.default_rng(31)
    m = oracles.random_complex(rng, (3, 3))
    nuclear = np.linalg.svd(m, compute_uv=False).sum()
    assert abs(np.trace(operator_abs(m)).real - nuclear) <= 1e-10


def test_operator_abs_keeps_singular_values():
    rng = np.random.default_rng(32)
    m = oracles.random_complex(rng, (4, 4))
    np.testing.assert_allclose(
        np.sort(np.linalg.eigvalsh(operator_abs(m))),
        np.sort(np.linalg.svd(m, compute_uv=False)),
        atol=1e-10,
    )


def test_tensor_product_of_identities():
    np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(3)), np.eye(6))


def test_tensor_product_projector_bookkeeping():
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    expected = np.zeros((4, 4))
    expected[1, 1] = 1.0  # |0> ⊗ |1> sits at composite index 0*2 + 1
    np.testing.assert_array_equal(tensor_product(p0, p1), expected)


def test_tensor_product_action_law():
    rng = np.random.default_rng(12)
    a = oracles.random_complex(rng, (3, 3))
    b = oracles.random_complex(rng, (2, 2))
    u = oracles.random_complex(rng, 3)
    v = oracles.random_complex(rng, 2)
    left = tensor_product(a, b) @ np.kron(u, v)
    right = np.kron(a @ u, b @ v)
    np.testing.assert_allclose(left, right, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_tensor_product_mixed_product_law(d):
    rng = np.random.default_rng(40 + d)
    a, b, c, e = (oracles.random_complex(rng, (d, d)) for _ in range(4))
    left = tensor_product(a, b) @ tensor_product(c, e)
    right = tensor_product(a @ c, b @ e)
    np.testing.assert_allclose(left, right, atol=1e-12)


def test_nonfinite_entries_rejected():
    bad = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError):
        svd(bad)
    with pytest.raises(ValueError):
        polar_decompose(bad)
    with pytest.raises(ValueError):
        operator_abs(bad)
    with pytest.raises(ValueError):
        tensor_product(bad, np.eye(2))


def test_nonsquare_rejected():
    with pytest.raises(DimensionError):
        svd(np.ones((2, 3)))
    with pytest.raises(DimensionError):
        polar_decompose(np.ones((3, 2)))
    with pytest.raises(DimensionError):
        operator_abs(np.ones(4))


def test_tensor_product_refuses_runaway_sizes():
    big = np.ones((300, 300))
    with pytest.raises(DimensionError):
        tensor_product(big, big)


def test_state_helpers_reject_bad_inputs():
    with pytest.raises(NormalizationError):
        normalize_state(np.zeros(3))
    with pytest.raises(DimensionError):
        normalize_state(np.ones((2, 2)))
    with pytest.raises(DimensionError):
        normalize_state(np.array([]))
    with pytest.raises(ValueError):
        normalize_state(np.array([np.inf, 0.0]))
    with pytest.raises(DimensionError):
        basis_state(3, 3)
    with pytest.raises(DimensionError):
        basis_state(0, 0)
