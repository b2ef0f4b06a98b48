"""Unit tests for the phase-space primitives."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from opencurrents.hilbert import (
    check_hermitian,
    check_unit_modulus,
    clock_Z,
    displaced_parity,
    displacement,
    fourier_matrix,
    hermitian_expm,
    matrix_one_norm,
    parity_matrix,
    position_basis,
    shift_X,
    unit_circle,
)

DIMS = [2, 3, 4, 5, 7]


def test_position_basis_entries():
    e = position_basis(4, 2)
    assert e.dtype == complex
    assert_allclose(e, [0, 0, 1, 0])


@pytest.mark.parametrize("nu", [-1, 3])
def test_position_basis_index_checked(nu):
    with pytest.raises(ValueError, match="out of range"):
        position_basis(3, nu)


def test_fourier_d2_is_hadamard():
    expected = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert_allclose(fourier_matrix(2), expected, atol=1e-15)


@pytest.mark.parametrize("d", DIMS)
def test_fourier_unitary_of_order_four(d):
    F = fourier_matrix(d)
    eye = np.eye(d)
    assert_allclose(F @ F.conj().T, eye, atol=1e-12)
    assert_allclose(np.linalg.matrix_power(F, 4), eye, atol=1e-12)


@pytest.mark.parametrize("d", DIMS)
def test_fourier_squared_is_parity(d):
    F = fourier_matrix(d)
    assert_allclose(F @ F, parity_matrix(d), atol=1e-12)


def test_fourier_entry_moduli_exact():
    F = fourier_matrix(5)
    assert_allclose(np.abs(F), 1 / np.sqrt(5), atol=1e-15)


def test_shift_moves_components_cyclically():
    X = shift_X(3)
    assert_allclose(X @ position_basis(3, 1), position_basis(3, 0), atol=1e-15)
    assert_allclose(X @ position_basis(3, 0), position_basis(3, 2), atol=1e-15)


@pytest.mark.parametrize("d", DIMS)
def test_shift_clock_weyl_commutation(d):
    X, Z = shift_X(d), clock_Z(d)
    omega = unit_circle(2 * np.pi / d)
    assert_allclose(Z @ X * omega, X @ Z, atol=1e-12)
    assert_allclose(np.linalg.matrix_power(X, d), np.eye(d), atol=1e-12)
    assert_allclose(np.linalg.matrix_power(Z, d), np.eye(d), atol=1e-12)


def test_shift_powers_sum_to_ones_matrix():
    d = 5
    total = sum(np.linalg.matrix_power(shift_X(d), k) for k in range(d))
    assert_allclose(total, np.ones((d, d)), atol=1e-12)


def test_displacement_at_origin_is_identity():
    assert_allclose(displacement(4, 0, 0), np.eye(4), atol=1e-15)


def test_displacement_matches_clock_shift_product():
    d = 5
    Z, X = clock_Z(d), shift_X(d)
    for a in range(d):
        for b in range(d):
            for c in (0, 2):
                want = (
                    np.linalg.matrix_power(Z, a)
                    @ np.linalg.matrix_power(X, b)
                    * unit_circle(2 * np.pi * c / d)
                )
                assert_allclose(displacement(d, a, b, c), want, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 6])
def test_displacement_unitary_and_periodic(d):
    D = displacement(d, 2, 1, 3)
    assert_allclose(D @ D.conj().T, np.eye(d), atol=1e-12)
    assert_allclose(displacement(d, 2 + d, 1 - d, 3 + 2 * d), D, atol=1e-15)


def test_parity_fixes_zero_and_swaps_the_rest():
    P = parity_matrix(4)
    assert_allclose(P @ position_basis(4, 0), position_basis(4, 0), atol=1e-15)
    assert_allclose(P @ position_basis(4, 1), position_basis(4, 3), atol=1e-15)
    # the half-way index is its own negation for even d
    assert_allclose(P @ position_basis(4, 2), position_basis(4, 2), atol=1e-15)


@pytest.mark.parametrize("d", DIMS)
def test_displaced_parity_hermitian_involution(d):
    for a in range(d):
        for b in range(d):
            P = displaced_parity(d, a, b)
            assert_allclose(P, P.conj().T, atol=1e-12)
            assert_allclose(P @ P, np.eye(d), atol=1e-12)


def test_displaced_parity_at_origin_is_parity():
    assert_allclose(displaced_parity(5, 0, 0), parity_matrix(5), atol=1e-15)


def test_matrix_one_norm_sums_all_entries():
    theta = np.array([[1, -2], [3j, -4j]])
    assert matrix_one_norm(theta) == pytest.approx(10.0)
    assert matrix_one_norm(np.eye(7)) == pytest.approx(7.0)


def test_check_hermitian_accepts_hermitian():
    H = np.array([[1, 2j], [-2j, 5]])
    assert_allclose(check_hermitian(H), H)


def test_check_hermitian_rejects_bad_inputs():
    with pytest.raises(ValueError, match="not Hermitian"):
        check_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError, match="square"):
        check_hermitian(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="non-finite"):
        check_hermitian(np.array([[np.nan, 0], [0, 0]]))


def test_expm_at_time_zero_is_identity():
    H = np.array([[2.0, 1j], [-1j, 0.5]])
    assert_allclose(hermitian_expm(H, 0.0), np.eye(2), atol=1e-14)


def test_expm_diagonal_phases():
    U = hermitian_expm(np.diag([1.0, 2.0]), np.pi)
    assert_allclose(U, np.diag([-1.0 + 0j, 1.0 + 0j]), atol=1e-12)


def test_expm_unitary_for_random_hermitian():
    rng = np.random.default_rng(3)
    H = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    H = H + H.conj().T
    U = hermitian_expm(H, 0.7)
    assert_allclose(U @ U.conj().T, np.eye(6), atol=1e-10)
    assert_allclose(np.abs(np.linalg.eigvals(U)), 1.0, atol=1e-10)


def test_expm_rejects_non_hermitian():
    with pytest.raises(ValueError, match="not Hermitian"):
        hermitian_expm(np.array([[0, 1], [0, 0]]), 1.0)


_H_FIXED = np.array(
    [[1.0, 0.3 + 0.4j, 0.0], [0.3 - 0.4j, -0.5, 1j], [0.0, -1j, 2.0]]
)


@settings(max_examples=30, deadline=None)
@given(
    t1=st.floats(-5, 5, allow_nan=False),
    t2=st.floats(-5, 5, allow_nan=False),
)
def test_expm_group_property(t1, t2):
    U1 = hermitian_expm(_H_FIXED, t1)
    U2 = hermitian_expm(_H_FIXED, t2)
    assert_allclose(U1 @ U2, hermitian_expm(_H_FIXED, t1 + t2), atol=1e-10)


@settings(max_examples=50, deadline=None)
@given(angle=st.floats(-50, 50, allow_nan=False))
def test_unit_circle_stays_on_the_circle(angle):
    z = unit_circle(angle)
    assert abs(abs(z) - 1.0) < 1e-14
    assert check_unit_modulus(z) == z


def test_check_unit_modulus_rejects_off_circle():
    with pytest.raises(ValueError, match="unit circle"):
        check_unit_modulus(1.1)
    with pytest.raises(ValueError, match="unit circle"):
        check_unit_modulus(0)
