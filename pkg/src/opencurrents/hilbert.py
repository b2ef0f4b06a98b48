"""Finite-dimensional Hilbert space primitives.

Position basis, the discrete Fourier matrix, the shift and clock matrices
generating the Z_d x Z_d phase space, displacement and displaced-parity
operators, the entrywise matrix 1-norm, and the Hermitian matrix exponential
used everywhere for time evolution.
"""

from __future__ import annotations

import numpy as np

# Inputs further from Hermitian than this are rejected, not symmetrized:
# silently repairing a matrix would mask user input mistakes.
HERMITICITY_TOL = 1e-9


def position_basis(d: int, nu: int) -> np.ndarray:
    """Standard basis ket |X;nu> in dimension d."""
    if not 0 <= nu < d:
        raise ValueError(f"basis index {nu} out of range for dimension {d}")
    e = np.zeros(d, dtype=complex)
    e[nu] = 1.0
    return e


def fourier_matrix(d: int) -> np.ndarray:
    """Unitary Fourier matrix F[mu, nu] = omega^(mu*nu)/sqrt(d), omega = exp(2*pi*i/d).

    Its columns are the momentum basis.  Entries are computed from angles so
    that their moduli are exactly 1/sqrt(d).
    """
    if d < 1:
        raise ValueError("dimension must be a positive integer")
    mu = np.arange(d)
    return np.exp(2j * np.pi * np.outer(mu, mu) / d) / np.sqrt(d)


def shift_X(d: int) -> np.ndarray:
    """Cyclic shift matrix: ones on the superdiagonal and at the bottom-left.

    Acts as X^mu |X;nu> = |X;nu-mu>, and 1 + X + ... + X^(d-1) is the matrix
    of ones.
    """
    if d < 1:
        raise ValueError("dimension must be a positive integer")
    X = np.zeros((d, d), dtype=complex)
    mu = np.arange(d)
    X[mu, (mu + 1) % d] = 1.0
    return X


def clock_Z(d: int) -> np.ndarray:
    """Diagonal clock matrix Z = diag(1, omega, ..., omega^(d-1))."""
    if d < 1:
        raise ValueError("dimension must be a positive integer")
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def displacement(d: int, a: int, b: int, c: int = 0) -> np.ndarray:
    """Displacement operator D(a, b, c) = Z^a X^b omega^c on Z_d x Z_d phase space.

    Indices are reduced mod d.  Built entrywise,
    D[mu, nu] = omega^(a*mu + c) * delta(nu, mu + b mod d), which equals the
    matrix product Z^a X^b omega^c without accumulating powers.
    """
    a, b, c = a % d, b % d, c % d
    mu = np.arange(d)
    D = np.zeros((d, d), dtype=complex)
    D[mu, (mu + b) % d] = np.exp(2j * np.pi * (a * mu + c) / d)
    return D


def parity_matrix(d: int) -> np.ndarray:
    """Index-negation permutation P[mu, nu] = delta(mu + nu = 0 mod d).

    Equal to F^2 (asserted in tests by direct multiplication); fixes index 0
    (and index d/2 for even d) and swaps the rest pairwise.
    """
    P = np.zeros((d, d), dtype=complex)
    mu = np.arange(d)
    P[mu, (-mu) % d] = 1.0
    return P


def displaced_parity(d: int, a: int, b: int) -> np.ndarray:
    """Displaced parity D(a,b,0) F^2 D(a,b,0)^dagger, a Hermitian involution.

    The construction conjugates the parity permutation by a displacement; the
    convention is an external choice (the Wigner-function literature has
    several) and is what makes wigner_q real-valued.
    """
    D = displacement(d, a, b, 0)
    return D @ parity_matrix(d) @ D.conj().T


def matrix_one_norm(theta) -> float:
    """Entrywise 1-norm, sum of |theta_rs| over all entries.

    This is not the induced (max column sum) norm.
    """
    return float(np.abs(np.asarray(theta)).sum())


def check_hermitian(H, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate Hermiticity to `tol` in max-entry norm; return H as complex array."""
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise ValueError("matrix has non-finite entries")
    asym = float(np.abs(H - H.conj().T).max())
    if asym > tol:
        raise ValueError(
            f"matrix is not Hermitian: max|H - H^dagger| = {asym:.3e} exceeds {tol:.1e}"
        )
    return H


def hermitian_expm(H, t: float) -> np.ndarray:
    """Unitary exp(i*H*t) for Hermitian H, via eigendecomposition.

    H = U diag(lambda) U^dagger gives exp(iHt) = U diag(exp(i*lambda*t)) U^dagger,
    so the result is unitary to rounding for any t.
    """
    H = check_hermitian(H)
    lam, U = np.linalg.eigh(H)
    return (U * np.exp(1j * lam * t)) @ U.conj().T


def unit_circle(angle: float) -> complex:
    """The point exp(i*angle); |z| = 1 to rounding since it comes from an angle."""
    return complex(np.exp(1j * angle))


def check_unit_modulus(z: complex, tol: float = 1e-12) -> complex:
    """Validate | |z| - 1 | <= tol; return z as a complex scalar."""
    z = complex(z)
    if abs(abs(z) - 1.0) > tol:
        raise ValueError(f"|z| = {abs(z):.15g} is not on the unit circle (tol {tol:.1e})")
    return z
