"""Semi-unitary embeddings of a d-level system into 2d dimensions.

For z on the unit circle, the d x 2d matrix M(z) = (A(z) | A(-z)) with
A(z) = (1/2) P (1 + z X) (P the index-negation parity, X the cyclic shift)
satisfies M M^dagger = 1_d, so Pi(z) = M^dagger M is a rank-d orthogonal
projector on the doubled space.  The z-Bargmann representation

    v  ->  M(z)^dagger v,        T  ->  M(z)^dagger T M(z)

embeds states and observables of the d-level system into 2d dimensions,
where the embedded copy is an open system: unitary evolution of the doubled
space moves probability between the range of Pi(z) and its complement.

The columns of M(z)^dagger (scaled by sqrt(2)) form a coherent-state family
generated from the fiducial vector (z*, 1, 0, ..., 0)/sqrt(2) by the shift
orbit, which is where the construction comes from.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import check_unit_modulus, parity_matrix, shift_X

# A hair looser than the 1e-10 construction tolerance so round-tripped
# values never flap between physical and not.
PHYSICALITY_TOL = 1e-9

# Pi(z1, z2) has a 1/(1 + z1* z2) factor; reject near-antipodal pairs rather
# than returning huge entries.
ANTIPODAL_TOL = 1e-8


@dataclass(frozen=True)
class SemiUnitary:
    """The d x 2d matrix M(z); M M^dagger = 1_d and M(-z) M(z)^dagger = 0."""

    d: int
    z: complex
    matrix: np.ndarray


@dataclass(frozen=True)
class ProjectorPair:
    """Pi(z) and Pi(-z): complementary rank-d orthogonal projectors on 2d dims."""

    d: int
    z: complex
    pi_plus: np.ndarray
    pi_minus: np.ndarray


@dataclass(frozen=True)
class BargmannVector:
    """A 2d-component image M(z)^dagger v of a d-component vector."""

    d: int
    z: complex
    entries: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def coherent_family(d: int, z: complex) -> list[np.ndarray]:
    """The 2d coherent states {X^r |z>} and {X^r |-z>}, r = 0..d-1.

    The fiducial vector is |z> = (z*, 1, 0, ..., 0)/sqrt(2).  Each member has
    unit norm, X^r |z> is orthogonal to X^r |-z>, and the whole family
    resolves the identity with weight 1/2.  Either orbit alone does not.
    """
    z = check_unit_modulus(z)
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    family = []
    for w in (z, -z):
        fiducial = np.zeros(d, dtype=complex)
        fiducial[0] = np.conj(w) / np.sqrt(2)
        fiducial[1] = 1 / np.sqrt(2)
        # X^r sends the component at index j to index j - r (cyclically)
        family.extend(np.roll(fiducial, -r) for r in range(d))
    return family


def _half_block(d: int, z: complex) -> np.ndarray:
    """A(z) = (1/2) P (1 + z X); the two halves of M are A(z) and A(-z)."""
    return 0.5 * parity_matrix(d) @ (np.eye(d) + z * shift_X(d))


def build_M(d: int, z: complex) -> SemiUnitary:
    """Assemble the semi-unitary M(z) = (A(z) | A(-z)).

    A(z)^dagger = A(z*) and A(z) + A(-z) = P, which give the defining
    relations M(z1) M(z2)^dagger = ((1 + z1 z2*)/2) 1_d, in particular
    M M^dagger = 1_d and M(-z) M(z)^dagger = 0.
    """
    z = check_unit_modulus(z)
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    M = np.hstack([_half_block(d, z), _half_block(d, -z)])
    return SemiUnitary(d=d, z=z, matrix=M)


def projector(d: int, z: complex) -> ProjectorPair:
    """Pi(z) = M(z)^dagger M(z) and its complement Pi(-z).

    Each is Hermitian idempotent with trace d; they sum to the identity and
    annihilate each other.  Every diagonal entry is 1/2 and (for d >= 3) each
    row carries exactly four off-diagonal entries of modulus 1/4.
    """
    Mp = build_M(d, z).matrix
    Mm = build_M(d, -z).matrix
    return ProjectorPair(
        d=d,
        z=complex(z),
        pi_plus=Mp.conj().T @ Mp,
        pi_minus=Mm.conj().T @ Mm,
    )


def projector_pair_z(d: int, z1: complex, z2: complex) -> np.ndarray:
    """The oblique projector Pi(z1, z2) = (2/(1 + z1* z2)) M(z1)^dagger M(z2).

    Idempotent for any non-antipodal pair, Hermitian only when z1 = z2;
    Pi(z1, z2)^dagger = Pi(z2, z1) and
    Pi(z1) Pi(z2) = ((2 + z1* z2 + z1 z2*)/4) Pi(z1, z2).
    """
    z1 = check_unit_modulus(z1)
    z2 = check_unit_modulus(z2)
    denom = 1 + np.conj(z1) * z2
    if abs(denom) < ANTIPODAL_TOL:
        raise ValueError(f"z1 and z2 are (nearly) antipodal: |1 + z1* z2| = {abs(denom):.3e}")
    M1 = build_M(d, z1).matrix
    M2 = build_M(d, z2).matrix
    return (2 / denom) * (M1.conj().T @ M2)


def to_bargmann_vec(v, z: complex) -> BargmannVector:
    """The 2d-component image M(z)^dagger v of a d-component vector v.

    Preserves scalar products (so norms), and the output is an eigenvector of
    Pi(z) with eigenvalue one.
    """
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError("expected a vector")
    M = build_M(v.size, z)
    return BargmannVector(d=v.size, z=M.z, entries=M.matrix.conj().T @ v)


def from_bargmann_vec(vb: BargmannVector) -> np.ndarray:
    """Invert to_bargmann_vec: v = M(z) v_B."""
    entries = np.asarray(vb.entries, dtype=complex)
    if entries.size != 2 * vb.d:
        raise ValueError(f"expected {2 * vb.d} entries, got {entries.size}")
    return build_M(vb.d, vb.z).matrix @ entries


def to_bargmann_mat(T, z: complex) -> np.ndarray:
    """The 2d x 2d image M(z)^dagger T M(z) of a d x d matrix T.

    Trace and spectrum transfer (the image gains d zero eigenvalues),
    products map to products, and Pi(z) T_B Pi(z) = T_B.  The image of a
    unitary is not unitary: U_B U_B^dagger = Pi(z), never 1_2d.
    """
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {T.shape}")
    M = build_M(T.shape[0], z).matrix
    return M.conj().T @ T @ M


def from_bargmann_mat(T_B, z: complex) -> np.ndarray:
    """Invert to_bargmann_mat: T = M(z) T_B M(z)^dagger."""
    T_B = np.asarray(T_B, dtype=complex)
    if T_B.ndim != 2 or T_B.shape[0] != T_B.shape[1] or T_B.shape[0] % 2:
        raise ValueError(f"expected a square matrix of even dimension, got shape {T_B.shape}")
    M = build_M(T_B.shape[0] // 2, z).matrix
    return M @ T_B @ M.conj().T


def is_physical_vec(vb, z: complex, tol: float = PHYSICALITY_TOL) -> bool:
    """Whether a 2d-tuple is actually a z-Bargmann image: Pi(z) v_B = v_B."""
    entries = np.asarray(vb, dtype=complex)
    if entries.ndim != 1 or entries.size % 2:
        raise ValueError(f"expected a vector of even dimension, got shape {entries.shape}")
    pi = projector(entries.size // 2, z).pi_plus
    return float(np.abs(pi @ entries - entries).max()) <= tol


def is_physical_mat(T_B, z: complex, tol: float = PHYSICALITY_TOL) -> bool:
    """Whether a 2d x 2d matrix is a z-Bargmann image: Pi(z) T_B Pi(z) = T_B."""
    T_B = np.asarray(T_B, dtype=complex)
    if T_B.ndim != 2 or T_B.shape[0] != T_B.shape[1] or T_B.shape[0] % 2:
        raise ValueError(f"expected a square matrix of even dimension, got shape {T_B.shape}")
    pi = projector(T_B.shape[0] // 2, z).pi_plus
    return float(np.abs(pi @ T_B @ pi - T_B).max()) <= tol


def change_representation_vec(vb: BargmannVector, z1: complex) -> BargmannVector:
    """Re-express a physical Bargmann vector at a new unit-circle point z1.

    Equivalent to applying Pi(z1, vb.z) and dividing out its
    2/(1 + z1* z) factor, which collapses to M(z1)^dagger M(z) v_B; the z1 = z
    case is the identity on physical vectors.
    """
    z1 = check_unit_modulus(z1)
    entries = np.asarray(vb.entries, dtype=complex)
    if abs(1 + np.conj(z1) * vb.z) < ANTIPODAL_TOL:
        raise ValueError("cannot change representation between antipodal points")
    if not is_physical_vec(entries, vb.z):
        raise ValueError("input is not a physical Bargmann vector at its own z")
    M1 = build_M(vb.d, z1).matrix
    M2 = build_M(vb.d, vb.z).matrix
    return BargmannVector(d=vb.d, z=z1, entries=M1.conj().T @ (M2 @ entries))


def change_representation_mat(T_B, z2: complex, z1: complex) -> np.ndarray:
    """Re-express a physical Bargmann matrix from point z2 at point z1.

    Same collapse as for vectors: M(z1)^dagger M(z2) T_B M(z2)^dagger M(z1),
    equal to Pi(z1,z2) T_B Pi(z2,z1) times (2 + z1* z2 + z1 z2*)/4.
    """
    z1 = check_unit_modulus(z1)
    z2 = check_unit_modulus(z2)
    T_B = np.asarray(T_B, dtype=complex)
    if abs(1 + np.conj(z1) * z2) < ANTIPODAL_TOL:
        raise ValueError("cannot change representation between antipodal points")
    if not is_physical_mat(T_B, z2):
        raise ValueError("input is not a physical Bargmann matrix at z2")
    d = T_B.shape[0] // 2
    M1 = build_M(d, z1).matrix
    M2 = build_M(d, z2).matrix
    bridge = M1.conj().T @ M2
    return bridge @ T_B @ bridge.conj().T
