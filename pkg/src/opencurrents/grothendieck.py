"""Grothendieck quadratic forms, their suprema, and physical special cases.

The classical form C(theta) = |sum theta_rs a_r b_s| evaluates theta against
scalars in the unit disc; the quantum form Q traces theta against rescaling
matrices.  The supremum g of C over the polydisc is NP-hard in general, so
g_lower runs a multistart alternating phase ascent and reports a certified
lower bound together with the two upper bounds g' = n*s_max and the entrywise
1-norm.  The window condition g < min(g', ||theta||_1) is necessary for Q > 1,
and Q can never exceed the Grothendieck constant (known bound 1.4049).

Weyl, Wigner, tomography and component quantities are the Q values of
concrete experimental setups; they reduce to matrix elements divided by the
closed-form g of the state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import (
    check_hermitian,
    displaced_parity,
    displacement,
    hermitian_expm,
    matrix_one_norm,
)

# Known upper bound on the complex Grothendieck constant.
K_G_UPPER = 1.4049

# Strict inequalities in floating point need a declared gap.
WINDOW_MARGIN = 1e-6

DISC_TOL = 1e-12
STATE_NORM_TOL = 1e-10


def rescaling_norm(V) -> float:
    """N(V) = max over rows of the Euclidean row norm, max_i sqrt((V V^dagger)_ii).

    Matrices with N(V) <= 1 are the rescaling matrices; all unitaries have
    N = 1.
    """
    V = np.asarray(V)
    if V.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {V.shape}")
    return float(np.sqrt((np.abs(V) ** 2).sum(axis=1).max()))


def normalize_rescaling(V, lam: float = 1.0) -> np.ndarray:
    """Scale V to lam * V / N(V), a rescaling matrix with N = lam <= 1."""
    if not 0 < lam <= 1:
        raise ValueError(f"scale factor must be in (0, 1], got {lam}")
    n = rescaling_norm(V)
    if n == 0:
        raise ValueError("cannot normalize the zero matrix")
    return lam * np.asarray(V, dtype=complex) / n


def _check_disc(x, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1:
        raise ValueError(f"{name} must be a vector")
    worst = float(np.abs(x).max()) if x.size else 0.0
    if worst > 1 + DISC_TOL:
        raise ValueError(f"{name} has an entry of modulus {worst:.15g} outside the unit disc")
    return x


def dequantisation_matrix(a) -> np.ndarray:
    """The constant-row matrix A_rs = a_r / sqrt(d) built from unit-disc scalars.

    Row norms equal |a_r| <= 1, so the result is a rescaling matrix; these are
    the matrices that turn the quantum form into the classical one.
    """
    a = _check_disc(a, "a")
    d = a.size
    if d == 0:
        raise ValueError("empty vector")
    return np.repeat(a[:, None], d, axis=1) / np.sqrt(d)


def classical_form(theta, a, b) -> float:
    """C = |sum_rs theta_rs a_r b_s| for unit-disc scalar vectors a, b."""
    theta = np.asarray(theta, dtype=complex)
    a = _check_disc(a, "a")
    b = _check_disc(b, "b")
    if theta.shape != (a.size, b.size):
        raise ValueError(
            f"shape mismatch: theta {theta.shape} against a ({a.size},), b ({b.size},)"
        )
    return float(abs(a @ theta @ b))


def quantum_form(theta, V, W, g_value: float) -> float:
    """Q = |Tr(W^dagger theta V)| / (N(W) N(V) g_value).

    The caller supplies g(theta): the exact value where a closed form exists
    (pure or diagonal states), else a g_lower bound, in which case the result
    is an upper bound on Q.
    """
    theta = np.asarray(theta, dtype=complex)
    V = np.asarray(V, dtype=complex)
    W = np.asarray(W, dtype=complex)
    if not theta.shape == V.shape == W.shape:
        raise ValueError(
            f"shape mismatch: theta {theta.shape}, V {V.shape}, W {W.shape}"
        )
    if g_value <= 0:
        raise ValueError(f"g value must be positive, got {g_value}")
    nv, nw = rescaling_norm(V), rescaling_norm(W)
    if nv == 0 or nw == 0:
        raise ValueError("rescaling norm of V and W must be nonzero")
    return float(abs(np.trace(W.conj().T @ theta @ V)) / (nw * nv * g_value))


@dataclass(frozen=True)
class GrothendieckReport:
    """Best classical-form value found for one matrix, with its upper bounds.

    g_lower <= g(theta) always; window_open records the necessary condition
    g_lower < min(g_prime, one_norm) - margin for Q > 1.
    """

    g_lower: float
    g_prime: float
    one_norm: float
    window_open: bool
    witness_a: np.ndarray
    witness_b: np.ndarray
    restarts_used: int

    def __post_init__(self):
        if self.g_lower > min(self.g_prime, self.one_norm) + 1e-9:
            raise ValueError(
                f"ordering chain violated: g_lower = {self.g_lower!r} exceeds "
                f"min(g' = {self.g_prime!r}, one_norm = {self.one_norm!r})"
            )


def _conj_phase(M: np.ndarray) -> np.ndarray:
    """Conjugate phases of the entries, with the free phase at zeros pinned to 1."""
    out = np.ones_like(M)
    nz = M != 0
    out[nz] = M[nz].conj() / np.abs(M[nz])
    return out


def g_prime(theta) -> float:
    """Upper bound g'(theta) = n * s_max with s_max the largest singular value.

    Invariant under unitary conjugation of theta, unlike g and N.
    """
    theta = np.asarray(theta, dtype=complex)
    if theta.ndim != 2 or theta.shape[0] != theta.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {theta.shape}")
    return theta.shape[0] * float(np.linalg.svd(theta, compute_uv=False)[0])


def g_lower(
    theta,
    restarts: int = 64,
    seed: int = 0,
    tol: float = 1e-12,
    max_sweeps: int = 10_000,
) -> GrothendieckReport:
    """Lower-bound g(theta) by multistart alternating phase ascent.

    The optimum of C over the closed polydisc is attained at unit-modulus
    entries (C is the modulus of an affine function of each scalar), so the
    search is phase-only.  From a random unit-modulus b, alternate the
    closed-form coordinate maxima

        a_r <- conj phase of (theta b)_r,    b_s <- conj phase of (a theta)_s,

    each of which cannot decrease C, until the improvement drops below `tol`
    or `max_sweeps` is hit.  Restart k draws its start from a counter-based
    stream keyed (seed, k), so results are reproducible and independent of
    how restarts are scheduled; all restarts are iterated together as matrix
    columns and merged by max.
    """
    theta = np.asarray(theta, dtype=complex)
    if theta.ndim != 2 or theta.shape[0] != theta.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {theta.shape}")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    if not np.any(theta):
        raise ValueError("g is undefined for the zero matrix")

    n = theta.shape[0]
    B = np.empty((n, restarts), dtype=complex)
    for k in range(restarts):
        stream = np.random.Generator(np.random.Philox(key=[seed, k]))
        B[:, k] = np.exp(2j * np.pi * stream.random(n))

    A = np.ones((n, restarts), dtype=complex)
    vals = np.zeros(restarts)
    for _ in range(max_sweeps):
        A = _conj_phase(theta @ B)
        B = _conj_phase((A.T @ theta)).T
        new_vals = np.abs((A * (theta @ B)).sum(axis=0))
        done = np.all(new_vals - vals < tol)
        vals = np.maximum(vals, new_vals)
        if done:
            break

    best = int(np.argmax(vals))
    value = float(vals[best])
    gp = g_prime(theta)
    one_norm = matrix_one_norm(theta)
    return GrothendieckReport(
        g_lower=value,
        g_prime=gp,
        one_norm=one_norm,
        window_open=bool(value < min(gp, one_norm) - WINDOW_MARGIN),
        witness_a=A[:, best].copy(),
        witness_b=B[:, best].copy(),
        restarts_used=restarts,
    )


def _checked_state(f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.ndim != 1:
        raise ValueError("state must be a vector")
    nrm = float(np.linalg.norm(f))
    if abs(nrm - 1.0) > STATE_NORM_TOL:
        raise ValueError(f"state norm is {nrm:.15g}, expected 1")
    return f


def g_pure(f) -> float:
    """Exact g for a pure-state density matrix f f^dagger: (sum_r |f_r|)^2.

    Closed form, no optimizer; equals the entrywise 1-norm of f f^dagger.
    """
    f = _checked_state(f)
    return float(np.abs(f).sum() ** 2)


def window_check(theta, report: GrothendieckReport, margin: float = WINDOW_MARGIN) -> bool:
    """Necessary (not sufficient) condition for Q > 1.

    True iff the report's g_lower sits strictly below both upper bounds,
    recomputed from theta, by at least `margin`.
    """
    upper = min(g_prime(theta), matrix_one_norm(theta))
    return bool(report.g_lower < upper - margin)


def weyl_q(f, a: int, b: int, c: int = 0) -> float:
    """Q value of a Weyl-function measurement: |<f| D(a,b,c) |f>| / g_pure(f)."""
    f = _checked_state(f)
    D = displacement(f.size, a, b, c)
    return float(abs(np.vdot(f, D @ f)) / g_pure(f))


def wigner_q(f, a: int, b: int) -> float:
    """Q value of a Wigner-function measurement: |<f| P(a,b) |f>| / g_pure(f)."""
    f = _checked_state(f)
    P = displaced_parity(f.size, a, b)
    return float(abs(np.vdot(f, P @ f)) / g_pure(f))


def tomography_q(f, U, nu: int) -> float:
    """Q value of a tomography experiment: |<f| U |X;nu>|^2 / g_pure(f).

    Also verifies that the measured projector U |X;nu><X;nu| U^dagger is a
    rescaling matrix (its rows have norm <= 1), which is what makes the
    quantity a quantum form in the first place.
    """
    f = _checked_state(f)
    U = np.asarray(U, dtype=complex)
    d = f.size
    if U.shape != (d, d):
        raise ValueError(f"U has shape {U.shape}, expected ({d}, {d})")
    if float(np.abs(U @ U.conj().T - np.eye(d)).max()) > 1e-10:
        raise ValueError("U is not unitary")
    col = U[:, nu]
    V = np.outer(col, col.conj())
    if rescaling_norm(V) > 1 + DISC_TOL:
        raise ValueError("projector onto U|X;nu> failed the rescaling bound")
    return float(abs(np.vdot(f, col)) ** 2 / g_pure(f))


def component_q(f, H, t: float, nu: int) -> float:
    """Q value of one component of the evolved state.

    Q_nu(t) = |<X;nu| exp(iHt) f>| / sum_r |f_r|; the denominator is the
    exact g of the rank-one matrix pairing component nu with f.
    """
    f = _checked_state(f)
    H = check_hermitian(H)
    if H.shape[0] != f.size:
        raise ValueError(f"dimension mismatch: H {H.shape} against f ({f.size},)")
    if not 0 <= nu < f.size:
        raise ValueError(f"component index {nu} out of range for dimension {f.size}")
    amp = (hermitian_expm(H, t) @ f)[nu]
    return float(abs(amp) / np.abs(f).sum())
