"""Unitary evolution of the doubled system and the probability current.

With Pi(z) projecting onto the embedded d-level system, the current
J(t) = i Tr([Pi(z), H] rho(t)) is the rate at which probability flows into
the range of Pi(z); positive J amplifies the open system, negative J damps
it.  Evolution is exact (eigendecomposition of H, no ODE stepping) because
the dimensions are tiny and the reference numbers demand it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bargmann import ProjectorPair, to_bargmann_mat
from .grothendieck import g_lower, quantum_form, rescaling_norm
from .hilbert import check_hermitian, hermitian_expm

# Traces below are analytically real for Hermitian inputs; a larger imaginary
# part means a non-Hermitian matrix slipped through, so it is an error rather
# than something to discard.
RESIDUE_TOL = 1e-9

DENSITY_TOL = 1e-10


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > RESIDUE_TOL:
        raise ValueError(
            f"imaginary residue {value.imag:.3e} in {what}; some input is not Hermitian"
        )
    return float(value.real)


def check_density_matrix(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace, and positivity (eigenvalues >= -tol)."""
    rho = check_hermitian(rho, tol)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol:
        raise ValueError(f"trace is {tr:.15g}, expected 1")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < -tol:
        raise ValueError(f"not positive semidefinite: smallest eigenvalue {smallest:.3e}")
    return rho


def evolve(rho0, H, t: float) -> np.ndarray:
    """rho(t) = exp(iHt) rho0 exp(-iHt); preserves trace, Hermiticity, spectrum."""
    rho0 = np.asarray(rho0, dtype=complex)
    H = check_hermitian(H)
    if rho0.shape != H.shape:
        raise ValueError(f"dimension mismatch: rho {rho0.shape} against H {H.shape}")
    ev = hermitian_expm(H, t)
    return ev @ rho0 @ ev.conj().T


def _commutator(A, B):
    return A @ B - B @ A


def current(rho0, H, pp: ProjectorPair, t: float) -> float:
    """Probability current J(t) = i Tr([Pi(z), H] rho(t)), a real number."""
    rho_t = evolve(rho0, H, t)
    C1 = _commutator(pp.pi_plus, H)
    return _real(1j * np.trace(C1 @ rho_t), "current")


@dataclass(frozen=True)
class TaylorCurrent:
    """Taylor coefficients of J around t = 0: J(t) = c0 + c1 t + c2 t^2 + ...

    The quadratic coefficient is J''(0)/2 (factorial convention), matching
    the printed polynomial form of the reference table.
    """

    coefficients: np.ndarray
    z: complex
    hamiltonian: np.ndarray


def current_derivatives_at_zero(rho0, H, pp: ProjectorPair, order: int = 2) -> TaylorCurrent:
    """Taylor coefficients of J at t = 0 from nested commutators.

    c0 = i Tr([Pi,H] rho0), c1 = -Tr([[Pi,H],H] rho0),
    c2 = -(i/2) Tr([[[Pi,H],H],H] rho0).
    """
    if not 0 <= order <= 2:
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    rho0 = np.asarray(rho0, dtype=complex)
    H = check_hermitian(H)
    C1 = _commutator(pp.pi_plus, H)
    coeffs = [_real(1j * np.trace(C1 @ rho0), "J(0)")]
    if order >= 1:
        C2 = _commutator(C1, H)
        coeffs.append(_real(-np.trace(C2 @ rho0), "J'(0)"))
    if order >= 2:
        C3 = _commutator(C2, H)
        coeffs.append(_real(-0.5j * np.trace(C3 @ rho0), "J''(0)/2"))
    return TaylorCurrent(
        coefficients=np.array(coeffs), z=pp.z, hamiltonian=H.copy()
    )


def taylor_current_eval(tc: TaylorCurrent, t):
    """Evaluate the truncated series sum_k c_k t^k."""
    return np.polynomial.polynomial.polyval(t, tc.coefficients)


@dataclass(frozen=True)
class CurrentSeries:
    """Sampled J(t) and occupancy Tr[Pi(z) rho(t)], optionally with Q(t)."""

    times: np.ndarray
    j_values: np.ndarray
    occupancy: np.ndarray
    z: complex
    q_values: np.ndarray | None = None
    g_values: np.ndarray | None = None


def current_series(rho0, H, pp: ProjectorPair, times, g_supplier=None) -> CurrentSeries:
    """Sample the exact current and occupancy over an increasing time grid.

    When `g_supplier` is given (a callable rho(t) -> g value), Q(t) =
    2 |Tr(Pi rho(t))| / g[rho(t)] is sampled too.  For a pure initial state
    the exact supplier is the entrywise 1-norm of rho(t); for mixed states
    pass a g_lower-based supplier and read Q as an upper bound.

    Checks on the way out: occupancy stays in [0, 1] to 1e-9, and on
    uniformly spaced grids the central difference of occupancy reproduces J
    to the O(dt^2) tolerance 10 dt^2 ||[[Pi,H],H]||.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise ValueError("expected a nonempty 1-D time grid")
    if np.any(np.diff(times) <= 0):
        raise ValueError("time grid must be strictly increasing")
    rho0 = check_density_matrix(rho0)
    H = check_hermitian(H)
    if rho0.shape != H.shape or rho0.shape != pp.pi_plus.shape:
        raise ValueError("rho, H and the projector pair must share one dimension")

    C1 = _commutator(pp.pi_plus, H)
    lam, U = np.linalg.eigh(H)
    rho_rot = U.conj().T @ rho0 @ U

    n = times.size
    j_values = np.empty(n)
    occupancy = np.empty(n)
    q_values = np.empty(n) if g_supplier is not None else None
    g_values = np.empty(n) if g_supplier is not None else None
    for k, t in enumerate(times):
        phase = np.exp(1j * lam * t)
        rho_t = U @ (np.outer(phase, phase.conj()) * rho_rot) @ U.conj().T
        j_values[k] = _real(1j * np.trace(C1 @ rho_t), "current")
        occupancy[k] = _real(np.trace(pp.pi_plus @ rho_t), "occupancy")
        if g_supplier is not None:
            g = float(g_supplier(rho_t))
            if g <= 0:
                raise ValueError(f"g supplier returned {g} at t = {t}")
            g_values[k] = g
            q_values[k] = 2 * abs(occupancy[k]) / g

    if occupancy.min() < -1e-9 or occupancy.max() > 1 + 1e-9:
        raise ValueError(
            f"occupancy left [0, 1]: range [{occupancy.min():.3e}, {occupancy.max():.3e}]"
        )
    steps = np.diff(times)
    uniform = steps.size >= 2 and float(np.abs(steps - steps[0]).max()) < 1e-12
    if uniform:
        dt = float(steps[0])
        C2 = _commutator(C1, H)
        tol = 10 * dt**2 * float(np.linalg.norm(C2, 2))
        resid = np.abs((occupancy[2:] - occupancy[:-2]) / (2 * dt) - j_values[1:-1])
        if resid.size and float(resid.max()) > tol:
            raise ValueError(
                f"central difference of occupancy disagrees with J: "
                f"max residual {resid.max():.3e} > {tol:.3e}"
            )
    return CurrentSeries(
        times=times,
        j_values=j_values,
        occupancy=occupancy,
        z=pp.z,
        q_values=q_values,
        g_values=g_values,
    )


def q_of_t(rho0, H, pp: ProjectorPair, t: float, g_supplier) -> tuple[float, float]:
    """Q(t) = 2 |Tr(Pi(z) rho(t))| / g[rho(t)] and the product Q(t) g[rho(t)].

    The product 2|Tr(Pi rho(t))| is what links dQ/dt to the current, so it is
    returned alongside Q.  `g_supplier` maps rho(t) to g; use the entrywise
    1-norm for pure states (exact) or a g_lower supplier for mixed ones.
    """
    rho_t = evolve(rho0, H, t)
    occ = _real(np.trace(pp.pi_plus @ rho_t), "occupancy")
    qg = 2 * abs(occ)
    g = float(g_supplier(rho_t))
    if g <= 0:
        raise ValueError(f"g supplier returned {g}")
    return qg / g, qg


def projected_unitary_is_rescaling(V, pp: ProjectorPair) -> bool:
    """Check that Pi(z) V and Pi(-z) V are rescaling matrices for unitary V.

    Also verifies the mechanism: the diagonal of Pi V V^dagger Pi is
    identically 1/2, which is what caps the row norms at 1/sqrt(2).
    """
    V = np.asarray(V, dtype=complex)
    n = pp.pi_plus.shape[0]
    if V.shape != (n, n):
        raise ValueError(f"V has shape {V.shape}, expected ({n}, {n})")
    if float(np.abs(V @ V.conj().T - np.eye(n)).max()) > 1e-10:
        raise ValueError("V is not unitary")
    ok_plus = rescaling_norm(pp.pi_plus @ V) <= 1 + 1e-12
    ok_minus = rescaling_norm(pp.pi_minus @ V) <= 1 + 1e-12
    diag = np.diagonal(pp.pi_plus @ V @ V.conj().T @ pp.pi_plus)
    ok_diag = float(np.abs(diag - 0.5).max()) <= 1e-10
    return bool(ok_plus and ok_minus and ok_diag)


@dataclass(frozen=True)
class OpenIsolatedComparison:
    """Q evaluated on d-dim objects against Q1 on their 2d-dim Bargmann images.

    The trace Tr(W^dagger theta V) is invariant under the embedding, but the
    normalizations N and g are not, so Q != Q1 in general.
    """

    q: float
    q1: float
    trace_value: complex
    trace_value_bargmann: complex
    g_lower: float
    g1_lower: float
    n_v: float
    n_w: float
    n_v1: float
    n_w1: float


def open_vs_isolated_report(
    theta, V, W, z: complex, restarts: int = 64, seed: int = 0
) -> OpenIsolatedComparison:
    """Compare the quantum form before and after the z-Bargmann embedding."""
    theta = np.asarray(theta, dtype=complex)
    V = np.asarray(V, dtype=complex)
    W = np.asarray(W, dtype=complex)
    if not theta.shape == V.shape == W.shape:
        raise ValueError("theta, V, W must share one shape")
    theta1 = to_bargmann_mat(theta, z)
    V1 = to_bargmann_mat(V, z)
    W1 = to_bargmann_mat(W, z)
    g = g_lower(theta, restarts=restarts, seed=seed).g_lower
    g1 = g_lower(theta1, restarts=restarts, seed=seed).g_lower
    return OpenIsolatedComparison(
        q=quantum_form(theta, V, W, g),
        q1=quantum_form(theta1, V1, W1, g1),
        trace_value=complex(np.trace(W.conj().T @ theta @ V)),
        trace_value_bargmann=complex(np.trace(W1.conj().T @ theta1 @ V1)),
        g_lower=g,
        g1_lower=g1,
        n_v=rescaling_norm(V),
        n_w=rescaling_norm(W),
        n_v1=rescaling_norm(V1),
        n_w1=rescaling_norm(W1),
    )
