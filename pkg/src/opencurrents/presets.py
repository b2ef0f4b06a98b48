"""Built-in reference inputs for the command line tools.

The two 6x6 Hamiltonians and the initial states act on the doubled space of
a d = 3 system (2d = 6); they are the configurations behind the reference
coefficient table and the published curves.
"""

from __future__ import annotations

import numpy as np

from .bargmann import ProjectorPair, projector

# Pure initial state (1/4)(0, 2, -i, 3, 1, 1); the third entry is -i because
# the source writes the tuple as a daggered row.
V0 = np.array([0, 2, -1j, 3, 1, 1], dtype=complex) / 4

H1 = np.array(
    [
        [1, 0, 1j, 2, 0, 1],
        [0, 1, 0, 0, 0, 0],
        [-1j, 0, 3, 0, 0, -4j],
        [2, 0, 0, 4, 0, 0],
        [0, 0, 0, 0, 5, 0],
        [1, 0, 4j, 0, 0, 4],
    ],
    dtype=complex,
)

H2 = np.diag(np.arange(1, 7)).astype(complex)

HAMILTONIAN_NAMES = ("H1", "H2")
STATE_NAMES = ("v0", "maximally-mixed-bargmann")

# Dimension of the embedded system the builtins belong to.
BUILTIN_D = 3


def builtin_hamiltonian(name: str) -> np.ndarray:
    if name == "H1":
        return H1.copy()
    if name == "H2":
        return H2.copy()
    raise KeyError(name)


def builtin_state(name: str, pp: ProjectorPair | None = None, z: complex | None = None):
    """Resolve a builtin initial state to (rho0, is_pure).

    "v0" is the pure state V0; "maximally-mixed-bargmann" is Pi(z)/d, the
    image of the maximally mixed d-level state, and needs z (or a projector
    pair) to exist.
    """
    if name == "v0":
        return np.outer(V0, V0.conj()), True
    if name == "maximally-mixed-bargmann":
        if pp is None:
            if z is None:
                raise ValueError("maximally-mixed-bargmann needs z")
            pp = projector(BUILTIN_D, z)
        return pp.pi_plus / pp.d, False
    raise KeyError(name)
