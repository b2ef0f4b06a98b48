"""Open quantum systems by direct-sum embedding.

A d-level system is embedded into an isolated 2d-level one through the
semi-unitary matrices M(z); probability currents through the embedding
projector and Grothendieck quadratic-form quantities (C, Q, g, g', N) then
quantify how open the small system is.
"""

from .bargmann import (
    BargmannVector,
    ProjectorPair,
    SemiUnitary,
    build_M,
    change_representation_mat,
    change_representation_vec,
    coherent_family,
    from_bargmann_mat,
    from_bargmann_vec,
    is_physical_mat,
    is_physical_vec,
    projector,
    projector_pair_z,
    to_bargmann_mat,
    to_bargmann_vec,
)
from .dynamics import (
    CurrentSeries,
    OpenIsolatedComparison,
    TaylorCurrent,
    check_density_matrix,
    current,
    current_derivatives_at_zero,
    current_series,
    evolve,
    open_vs_isolated_report,
    projected_unitary_is_rescaling,
    q_of_t,
    taylor_current_eval,
)
from .grothendieck import (
    K_G_UPPER,
    GrothendieckReport,
    classical_form,
    component_q,
    dequantisation_matrix,
    g_lower,
    g_prime,
    g_pure,
    normalize_rescaling,
    quantum_form,
    rescaling_norm,
    tomography_q,
    weyl_q,
    wigner_q,
    window_check,
)
from .hilbert import (
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

__version__ = "0.1.0"

__all__ = [
    "BargmannVector",
    "CurrentSeries",
    "GrothendieckReport",
    "K_G_UPPER",
    "OpenIsolatedComparison",
    "ProjectorPair",
    "SemiUnitary",
    "TaylorCurrent",
    "build_M",
    "change_representation_mat",
    "change_representation_vec",
    "check_density_matrix",
    "check_hermitian",
    "check_unit_modulus",
    "classical_form",
    "clock_Z",
    "coherent_family",
    "component_q",
    "current",
    "current_derivatives_at_zero",
    "current_series",
    "dequantisation_matrix",
    "displaced_parity",
    "displacement",
    "evolve",
    "fourier_matrix",
    "from_bargmann_mat",
    "from_bargmann_vec",
    "g_lower",
    "g_prime",
    "g_pure",
    "hermitian_expm",
    "is_physical_mat",
    "is_physical_vec",
    "matrix_one_norm",
    "normalize_rescaling",
    "open_vs_isolated_report",
    "parity_matrix",
    "position_basis",
    "projected_unitary_is_rescaling",
    "projector",
    "projector_pair_z",
    "q_of_t",
    "quantum_form",
    "rescaling_norm",
    "shift_X",
    "taylor_current_eval",
    "to_bargmann_mat",
    "to_bargmann_vec",
    "tomography_q",
    "unit_circle",
    "weyl_q",
    "wigner_q",
    "window_check",
]
