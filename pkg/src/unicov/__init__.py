"""Covariant two-particle quantum maps: universal cloning and universal entanglement."""

from ._validation import DimensionError, NotAStateError, ValidationError, is_state
from .analysis import (
    TwoPartyDecomposition,
    entropy_minimizer,
    epsilon_separation,
    fidelity_maximizer,
    partial_trace,
    partial_transpose,
    partial_transpose_min_eig,
    trace_distance,
    two_party_decompose,
    verify_covariance,
    von_neumann_entropy,
)
from .bloch import (
    BlochRotation,
    bloch_compose,
    bloch_decompose,
    bloch_rotation,
    canonical_bloch_vector,
    generator,
    generator_basis,
    haar_unitary,
    purity_residual,
    random_density_matrix,
    random_pure_bloch_vector,
)
from .covmap import (
    CanonicalCoefficients,
    MapParams,
    apply,
    assemble_canonical_output,
    canonical_coefficients,
    canonical_spectrum,
    positivity_flags,
    region_scan,
    swap_operator,
    triple_points,
    verify_linearity,
)
from .estimators import CloningOptimizer, CovariantMap, EntropyMinimizer
from .processes import (
    antisymmetric_projector,
    bell_state,
    cloning_output,
    cloning_params,
    entangled_output,
    entangling_params,
    optimal_entropy,
)

__version__ = "0.1.0"
