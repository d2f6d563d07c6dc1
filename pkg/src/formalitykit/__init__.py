"""Exact computational homological algebra for graded algebras:
Hochschild cohomology, minimal resolution Tor terms, and replayable
intrinsic formality certificates."""

__version__ = "0.1.0"

from .errors import (
    InputValidationError,
    NonExactResolutionError,
    ResourceCapError,
    TruncationError,
    ZeroGradedObjectError,
)
from .fields import FieldSpec, PrimeField, Rationals, RATIONALS, RATIONALS_SPEC
from .linalg import ExactMatrix, kernel_basis, quotient_dim, rank, subspace_meet
from .configurations import (
    ConfigGraph,
    EdgeData,
    PoincarePolynomial,
    graded_power,
    kunneth_hom,
    normalize_shifts,
    normalized_edge_degrees,
    sign_assignment,
)
from .graded import (
    GradedAlgebra,
    GradedBimodule,
    GradedVectorSpace,
    algebra_from_json_dict,
    algebra_to_json_dict,
    block_structure,
    build_configuration_algebra,
    detect_idempotents,
    diagonal_bimodule,
    maxdeg,
    mindeg,
    shift_bimodule,
    truncated_poly,
    validate,
    validate_bimodule,
)
from .hochschild import (
    DEFAULT_MAX_WORDS,
    HHResult,
    PeriodicResolutionSpec,
    bar_chain_slice,
    cochain_dim,
    hh_bar,
    hh_resolution,
    kadeishvili_scan,
    nonempty_internal_degrees,
    periodic_spec_truncated_poly,
    validate_periodic_spec,
)
from .presentations import (
    Generator,
    HomogeneousIdeal,
    TensorPresentation,
    algebra_dims,
    augmentation_ideal,
    certified_maxdeg,
    configuration_presentation,
    generator_span,
    ideal_from_relations,
    ideal_meet,
    ideal_product,
    ideal_sum,
    mindeg_bound,
    presentation_from_json_dict,
    presentation_to_json_dict,
    single_generator_presentation,
    tor_mindeg_affine,
    tor_mindeg_branches,
    tor_term,
    word_basis,
)
from .formality import (
    FormalityCertificate,
    RecheckReport,
    certify_config_pn,
    certify_config_spherical,
    certify_single,
    cy_normalize,
    mirrored_degree_inequality,
    verify_certificate,
)
