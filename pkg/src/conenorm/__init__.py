"""Certified mixed matrix norms on the nonnegative cone.

The package computes subordinate norms ``max ||A x||_alpha / ||x||_beta``
for nonnegative matrices by a fixed-point iteration whose convergence is
certified through contraction in the projective metric, and applies the
same contraction machinery to lower-bound log-Sobolev constants of
finite Markov chains.
"""

from .cone import (
    birkhoff_ratio,
    comparable,
    cross_ratio_diameter,
    hilbert_distance,
    projective_diameter,
    sup_ratio,
    support,
)
from .logsobolev import (
    HypercontractivityReport,
    LscEntry,
    LscReport,
    MarkovChain,
    adjoint,
    dirichlet_and_entropy,
    hypercontractive_check,
    rho,
    sigma_lower_bound,
    spectral_gap,
    stationary_distribution,
    transition_semigroup,
    two_state_rho,
    two_state_sigma,
)
from .norms import (
    ComposedNorm,
    DualComposedNorm,
    NotEvaluableError,
    WeightedPNorm,
    dual_exponent,
    dual_norm_value,
    dual_weights,
    duality_map,
    duality_map_contraction_bound,
    norm_value,
    phi,
    spec_from_dict,
    spec_to_dict,
    unit_basis_norms,
)
from .power import (
    Certificate,
    CertificateError,
    CorollaryTau,
    PowerResult,
    ProblemInstance,
    apply_S,
    certificate,
    check_gram_irreducible,
    corollary_tau,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # cone geometry
    "support",
    "comparable",
    "sup_ratio",
    "hilbert_distance",
    "projective_diameter",
    "cross_ratio_diameter",
    "birkhoff_ratio",
    # norm specs
    "WeightedPNorm",
    "ComposedNorm",
    "DualComposedNorm",
    "NotEvaluableError",
    "phi",
    "dual_exponent",
    "dual_weights",
    "norm_value",
    "dual_norm_value",
    "duality_map",
    "duality_map_contraction_bound",
    "unit_basis_norms",
    "spec_to_dict",
    "spec_from_dict",
    # certified iteration
    "ProblemInstance",
    "Certificate",
    "CertificateError",
    "PowerResult",
    "CorollaryTau",
    "check_gram_irreducible",
    "apply_S",
    "certificate",
    "solve",
    "corollary_tau",
    # Markov chains
    "MarkovChain",
    "stationary_distribution",
    "adjoint",
    "transition_semigroup",
    "rho",
    "two_state_rho",
    "two_state_sigma",
    "spectral_gap",
    "sigma_lower_bound",
    "LscEntry",
    "LscReport",
    "dirichlet_and_entropy",
    "hypercontractive_check",
    "HypercontractivityReport",
]
