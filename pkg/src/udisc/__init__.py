"""Unambiguous discrimination of quantum mixed states.

Classification of ensembles (Perfect / Unambiguous / NotUnambiguous),
explicit witness measurements, nested fidelity-based lower bounds on the
inconclusive probability, and a desk-scale optimizer used as ground truth.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    ProofChainSlacks,
    bound_series,
    coefficient_c,
    fidelity,
    fidelity_matrix,
    verify_proof_chain,
)
from .classify import (
    NOT_UNAMBIGUOUS,
    PERFECT,
    UNAMBIGUOUS,
    DistinguishabilityClass,
    check_cross_annihilation,
    classify_ensemble,
    linear_independence_gap,
    perfect_povm,
)
from .generators import (
    GenSpec,
    orthogonal_family,
    shared_support_counterexample,
    random_density,
    random_ensemble,
    two_pure_ensemble,
)
from .numerics import (
    DEFAULT_TOL,
    HermitianEig,
    ToleranceConfig,
    complement_basis,
    hermitian_eig,
    orthonormal_range,
    psd_sqrt,
    trace_norm,
)
from .oracle import OptimizationResult, two_pure_optimal, optimal_unambiguous
from .states import (
    DensityMatrix,
    DiscriminationOutcome,
    Ensemble,
    Povm,
    evaluate_povm,
    make_ensemble,
    uniform_priors,
    validate_density,
    validate_povm,
)
from .supports import (
    IdentifiabilityCheck,
    OrthogonalityCheck,
    SupportSubspace,
    is_orthogonal_family,
    joint_support,
    support_of,
    unambiguous_condition,
)
from .witness import WitnessSet, build_witness_povm, witness_vectors

__all__ = [
    "BoundReport",
    "DEFAULT_TOL",
    "DensityMatrix",
    "DiscriminationOutcome",
    "DistinguishabilityClass",
    "Ensemble",
    "GenSpec",
    "HermitianEig",
    "IdentifiabilityCheck",
    "NOT_UNAMBIGUOUS",
    "OptimizationResult",
    "OrthogonalityCheck",
    "PERFECT",
    "Povm",
    "ProofChainSlacks",
    "SupportSubspace",
    "ToleranceConfig",
    "UNAMBIGUOUS",
    "WitnessSet",
    "bound_series",
    "build_witness_povm",
    "check_cross_annihilation",
    "classify_ensemble",
    "coefficient_c",
    "complement_basis",
    "evaluate_povm",
    "fidelity",
    "fidelity_matrix",
    "hermitian_eig",
    "is_orthogonal_family",
    "joint_support",
    "two_pure_optimal",
    "linear_independence_gap",
    "make_ensemble",
    "optimal_unambiguous",
    "orthogonal_family",
    "orthonormal_range",
    "shared_support_counterexample",
    "perfect_povm",
    "psd_sqrt",
    "random_density",
    "random_ensemble",
    "support_of",
    "trace_norm",
    "two_pure_ensemble",
    "unambiguous_condition",
    "uniform_priors",
    "validate_density",
    "validate_povm",
    "verify_proof_chain",
    "witness_vectors",
]
