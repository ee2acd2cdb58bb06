"""Local singularity invariants over Q, F_p and k(t), and completed fibres of
families over Z and k[t]."""

__version__ = "0.1.0"

from .coeff import (
    QQ,
    PrimeField,
    PrimeFieldElement,
    RationalField,
    RationalFunction,
    RationalFunctionField,
    is_prime,
    parse_field,
    reduce_mod_p,
)
from .errors import *  # noqa: F401,F403
from .fibres import (
    GENERIC,
    FamilySpec,
    FibreReport,
    Generic,
    ModularReport,
    Prime,
    SemicontinuityReport,
    Value,
    completed_fibre_dimension,
    default_primes,
    fibre_field,
    fibre_invariant_scan,
    format_family,
    load_family,
    modular_scan,
    parse_family,
    parse_point,
    semicontinuity_check,
    specialize,
)
from .invariants import (
    InvariantReport,
    NotSingularAtOrigin,
    determinacy_bound,
    full_report,
    has_isolated_singularity,
    is_complete_intersection,
    jacobian_ideal,
    milnor_number,
    mu_equals_tau,
    singular_locus_ideal,
    tjurina_module_dimension,
    tjurina_module_gens,
    tjurina_number,
)
from .mora import (
    MonomialModule,
    StandardBasis,
    ideal_membership_local,
    krull_dimension,
    leading_module,
    mora_normal_form,
    reduce_modulo,
    standard_basis,
    vector_space_dimension,
)
from .oracle import UNSTABLE, oracle_dimension, truncated_dimension_oracle
from .parsing import parse_polynomial, parse_vector
from .poly import (
    DS,
    INFINITY,
    LS,
    FreeModuleVector,
    LocalOrdering,
    ModuleVector,
    PolyMatrix,
    Polynomial,
    Ring,
    compare_monomials,
    determinant,
    jacobian_matrix,
    make_ring,
    minors,
    order_of_ideal,
)
