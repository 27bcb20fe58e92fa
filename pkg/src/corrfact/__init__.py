"""Correlation-matrix factorizations, anticommuting generator families, and
cpsd witness matrices with dimension lower-bound certificates."""

from .clifford import (
    CliffordRep,
    gamma_generators,
    gamma_of_vector,
    irreducible_dim,
    verify_clifford_relations,
)
from .cpsd import (
    CpsdFactorization,
    CpsdRankCertificate,
    build_cpsd_factorization,
    build_pc,
    certify_lower_bound,
    extract_matrix_factorization,
    verify_cpsd_factorization,
)
from .elliptope import (
    CSystem,
    ExtremalityReport,
    check_extreme,
    check_membership,
    complete,
    gen_extreme_lex,
    gram_factors,
    project_bipartite,
    r_max,
    random_correlation,
    require_correlation,
    solve_lambda,
    verify_c_system,
)
from .factorization import (
    FormBFactorization,
    MatrixFactorization,
    factorize_clifford,
    orthonormalize_generators,
    recover_correlation,
    to_form_c,
    verify_clifford_identity,
    verify_factorization,
)
from .linalg import (
    DEFAULT_TOL,
    SchmidtDecomposition,
    ToleranceConfig,
    gram,
    hs_inner,
    is_psd,
    kron,
    numerical_rank,
    schmidt,
    vec,
    vec_inv,
)
from .quantum import (
    SchmidtState,
    TensorProductRep,
    build_tensor_rep,
    check_observable,
    eval_correlations,
    maximally_entangled,
    reduce_rank_one_rep,
    schmidt_state,
    to_matrix_factorization,
)
from .report import CheckResult, VerificationReport

__all__ = [
    "CliffordRep",
    "CSystem",
    "CheckResult",
    "CpsdFactorization",
    "CpsdRankCertificate",
    "DEFAULT_TOL",
    "ExtremalityReport",
    "FormBFactorization",
    "MatrixFactorization",
    "SchmidtDecomposition",
    "SchmidtState",
    "TensorProductRep",
    "ToleranceConfig",
    "VerificationReport",
    "build_cpsd_factorization",
    "build_pc",
    "build_tensor_rep",
    "certify_lower_bound",
    "check_extreme",
    "check_membership",
    "check_observable",
    "complete",
    "eval_correlations",
    "extract_matrix_factorization",
    "factorize_clifford",
    "gamma_generators",
    "gamma_of_vector",
    "gen_extreme_lex",
    "gram",
    "gram_factors",
    "hs_inner",
    "irreducible_dim",
    "is_psd",
    "kron",
    "maximally_entangled",
    "numerical_rank",
    "orthonormalize_generators",
    "project_bipartite",
    "r_max",
    "random_correlation",
    "recover_correlation",
    "reduce_rank_one_rep",
    "require_correlation",
    "schmidt",
    "schmidt_state",
    "solve_lambda",
    "to_form_c",
    "to_matrix_factorization",
    "vec",
    "vec_inv",
    "verify_c_system",
    "verify_clifford_identity",
    "verify_clifford_relations",
    "verify_cpsd_factorization",
    "verify_factorization",
]
