"""Exact-arithmetic toolkit for Rota-Baxter operators on small algebras.

Everything is computed over exact fields (rationals, prime fields and
quadratic extensions), with structure-constant algebras, operator
verification and construction, polynomial-system generation for the
diagonal Jordan family, Yang-Baxter tensor bridges, exhaustive searches
over finite fields and orbit classification of the results.
"""

from .algebras import (
    Algebra,
    Element,
    QuadraticStructure,
    build_algebra,
    cayley_dickson,
    check_automorphism,
    check_subalgebra,
    derived_algebra,
    grassmann2,
    jordan_form,
    kaplansky3,
    matrix_algebra,
    sl2,
    termwise_power,
    verify_quadratic,
)
from .errors import RbxError
from .fields import (
    Field,
    FieldElement,
    PrimeField,
    QuadraticExtension,
    Rationals,
    field_from_text,
    field_to_text,
)
from .formats import (
    algebra_from_text,
    algebra_to_text,
    operator_from_text,
    operator_to_text,
    tensor_from_text,
    tensor_to_text,
)
from .jordan import (
    JordanSpec,
    NormalizedForm,
    PolynomialSystem,
    SkewWitness,
    block_pair_op,
    classify_case,
    gen_system,
    jordan_diagonal,
    nonsplit_dim4_op,
    normalize_and_classify,
    random_skew_witness,
    rank_one_split_op,
    raw_assignment,
    rb_to_skew,
    skew_to_rb,
    split_dim4_op,
)
from .linalg import Matrix, Subspace, rank_nullspace, solve
from .orbits import (
    CLAIMS,
    ClaimReport,
    OrbitReport,
    orbit_classify,
    verify_claim,
)
from .rb import (
    Decomposition,
    LinearOperator,
    OperatorReport,
    RBOperator,
    RBTriple,
    apply_phi,
    check_derivation_weight,
    check_rb,
    coerce_weight,
    conjugate,
    diagnostics,
    is_splitting,
    left_mult_op,
    nonsplit_weight1_op,
    normalize_weight,
    op_from_isotropic_map,
    partial_sum_op,
    rb_from_inverse_derivation,
    rb_to_triple,
    split_op,
    splitting_witness,
    triple_to_rb,
    trivial_rb_ops,
    weight0_matrix_ops,
)
from .search import (
    enumerate_automorphisms,
    enumerate_automorphisms_raw,
    enumerate_derivations,
    enumerate_rb,
    enumerate_rb_raw,
)
from .ybe import (
    AssociativeForm,
    Tensor2,
    check_associative_form,
    check_aybe,
    check_naybe,
    corner_pair_tensor,
    op_from_tensor_form,
    op_from_tensor_sandwich,
    tensor_from_op,
    trace_form,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AssociativeForm",
    "CLAIMS",
    "ClaimReport",
    "Decomposition",
    "Element",
    "Field",
    "FieldElement",
    "JordanSpec",
    "LinearOperator",
    "Matrix",
    "NormalizedForm",
    "OperatorReport",
    "OrbitReport",
    "PolynomialSystem",
    "PrimeField",
    "QuadraticExtension",
    "QuadraticStructure",
    "RBOperator",
    "RBTriple",
    "Rationals",
    "RbxError",
    "SkewWitness",
    "Subspace",
    "Tensor2",
    "algebra_from_text",
    "algebra_to_text",
    "apply_phi",
    "block_pair_op",
    "build_algebra",
    "cayley_dickson",
    "check_associative_form",
    "check_automorphism",
    "check_aybe",
    "check_derivation_weight",
    "check_naybe",
    "check_rb",
    "check_subalgebra",
    "classify_case",
    "coerce_weight",
    "conjugate",
    "corner_pair_tensor",
    "derived_algebra",
    "diagnostics",
    "enumerate_automorphisms",
    "enumerate_automorphisms_raw",
    "enumerate_derivations",
    "enumerate_rb",
    "enumerate_rb_raw",
    "field_from_text",
    "field_to_text",
    "gen_system",
    "grassmann2",
    "is_splitting",
    "jordan_diagonal",
    "jordan_form",
    "kaplansky3",
    "left_mult_op",
    "matrix_algebra",
    "nonsplit_dim4_op",
    "nonsplit_weight1_op",
    "normalize_and_classify",
    "normalize_weight",
    "op_from_isotropic_map",
    "op_from_tensor_form",
    "op_from_tensor_sandwich",
    "operator_from_text",
    "operator_to_text",
    "orbit_classify",
    "partial_sum_op",
    "random_skew_witness",
    "rank_nullspace",
    "rank_one_split_op",
    "raw_assignment",
    "rb_from_inverse_derivation",
    "rb_to_skew",
    "rb_to_triple",
    "skew_to_rb",
    "sl2",
    "solve",
    "split_dim4_op",
    "split_op",
    "splitting_witness",
    "tensor_from_op",
    "tensor_from_text",
    "tensor_to_text",
    "termwise_power",
    "trace_form",
    "triple_to_rb",
    "trivial_rb_ops",
    "verify_claim",
    "verify_quadratic",
    "weight0_matrix_ops",
]
