"""ulrichlab: exact cohomology of Frobenius pushforwards on hypersurfaces.

Everything is computed over F_p with exact integer arithmetic: closed-form
line-bundle cohomology, direct-sum decompositions of F_*O(k) on P^n,
Fedder-style splitting tests with an independent second route through the
top-cohomology action, graded presentation matrices with Hilbert-function
cross-checks, and exact decisions of Ulrich-type vanishing conditions over
infinite twist rays.
"""

__version__ = "0.1.0"

from .kernel import (
    Monomial,
    Polynomial,
    PrimeField,
    binom,
    graded_piece_basis,
    graded_piece_dim,
    matrix_rank,
    MatrixFp,
    parse_polynomial,
    rank_mod_p,
)
from .splitting import (
    FrobActionMatrix,
    SplitVerdict,
    fedder_check,
    frobenius_action,
    random_homogeneous,
)
from .cohomology import (
    B1,
    AmbientSpace,
    BundleSpec,
    Counterexample,
    FrobPush,
    Hypersurface,
    NotSplit,
    ProjectiveSpace,
    ProvenVanishing,
    Ray,
    RayVerdict,
    TwistFamily,
    bundle_cohom_dim,
    hyp_cohom,
    line_cohom,
    pn_cohom,
    serre_dual_check,
    twist_model,
    vanishes_on_ray,
)
from .frobenius import (
    InsufficientWindow,
    PresentationMatrix,
    TwistMultiset,
    build_b1_presentation,
    build_frobpush_presentation,
    decompose_pn,
    hilbert_function,
    rank_from_hilbert,
)
from .classify import (
    THEOREMS,
    AuditCheck,
    ClassificationReport,
    ConditionRecord,
    Obstructions,
    TheoremAudit,
    UnsupportedSpace,
    Verdict,
    audit_theorem,
    classify,
)

__all__ = [
    "__version__",
    "PrimeField",
    "Monomial",
    "Polynomial",
    "parse_polynomial",
    "binom",
    "graded_piece_basis",
    "graded_piece_dim",
    "MatrixFp",
    "matrix_rank",
    "rank_mod_p",
    "SplitVerdict",
    "fedder_check",
    "FrobActionMatrix",
    "frobenius_action",
    "random_homogeneous",
    "ProjectiveSpace",
    "Hypersurface",
    "AmbientSpace",
    "FrobPush",
    "B1",
    "BundleSpec",
    "TwistFamily",
    "Ray",
    "ProvenVanishing",
    "Counterexample",
    "RayVerdict",
    "NotSplit",
    "pn_cohom",
    "hyp_cohom",
    "line_cohom",
    "serre_dual_check",
    "twist_model",
    "bundle_cohom_dim",
    "vanishes_on_ray",
    "TwistMultiset",
    "decompose_pn",
    "PresentationMatrix",
    "build_frobpush_presentation",
    "build_b1_presentation",
    "hilbert_function",
    "rank_from_hilbert",
    "InsufficientWindow",
    "ConditionRecord",
    "Obstructions",
    "Verdict",
    "ClassificationReport",
    "classify",
    "AuditCheck",
    "TheoremAudit",
    "audit_theorem",
    "THEOREMS",
    "UnsupportedSpace",
]
