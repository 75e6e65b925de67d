"""Hochschild homology over F2, Hochschild-Tate bicomplexes and pi-formality."""

from .algebra import AlgebraError, FinDGAlgebra, build_algebra, check_dga_axioms, find_isomorphism, opposite
from .complexes import (
    Bicomplex,
    BoundednessError,
    ComplexError,
    GradedComplex,
    PeriodicBicomplex,
    SpectralPage,
    homology,
    infinity_page,
    sequence_page_dims,
    spectral_page,
    total_complex,
    total_homology_dims,
)
from .f2 import Echelon, F2Matrix, F2Vector, kernel_basis, rank, solve
from .hochschild import (
    HochschildModel,
    ModelError,
    PairedAlgebras,
    diagonal_pairing,
    extreme_pairing,
    hochschild_homology,
    materialize,
    model_diagonal,
    model_diagonal_square,
    model_extreme_cobar,
    model_extreme_cobar_square,
    relative_grading,
)
from .quiver import QuiverPresentation, extreme_algebra, extreme_generator_pairs, quadratic_dual_extreme
from .smith import (
    CellComplexError,
    DeltaComplexWithInvolution,
    fixed_subcomplex,
    load_corpus,
    localization_check,
    smith_inequality_check,
    tate_homology,
)
from .strands import PointedMatchedCircle, antipodal_pmc, matched_algebra, strands_algebra
from .tate import (
    InternalInvariantError,
    LiftConfig,
    PiFormalityReport,
    TateStructure,
    d2_matches_hochschild,
    e1_equals_e2,
    rank_inequality_check,
    run_lift_chain,
    square_class,
    verify_algebra_pi_formality,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "antipodal_pmc",
    "Bicomplex",
    "BoundednessError",
    "build_algebra",
    "CellComplexError",
    "check_dga_axioms",
    "ComplexError",
    "d2_matches_hochschild",
    "DeltaComplexWithInvolution",
    "diagonal_pairing",
    "e1_equals_e2",
    "Echelon",
    "extreme_algebra",
    "extreme_generator_pairs",
    "extreme_pairing",
    "F2Matrix",
    "F2Vector",
    "find_isomorphism",
    "FinDGAlgebra",
    "fixed_subcomplex",
    "GradedComplex",
    "hochschild_homology",
    "HochschildModel",
    "homology",
    "infinity_page",
    "InternalInvariantError",
    "kernel_basis",
    "LiftConfig",
    "load_corpus",
    "localization_check",
    "matched_algebra",
    "materialize",
    "model_diagonal",
    "model_diagonal_square",
    "model_extreme_cobar",
    "model_extreme_cobar_square",
    "ModelError",
    "opposite",
    "PairedAlgebras",
    "PeriodicBicomplex",
    "PiFormalityReport",
    "PointedMatchedCircle",
    "quadratic_dual_extreme",
    "QuiverPresentation",
    "rank",
    "rank_inequality_check",
    "relative_grading",
    "run_lift_chain",
    "sequence_page_dims",
    "smith_inequality_check",
    "solve",
    "spectral_page",
    "SpectralPage",
    "square_class",
    "strands_algebra",
    "tate_homology",
    "TateStructure",
    "total_complex",
    "total_homology_dims",
    "verify_algebra_pi_formality",
]
