"""pairframe: finite-dimensional frame theory on C^n.

Classify operator families as frames, build multiplier (pair-frame)
operators from weighted family pairs, bound their norms, and invert them
with truncated Neumann series — with brute-force oracles and deterministic
generators for validation.
"""

from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    EmptyMatrixError,
    ExponentMismatchError,
    FrameFileError,
    InvalidExponentError,
    InvalidSpecError,
    NonSquareError,
    NotAFrameError,
    NotHermitianError,
    PairFrameError,
    SingularMatrixError,
)
from .frames import (
    ClassificationReport,
    FrameBounds,
    OperatorFamily,
    analysis,
    canonical_dual,
    classify,
    frame_operator,
    synthesis,
)
from .generators import GenSpec, generate, generate_pair
from .neumann import (
    NearIdentityReport,
    NeumannTrace,
    find_alpha,
    neumann_inverse,
    neumann_trace,
    reconstruct,
)
from .oracle import OracleConfig, brute_numerical_range, sphere_extremes
from .pairs import (
    PairReport,
    PairSystem,
    PqBoundReport,
    WeightSequence,
    adjoint_check,
    classify_pair,
    compose,
    p_bessel_bound,
    pair_operator,
    pair_operator_stacked,
    pq_pair_norm_bound,
)
from .spectral import (
    SpectralReport,
    hermitian_extremes,
    invert,
    is_hermitian,
    min_singular,
    numerical_range_bounds,
    op_norm,
)

__version__ = "0.1.0"

__all__ = [
    "PairFrameError",
    "NonSquareError",
    "NotHermitianError",
    "EmptyMatrixError",
    "SingularMatrixError",
    "DimensionMismatchError",
    "NotAFrameError",
    "InvalidExponentError",
    "ExponentMismatchError",
    "InvalidSpecError",
    "DimensionTooLargeError",
    "FrameFileError",
    "OperatorFamily",
    "FrameBounds",
    "ClassificationReport",
    "analysis",
    "synthesis",
    "frame_operator",
    "classify",
    "canonical_dual",
    "WeightSequence",
    "PairSystem",
    "PairReport",
    "PqBoundReport",
    "pair_operator",
    "pair_operator_stacked",
    "adjoint_check",
    "classify_pair",
    "compose",
    "p_bessel_bound",
    "pq_pair_norm_bound",
    "NearIdentityReport",
    "NeumannTrace",
    "find_alpha",
    "neumann_inverse",
    "neumann_trace",
    "reconstruct",
    "GenSpec",
    "generate",
    "generate_pair",
    "OracleConfig",
    "sphere_extremes",
    "brute_numerical_range",
    "SpectralReport",
    "hermitian_extremes",
    "min_singular",
    "op_norm",
    "invert",
    "is_hermitian",
    "numerical_range_bounds",
]
