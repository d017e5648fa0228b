"""MDS convolutional codes from superregular matrices.

The package constructs rate k/n, degree delta convolutional codes whose
coefficient layout is a block of a superregular matrix (Cauchy circulant or
exponent grid), verifies the sufficiency hypotheses exhaustively, and
computes exact free distances on small-field instances.
"""

from .codefile import CodeFile
from .constructions import (
    Construction,
    MdsCertificate,
    cauchy_matrix,
    construct,
    construct_high,
    construct_low,
    exponential_matrix,
    min_field_size,
    verify_mds_hypotheses,
)
from .convcode import (
    ConvCode,
    PolyMatrix,
    PolyVector,
    code_degree,
    code_from_layout,
    encode,
    hcm,
    is_column_reduced,
    layout_from_code,
    stacked,
    weight,
)
from .distance import (
    BruteForceResult,
    MdsResult,
    TrellisConfig,
    free_distance_bruteforce,
    free_distance_trellis,
    is_mds,
    singleton_bound,
)
from .errors import MdsConvError
from .galois import (
    Field,
    FieldElement,
    element_order,
    field_create,
    find_element_of_order,
    find_nonsquare,
    find_primitive,
    is_square,
)
from .kernels import BACKEND
from .linalg import (
    Matrix,
    Witness,
    combine_columns,
    fullsize_minors_nonzero,
    is_superregular,
    minor,
    rank,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BruteForceResult",
    "CodeFile",
    "Construction",
    "ConvCode",
    "Field",
    "FieldElement",
    "Matrix",
    "MdsCertificate",
    "MdsConvError",
    "MdsResult",
    "PolyMatrix",
    "PolyVector",
    "TrellisConfig",
    "Witness",
    "cauchy_matrix",
    "code_degree",
    "code_from_layout",
    "combine_columns",
    "construct",
    "construct_high",
    "construct_low",
    "element_order",
    "encode",
    "exponential_matrix",
    "field_create",
    "find_element_of_order",
    "find_nonsquare",
    "find_primitive",
    "free_distance_bruteforce",
    "free_distance_trellis",
    "fullsize_minors_nonzero",
    "hcm",
    "is_column_reduced",
    "is_mds",
    "is_square",
    "is_superregular",
    "layout_from_code",
    "min_field_size",
    "minor",
    "rank",
    "singleton_bound",
    "stacked",
    "verify_mds_hypotheses",
    "weight",
]
