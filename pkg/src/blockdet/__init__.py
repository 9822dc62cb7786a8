"""Determinants of N x N partitioned complex matrices.

The block engine reduces an N x N block matrix one pivot block at a time
and multiplies the pivot determinants; a dense LU factorization of the
flattened matrix serves as the independent oracle.  A 48x48 quark-matter
case study exercises the engine end to end.
"""

from .blocks import (
    BlockMatrix,
    BlockVectorColumn,
    BlockVectorRow,
    banachiewicz_inverse,
    flatten,
    partition,
    schur_complement_2x2,
    trailing_submatrix,
)
from .config import DEFAULT_TOL, Tolerances
from .dense import (
    LuFactors,
    det_dense,
    invert,
    lu_decompose,
    matadd,
    matmul,
    matsub,
    scalar_mul,
    solve,
)
from .engine import (
    AlphaTable,
    DetReport,
    alpha_direct,
    alpha_recursion,
    block_det,
    det_2x2_closed,
    det_2x2_commuting,
    det_3x3_closed,
)
from .errors import (
    BlockDetError,
    CommutatorViolation,
    DimensionMismatch,
    IndexOutOfRange,
    SingularMatrix,
    SingularPivotBlock,
)
from .njl import (
    EigenEnergySpectrum,
    GammaBasis,
    NjlParams,
    build_gamma_basis,
    build_njl_matrix,
    closed_form_det,
    eigen_energies,
    verify_njl,
)
from .scaled import ScaledDet, magnitude_ratio, relative_difference

__all__ = [
    "AlphaTable",
    "BlockDetError",
    "BlockMatrix",
    "BlockVectorColumn",
    "BlockVectorRow",
    "CommutatorViolation",
    "DEFAULT_TOL",
    "DetReport",
    "DimensionMismatch",
    "EigenEnergySpectrum",
    "GammaBasis",
    "IndexOutOfRange",
    "LuFactors",
    "NjlParams",
    "ScaledDet",
    "SingularMatrix",
    "SingularPivotBlock",
    "Tolerances",
    "alpha_direct",
    "alpha_recursion",
    "banachiewicz_inverse",
    "block_det",
    "build_gamma_basis",
    "build_njl_matrix",
    "closed_form_det",
    "det_2x2_closed",
    "det_2x2_commuting",
    "det_3x3_closed",
    "det_dense",
    "eigen_energies",
    "flatten",
    "invert",
    "lu_decompose",
    "magnitude_ratio",
    "matadd",
    "matmul",
    "matsub",
    "partition",
    "relative_difference",
    "scalar_mul",
    "schur_complement_2x2",
    "solve",
    "trailing_submatrix",
    "verify_njl",
]

__version__ = "0.1.0"
