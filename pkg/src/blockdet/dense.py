"""Dense complex matrix core.

Matrices are numpy ``complex128`` arrays throughout.  The LU factorization
here (partial pivoting, scale-aware singularity flag, permutation parity)
is the substrate for the dense determinant oracle and for every inverse or
solve the block layer requests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DimensionMismatch, SingularMatrix
from .scaled import ScaledDet


def as_matrix(data) -> np.ndarray:
    """Validate and copy input into a finite complex128 2-D array."""
    m = np.array(data, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D array, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"empty matrix of shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")


@dataclass(frozen=True)
class LuFactors:
    """Combined L\\U storage with pivot metadata.

    ``lu`` holds U on and above the diagonal and the unit-lower-triangular
    multipliers below it.  ``pivots`` is the row permutation applied to the
    input (row i of PA is row pivots[i] of A) and ``parity`` its sign.
    """

    lu: np.ndarray
    pivots: np.ndarray
    parity: int
    singular: bool

    @property
    def dim(self) -> int:
        return self.lu.shape[0]

    def lower(self) -> np.ndarray:
        return np.tril(self.lu, -1) + np.eye(self.dim)

    def upper(self) -> np.ndarray:
        return np.triu(self.lu)


def lu_decompose(m, tol: Tolerances = DEFAULT_TOL) -> LuFactors:
    """LU with partial pivoting; singularity is flagged, never raised."""
    a = as_matrix(m)
    _require_square(a)
    dim = a.shape[0]
    scale = np.max(np.abs(a))
    threshold = tol.pivot_scale * scale * dim
    pivots = np.arange(dim)
    parity = 1
    singular = False
    for col in range(dim):
        sub = np.abs(a[col:, col])
        p = col + int(np.argmax(sub))
        if p != col:
            a[[col, p]] = a[[p, col]]
            pivots[[col, p]] = pivots[[p, col]]
            parity = -parity
        pivot = a[col, col]
        if abs(pivot) <= threshold:
            singular = True
            continue
        if col + 1 < dim:
            a[col + 1 :, col] /= pivot
            a[col + 1 :, col + 1 :] -= np.outer(a[col + 1 :, col], a[col, col + 1 :])
    return LuFactors(lu=a, pivots=pivots, parity=parity, singular=singular)


def det_dense(m, tol: Tolerances = DEFAULT_TOL) -> ScaledDet:
    """Determinant via LU: parity times the product of U's diagonal."""
    factors = lu_decompose(m, tol)
    if factors.singular:
        return ScaledDet.zero()
    det = ScaledDet.from_factors(np.diag(factors.lu))
    return det * ScaledDet.from_complex(factors.parity)


def solve_factored(factors: LuFactors, rhs: np.ndarray) -> np.ndarray:
    if factors.singular:
        raise SingularMatrix("matrix is singular to working precision")
    b = rhs[factors.pivots].astype(np.complex128, copy=True)
    lu = factors.lu
    dim = factors.dim
    for i in range(1, dim):  # forward, unit lower triangle
        b[i] -= lu[i, :i] @ b[:i]
    for i in range(dim - 1, -1, -1):  # backward
        if i + 1 < dim:
            b[i] -= lu[i, i + 1 :] @ b[i + 1 :]
        b[i] /= lu[i, i]
    return b


def solve(m, rhs, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Solve m @ x = rhs for a square m and conformable rhs."""
    a = as_matrix(m)
    _require_square(a)
    b = as_matrix(rhs)
    if b.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            f"rhs has {b.shape[0]} rows, matrix dimension is {a.shape[0]}"
        )
    return solve_factored(lu_decompose(a, tol), b)


def invert(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    a = as_matrix(m)
    _require_square(a)
    return solve(a, np.eye(a.shape[0], dtype=np.complex128), tol)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def matadd(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    return a + b


def matsub(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot subtract {b.shape} from {a.shape}")
    return a - b


def scalar_mul(c: complex, a) -> np.ndarray:
    return complex(c) * as_matrix(a)
