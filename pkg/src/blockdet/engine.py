"""Block determinant engine.

The determinant of an N x N block matrix is the product of N block
determinants, each the determinant of a successively reduced pivot block.
Two independent constructions of the reduced blocks are provided: the
level-by-level recursion (``alpha_recursion``), which consumes the
highest-index pivot first, and the direct trailing-corner form
(``alpha_direct``), which applies a single large solve per entry.  Their
agreement is a test invariant, not an implementation detail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .blocks import (
    BlockMatrix,
    column_vector,
    flatten,
    row_vector,
    trailing_submatrix,
)
from .dense import det_dense, lu_decompose, solve, solve_factored
from .errors import (
    CommutatorViolation,
    DimensionMismatch,
    IndexOutOfRange,
    SingularMatrix,
    SingularPivotBlock,
)
from .scaled import ScaledDet


@dataclass(frozen=True)
class AlphaTable:
    """The (N - level) x (N - level) grid of reduced blocks at one level."""

    level: int
    blocks: np.ndarray  # shape (m, m, n, n) with m = N - level

    @property
    def size(self) -> int:
        return self.blocks.shape[0]

    def block(self, i: int, j: int) -> np.ndarray:
        """1-based access."""
        if not (1 <= i <= self.size and 1 <= j <= self.size):
            raise IndexOutOfRange(f"index ({i},{j}) outside 1..{self.size}")
        return self.blocks[i - 1, j - 1]

    def to_block_matrix(self) -> BlockMatrix:
        return BlockMatrix(self.size, self.blocks.shape[2], self.blocks)


@dataclass(frozen=True)
class DetReport:
    """Determinant plus per-level diagnostics.

    ``factors[k]`` is the determinant of the pivot block consumed at level
    k (the final 1x1-level block for the last entry); their product is
    ``value``.  ``pivot_conditions`` are 2-norm condition estimates of the
    same blocks.
    """

    value: ScaledDet
    factors: tuple
    pivot_conditions: tuple


def alpha_recursion(
    bm: BlockMatrix, tol: Tolerances = DEFAULT_TOL
) -> list[AlphaTable]:
    """All reduction levels 0..N-1, each one block row/column smaller.

    Raises SingularPivotBlock naming the level and 1-based pivot index when
    a required pivot inverse fails.
    """
    N = bm.block_count
    tables = [AlphaTable(0, bm.blocks)]
    current = bm.blocks
    for level in range(N - 1):
        m = N - level
        pivot = current[m - 1, m - 1]
        factors = lu_decompose(pivot, tol)
        if factors.singular:
            raise SingularPivotBlock(level=level, index=m)
        nxt = np.empty((m - 1, m - 1) + current.shape[2:], dtype=np.complex128)
        # pivot^-1 applied once per block column of the last block row
        solved_row = [solve_factored(factors, current[m - 1, j]) for j in range(m - 1)]
        for i in range(m - 1):
            left = current[i, m - 1]
            for j in range(m - 1):
                nxt[i, j] = current[i, j] - left @ solved_row[j]
        tables.append(AlphaTable(level + 1, nxt))
        current = nxt
    return tables


def alpha_direct(
    bm: BlockMatrix, k: int, i: int, j: int, tol: Tolerances = DEFAULT_TOL
) -> np.ndarray:
    """Level-k reduced block (i, j) computed from the trailing corner.

    The correction is row_vector(i, N-k+1) times the inverse of the
    trailing k x k block corner times column_vector(N-k+1, j), applied as
    one (k*n)-dimensional solve.
    """
    N = bm.block_count
    if not 0 <= k <= N - 1:
        raise IndexOutOfRange(f"level {k} outside 0..{N - 1}")
    if not (1 <= i <= N - k and 1 <= j <= N - k):
        raise IndexOutOfRange(f"index ({i},{j}) outside 1..{N - k}")
    if k == 0:
        return bm.block(i, j).copy()
    corner = flatten(trailing_submatrix(bm, k))
    row = row_vector(bm, i, N - k + 1).assemble()
    col = column_vector(bm, N - k + 1, j).assemble()
    return bm.block(i, j) - row @ solve(corner, col, tol)


def block_det(bm: BlockMatrix, tol: Tolerances = DEFAULT_TOL) -> DetReport:
    """Determinant as the product of per-level pivot-block determinants."""
    tables = alpha_recursion(bm, tol)
    factors = []
    conditions = []
    for table in tables:
        pivot = table.blocks[table.size - 1, table.size - 1]
        factors.append(det_dense(pivot, tol))
        conditions.append(float(np.linalg.cond(pivot)))
    value = ScaledDet.one()
    for f in factors:
        value = value * f
    return DetReport(value=value, factors=tuple(factors), pivot_conditions=tuple(conditions))


def _require_block_count(bm: BlockMatrix, expected: int) -> None:
    if bm.block_count != expected:
        raise DimensionMismatch(
            f"expected a {expected}x{expected} block partition, got {bm.block_count}"
        )


def det_2x2_closed(bm: BlockMatrix, tol: Tolerances = DEFAULT_TOL) -> ScaledDet:
    """det(S11 - S12 S22^-1 S21) * det(S22) for a 2x2 block partition."""
    _require_block_count(bm, 2)
    s11, s12 = bm.block(1, 1), bm.block(1, 2)
    s21, s22 = bm.block(2, 1), bm.block(2, 2)
    schur = s11 - s12 @ _solve_or_singular(s22, s21, tol)
    return det_dense(schur, tol) * det_dense(s22, tol)


def det_2x2_commuting(
    bm: BlockMatrix,
    which: str = "S12",
    anticommuting: bool = False,
    tol: Tolerances = DEFAULT_TOL,
) -> ScaledDet:
    """Single-determinant shortcut when S12 or S21 (anti)commutes with S22.

    For which="S12": det(S22 S11 -+ S12 S21); for which="S21":
    det(S11 S22 -+ S12 S21).  The sign is + in the anticommuting variant.
    The (anti)commutation precondition is checked against the commutator
    tolerance and violated inputs are rejected.
    """
    _require_block_count(bm, 2)
    if which not in ("S12", "S21"):
        raise ValueError(f"which must be 'S12' or 'S21', got {which!r}")
    s11, s12 = bm.block(1, 1), bm.block(1, 2)
    s21, s22 = bm.block(2, 1), bm.block(2, 2)
    x = s12 if which == "S12" else s21
    sign = -1.0 if anticommuting else 1.0
    commutator = x @ s22 - sign * s22 @ x
    scale = max(np.max(np.abs(s22)) * np.max(np.abs(x)), 1e-300)
    if np.max(np.abs(commutator)) > tol.commutator * scale:
        kind = "anticommute" if anticommuting else "commute"
        raise CommutatorViolation(f"{which} does not {kind} with S22 within tolerance")
    combined = s22 @ s11 if which == "S12" else s11 @ s22
    return det_dense(combined - sign * (s12 @ s21), tol)


def det_3x3_closed(bm: BlockMatrix, tol: Tolerances = DEFAULT_TOL) -> ScaledDet:
    """Three-factor closed form for a 3x3 block partition.

    det(S) = det(a11 - a12 a22^-1 a21) * det(a22) * det(S33) with
    a_ij = S_ij - S_i3 S33^-1 S_3j.
    """
    _require_block_count(bm, 3)
    s33 = bm.block(3, 3)
    lu33 = lu_decompose(s33, tol)
    if lu33.singular:
        raise SingularMatrix("S33 is singular to working precision")

    def a(i: int, j: int) -> np.ndarray:
        return bm.block(i, j) - bm.block(i, 3) @ solve_factored(lu33, bm.block(3, j))

    a22 = a(2, 2)
    lu22 = lu_decompose(a22, tol)
    if lu22.singular:
        raise SingularPivotBlock(level=1, index=2)
    top = a(1, 1) - a(1, 2) @ solve_factored(lu22, a(2, 1))
    return det_dense(top, tol) * det_dense(a22, tol) * det_dense(s33, tol)


def _solve_or_singular(m, rhs, tol: Tolerances) -> np.ndarray:
    factors = lu_decompose(m, tol)
    if factors.singular:
        raise SingularMatrix("matrix is singular to working precision")
    return solve_factored(factors, rhs)
