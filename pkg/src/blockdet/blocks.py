"""Partitioned matrices and the 2x2 Schur/Banachiewicz primitives.

Block indices are 1-based in every public contract, matching the usual
S_ij notation for partitioned matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .dense import as_matrix, invert, solve
from .errors import DimensionMismatch, IndexOutOfRange


@dataclass(frozen=True)
class BlockMatrix:
    """An (n*N) x (n*N) complex matrix partitioned into N x N blocks of size n.

    ``blocks`` is a read-only complex array of shape (N, N, n, n); use
    ``block(i, j)`` for 1-based access.
    """

    block_count: int
    block_size: int
    blocks: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.blocks, dtype=np.complex128)
        expected = (self.block_count, self.block_count, self.block_size, self.block_size)
        if arr.shape != expected:
            raise DimensionMismatch(
                f"block grid has shape {arr.shape}, expected {expected}"
            )
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("block entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "blocks", arr)

    def block(self, i: int, j: int) -> np.ndarray:
        self._check_index(i)
        self._check_index(j)
        return self.blocks[i - 1, j - 1]

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.block_count:
            raise IndexOutOfRange(
                f"block index {i} outside 1..{self.block_count}"
            )

    @property
    def dim(self) -> int:
        return self.block_count * self.block_size


@dataclass(frozen=True)
class BlockVectorColumn:
    """Blocks (origin_row..N, origin_col) of a partitioned matrix."""

    origin_row: int
    origin_col: int
    entries: tuple

    def assemble(self) -> np.ndarray:
        return np.vstack(self.entries)


@dataclass(frozen=True)
class BlockVectorRow:
    """Blocks (origin_row, origin_col..N) of a partitioned matrix."""

    origin_row: int
    origin_col: int
    entries: tuple

    def assemble(self) -> np.ndarray:
        return np.hstack(self.entries)


def column_vector(bm: BlockMatrix, i: int, j: int) -> BlockVectorColumn:
    bm._check_index(i)
    bm._check_index(j)
    blocks = tuple(bm.block(r, j) for r in range(i, bm.block_count + 1))
    return BlockVectorColumn(i, j, blocks)


def row_vector(bm: BlockMatrix, i: int, j: int) -> BlockVectorRow:
    bm._check_index(i)
    bm._check_index(j)
    blocks = tuple(bm.block(i, c) for c in range(j, bm.block_count + 1))
    return BlockVectorRow(i, j, blocks)


def partition(m, block_count: int, block_size: int) -> BlockMatrix:
    """Split a square matrix into a uniform block grid."""
    a = as_matrix(m)
    dim = block_count * block_size
    if a.shape != (dim, dim):
        raise DimensionMismatch(
            f"matrix of shape {a.shape} cannot be partitioned into "
            f"{block_count}x{block_count} blocks of size {block_size}"
        )
    grid = (
        a.reshape(block_count, block_size, block_count, block_size)
        .transpose(0, 2, 1, 3)
    )
    return BlockMatrix(block_count, block_size, grid)


def flatten(bm: BlockMatrix) -> np.ndarray:
    """Reassemble the dense matrix; exact inverse of ``partition``."""
    N, n = bm.block_count, bm.block_size
    return bm.blocks.transpose(0, 2, 1, 3).reshape(N * n, N * n).copy()


def trailing_submatrix(bm: BlockMatrix, k: int) -> BlockMatrix:
    """The k x k block matrix from the lower-right corner."""
    if not 1 <= k <= bm.block_count:
        raise IndexOutOfRange(f"trailing size {k} outside 1..{bm.block_count}")
    start = bm.block_count - k
    return BlockMatrix(k, bm.block_size, bm.blocks[start:, start:])


def schur_complement_2x2(a, b, c, d, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """A - B D^-1 C, with the inverse applied as a solve."""
    a, b, c, d = as_matrix(a), as_matrix(b), as_matrix(c), as_matrix(d)
    if a.shape[0] != a.shape[1] or d.shape[0] != d.shape[1]:
        raise DimensionMismatch("corner blocks must be square")
    if b.shape != (a.shape[0], d.shape[0]) or c.shape != (d.shape[0], a.shape[0]):
        raise DimensionMismatch(
            f"blocks {a.shape}, {b.shape}, {c.shape}, {d.shape} are not conformable"
        )
    return a - b @ solve(d, c, tol)


def banachiewicz_inverse(a, b, c, d, tol: Tolerances = DEFAULT_TOL):
    """Blockwise inverse of [[A, B], [C, D]] via the Schur complement of D.

    Returns the four blocks (top-left, top-right, bottom-left, bottom-right)
    of the inverse.
    """
    a, b, c, d = as_matrix(a), as_matrix(b), as_matrix(c), as_matrix(d)
    schur = schur_complement_2x2(a, b, c, d, tol)
    schur_inv = invert(schur, tol)
    bd = b @ invert(d, tol)
    dc = solve(d, c, tol)
    top_left = schur_inv
    top_right = -schur_inv @ bd
    bottom_left = -dc @ schur_inv
    bottom_right = invert(d, tol) + dc @ schur_inv @ bd
    return top_left, top_right, bottom_left, bottom_right


def assemble_2x2(a, b, c, d) -> np.ndarray:
    return np.block([[as_matrix(a), as_matrix(b)], [as_matrix(c), as_matrix(d)]])
