"""Pydantic request/response models shared by the HTTP API and the CLI."""

from __future__ import annotations

from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .blocks import BlockMatrix
from .dense import as_matrix
from .matio import format_scaled
from .scaled import ScaledDet

DEFAULT_SEED = 185712862


class DenseMatrixModel(BaseModel):
    """Row-major entries, each entry an [re, im] pair."""

    entries: list[list[tuple[float, float]]]

    def to_array(self) -> np.ndarray:
        return as_matrix([[complex(re, im) for re, im in row] for row in self.entries])

    @classmethod
    def from_array(cls, m: np.ndarray) -> "DenseMatrixModel":
        return cls(entries=[[(z.real, z.imag) for z in row] for row in m])


class BlockMatrixModel(BaseModel):
    """Mirrors the block-json file format."""

    N: int = Field(ge=1)
    n: int = Field(ge=1)
    blocks: list[list[list[list[tuple[float, float]]]]]

    def to_block_matrix(self) -> BlockMatrix:
        grid = np.array(
            [
                [[[complex(re, im) for re, im in row] for row in blk] for blk in brow]
                for brow in self.blocks
            ],
            dtype=np.complex128,
        )
        return BlockMatrix(self.N, self.n, grid)

    @classmethod
    def from_block_matrix(cls, bm: BlockMatrix) -> "BlockMatrixModel":
        return cls(
            N=bm.block_count,
            n=bm.block_size,
            blocks=[
                [
                    [[(z.real, z.imag) for z in row] for row in bm.block(i, j)]
                    for j in range(1, bm.block_count + 1)
                ]
                for i in range(1, bm.block_count + 1)
            ],
        )


class PartitionModel(BaseModel):
    N: int = Field(ge=1)
    n: int = Field(ge=1)


class ScaledDetModel(BaseModel):
    mantissa_re: float
    mantissa_im: float
    exponent: int
    formatted: str

    @classmethod
    def from_scaled(cls, value: ScaledDet) -> "ScaledDetModel":
        return cls(
            mantissa_re=value.mantissa.real,
            mantissa_im=value.mantissa.imag,
            exponent=value.exponent,
            formatted=format_scaled(value),
        )

    def to_scaled(self) -> ScaledDet:
        return ScaledDet(complex(self.mantissa_re, self.mantissa_im), self.exponent)


class MatrixPayload(BaseModel):
    """Exactly one of ``dense`` or ``block`` must be given."""

    dense: Optional[DenseMatrixModel] = None
    block: Optional[BlockMatrixModel] = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.dense is None) == (self.block is None):
            raise ValueError("provide exactly one of 'dense' or 'block'")
        return self


class DetRequest(BaseModel):
    matrix: MatrixPayload
    partition: Optional[PartitionModel] = None
    fallback_dense: bool = False


class DetResponse(BaseModel):
    value: ScaledDetModel
    method: str
    factors: Optional[list[ScaledDetModel]] = None
    pivot_conditions: Optional[list[float]] = None


class CompareRequest(BaseModel):
    matrix: MatrixPayload
    partition: Optional[PartitionModel] = None
    tol: float = 1e-8
    trials: int = Field(default=0, ge=0)
    seed: int = DEFAULT_SEED


class CompareRow(BaseModel):
    label: str
    block_value: ScaledDetModel
    dense_value: ScaledDetModel
    relative_error: float


class CompareResponse(BaseModel):
    rows: list[CompareRow]
    tol: float
    within_tol: bool


class BenchRequest(BaseModel):
    max_block_count: int = Field(ge=2)
    max_block_size: int = Field(ge=1)
    trials: int = Field(default=3, ge=1)
    seed: int = DEFAULT_SEED


class BenchRow(BaseModel):
    N: int
    n: int
    method: str
    median_ns: int
    relative_error: float


class BenchResponse(BaseModel):
    rows: list[BenchRow]


class NjlRequest(BaseModel):
    mass: float = 0.35
    chemical_potential: float = 0.4
    gap_re: float = 0.1
    gap_im: float = 0.0
    kx: float = 0.1
    ky: float = 0.2
    kz: float = 0.3
    energy_re: float = 0.77
    energy_im: float = 0.13


class SpectrumLevel(BaseModel):
    value: float
    multiplicity: int


class NjlCheckModel(BaseModel):
    name: str
    measured: float
    threshold: float
    passed: bool


class NjlResponse(BaseModel):
    spectrum: list[SpectrumLevel]
    block_value: ScaledDetModel
    closed_value: ScaledDetModel
    checks: list[NjlCheckModel]
    all_passed: bool
