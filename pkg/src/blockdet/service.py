"""Request handlers shared by the HTTP endpoints and the CLI.

Each handler takes a request model and returns a response model; domain
errors (parse failures, singular pivots) propagate as package exceptions
for the caller to map onto HTTP statuses or exit codes.
"""

from __future__ import annotations

import math
import statistics
import time

import numpy as np

from .blocks import BlockMatrix, flatten, partition
from .dense import det_dense
from .engine import block_det
from .errors import DimensionMismatch, SingularPivotBlock
from .njl import NjlParams, verify_njl
from .scaled import relative_difference
from .schemas import (
    BenchRequest,
    BenchResponse,
    BenchRow,
    CompareRequest,
    CompareResponse,
    CompareRow,
    DetRequest,
    DetResponse,
    NjlCheckModel,
    NjlRequest,
    NjlResponse,
    ScaledDetModel,
    SpectrumLevel,
)


def _resolve_block_matrix(request) -> BlockMatrix | None:
    """Block matrix implied by the payload/partition, or None for plain dense."""
    payload = request.matrix
    if payload.block is not None:
        bm = payload.block.to_block_matrix()
        if request.partition is not None and (
            request.partition.N != bm.block_count or request.partition.n != bm.block_size
        ):
            return partition(flatten(bm), request.partition.N, request.partition.n)
        return bm
    dense = payload.dense.to_array()
    if request.partition is None:
        return None
    return partition(dense, request.partition.N, request.partition.n)


def handle_det(request: DetRequest) -> DetResponse:
    bm = _resolve_block_matrix(request)
    if bm is None:
        value = det_dense(request.matrix.dense.to_array())
        return DetResponse(value=ScaledDetModel.from_scaled(value), method="dense")
    try:
        report = block_det(bm)
    except SingularPivotBlock:
        if not request.fallback_dense:
            raise
        value = det_dense(flatten(bm))
        return DetResponse(value=ScaledDetModel.from_scaled(value), method="dense-fallback")
    return DetResponse(
        value=ScaledDetModel.from_scaled(report.value),
        method="block",
        factors=[ScaledDetModel.from_scaled(f) for f in report.factors],
        pivot_conditions=[_finite(c) for c in report.pivot_conditions],
    )


def random_block_matrix(rng: np.random.Generator, N: int, n: int) -> BlockMatrix:
    """Complex entries uniform in the unit square."""
    dim = N * n
    m = rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim))
    return partition(m, N, n)


def _compare_one(bm: BlockMatrix, label: str) -> CompareRow:
    block_value = block_det(bm).value
    dense_value = det_dense(flatten(bm))
    return CompareRow(
        label=label,
        block_value=ScaledDetModel.from_scaled(block_value),
        dense_value=ScaledDetModel.from_scaled(dense_value),
        relative_error=_finite(relative_difference(block_value, dense_value)),
    )


def handle_compare(request: CompareRequest) -> CompareResponse:
    bm = _resolve_block_matrix(request)
    if bm is None:
        raise DimensionMismatch("compare requires a block partition")
    rows = [_compare_one(bm, "input")]
    rng = np.random.default_rng(request.seed)
    for t in range(request.trials):
        rows.append(
            _compare_one(
                random_block_matrix(rng, bm.block_count, bm.block_size),
                f"trial-{t + 1}",
            )
        )
    within = all(r.relative_error <= request.tol for r in rows)
    return CompareResponse(rows=rows, tol=request.tol, within_tol=within)


def handle_bench(request: BenchRequest) -> BenchResponse:
    rng = np.random.default_rng(request.seed)
    rows = []
    for N in range(2, request.max_block_count + 1):
        for n in range(1, request.max_block_size + 1):
            block_ns, dense_ns, errors = [], [], []
            for _ in range(request.trials):
                bm = random_block_matrix(rng, N, n)
                start = time.perf_counter_ns()
                block_value = block_det(bm).value
                block_ns.append(time.perf_counter_ns() - start)
                dense = flatten(bm)
                start = time.perf_counter_ns()
                dense_value = det_dense(dense)
                dense_ns.append(time.perf_counter_ns() - start)
                errors.append(relative_difference(block_value, dense_value))
            err = _finite(statistics.median(errors))
            rows.append(
                BenchRow(
                    N=N,
                    n=n,
                    method="block",
                    median_ns=int(statistics.median(block_ns)),
                    relative_error=err,
                )
            )
            rows.append(
                BenchRow(
                    N=N,
                    n=n,
                    method="dense",
                    median_ns=int(statistics.median(dense_ns)),
                    relative_error=err,
                )
            )
    return BenchResponse(rows=rows)


def handle_njl(request: NjlRequest) -> NjlResponse:
    params = NjlParams(
        mass=request.mass,
        chemical_potential=request.chemical_potential,
        gap=complex(request.gap_re, request.gap_im),
        momentum=(request.kx, request.ky, request.kz),
        probe_energy=complex(request.energy_re, request.energy_im),
    )
    report = verify_njl(params)
    return NjlResponse(
        spectrum=[
            SpectrumLevel(value=v, multiplicity=m) for v, m in report.spectrum.levels
        ],
        block_value=ScaledDetModel.from_scaled(report.block_value),
        closed_value=ScaledDetModel.from_scaled(report.closed_value),
        checks=[
            NjlCheckModel(
                name=c.name,
                measured=_finite(c.measured),
                threshold=c.threshold,
                passed=c.passed,
            )
            for c in report.checks
        ],
        all_passed=report.all_passed,
    )


def _finite(x: float) -> float:
    # keep JSON serializable: saturate infinities, map NaN to a failing value
    if math.isnan(x):
        return 1e308
    return min(max(x, -1e308), 1e308)
