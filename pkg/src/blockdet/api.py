"""HTTP surface: a FastAPI app wrapping the service handlers."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .errors import (
    BlockDetError,
    CommutatorViolation,
    DimensionMismatch,
    IndexOutOfRange,
    SingularMatrix,
    SingularPivotBlock,
)
from .matio import ParseError
from .schemas import (
    BenchRequest,
    BenchResponse,
    CompareRequest,
    CompareResponse,
    DetRequest,
    DetResponse,
    NjlRequest,
    NjlResponse,
)
from .service import handle_bench, handle_compare, handle_det, handle_njl

app = FastAPI(
    title="blockdet",
    description="Determinants of partitioned complex matrices via block "
    "Schur-complement reduction, with a dense LU oracle.",
)

_STATUS = {
    ParseError: 400,
    DimensionMismatch: 400,
    IndexOutOfRange: 400,
    SingularPivotBlock: 422,
    SingularMatrix: 422,
    CommutatorViolation: 422,
}


@app.exception_handler(BlockDetError)
async def _domain_error(request: Request, exc: BlockDetError) -> JSONResponse:
    status = _STATUS.get(type(exc), 400)
    body = {"error": type(exc).__name__, "detail": str(exc)}
    if isinstance(exc, SingularPivotBlock):
        body["level"] = exc.level
        body["index"] = exc.index
    return JSONResponse(status_code=status, content=body)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/det", response_model=DetResponse)
def det(request: DetRequest) -> DetResponse:
    return handle_det(request)


@app.post("/compare", response_model=CompareResponse)
def compare(request: CompareRequest) -> CompareResponse:
    return handle_compare(request)


@app.post("/bench", response_model=BenchResponse)
def bench(request: BenchRequest) -> BenchResponse:
    return handle_bench(request)


@app.post("/njl", response_model=NjlResponse)
def njl(request: NjlRequest) -> NjlResponse:
    return handle_njl(request)
