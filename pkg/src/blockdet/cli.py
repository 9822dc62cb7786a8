"""Command-line client.

Subcommands build the same request models the HTTP API accepts and by
default dispatch to the in-process handlers; with ``--server URL`` they
POST to a running service instead.

Exit codes: 0 success; 1 parse/dimension/argument errors; 2 singular pivot
block without a dense fallback; 3 tolerance or verification failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .errors import BlockDetError, SingularPivotBlock
from .matio import (
    BLOCK_JSON,
    DENSE_TEXT,
    ParseError,
    detect_format,
    format_scaled,
    parse_block_json,
    parse_dense_text,
    parse_scaled,
)
from .schemas import (
    DEFAULT_SEED,
    BenchRequest,
    BlockMatrixModel,
    CompareRequest,
    DenseMatrixModel,
    DetRequest,
    MatrixPayload,
    NjlRequest,
    PartitionModel,
)
from .service import handle_bench, handle_compare, handle_det, handle_njl

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_SINGULAR_PIVOT = 2
EXIT_TOLERANCE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argument errors share the parse-error code
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _parse_partition(text: str) -> PartitionModel:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"--partition expects 'N,n', got {text!r}")
    try:
        return PartitionModel(N=int(parts[0]), n=int(parts[1]))
    except ValueError as exc:
        raise ParseError(f"bad --partition value {text!r}") from exc


def _load_payload(path: str, forced_format: str | None) -> MatrixPayload:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    fmt = forced_format or detect_format(text)
    if fmt == BLOCK_JSON:
        return MatrixPayload(block=BlockMatrixModel.from_block_matrix(parse_block_json(text)))
    return MatrixPayload(dense=DenseMatrixModel.from_array(parse_dense_text(text)))


class _RemoteDispatcher:
    """POSTs request models to a running service."""

    def __init__(self, base_url: str, transport=None):
        import httpx

        self._client = httpx.Client(
            base_url=base_url.rstrip("/"), timeout=120.0, transport=transport
        )

    def call(self, endpoint: str, request, response_cls):
        reply = self._client.post(
            f"/{endpoint}",
            content=request.model_dump_json(),
            headers={"content-type": "application/json"},
        )
        if reply.status_code != 200:
            body = reply.json()
            if body.get("error") == "SingularPivotBlock":
                raise SingularPivotBlock(body.get("level", -1), body.get("index", -1))
            raise ParseError(body.get("detail", reply.text))
        return response_cls.model_validate_json(reply.text)


def _dispatch(args, endpoint: str, request, handler, response_cls):
    if args.server:
        return _RemoteDispatcher(args.server).call(endpoint, request, response_cls)
    return handler(request)


def _det_request(args) -> DetRequest:
    return DetRequest(
        matrix=_load_payload(args.path, args.format),
        partition=_parse_partition(args.partition) if args.partition else None,
        fallback_dense=args.fallback == "dense",
    )


def _cmd_det(args) -> int:
    from .schemas import DetResponse

    response = _dispatch(args, "det", _det_request(args), handle_det, DetResponse)
    print(response.value.formatted)
    return EXIT_OK


def _cmd_parse_check(args) -> int:
    from .schemas import DetResponse

    response = _dispatch(args, "det", _det_request(args), handle_det, DetResponse)
    formatted = response.value.formatted
    reparsed = parse_scaled(formatted)
    if format_scaled(reparsed) != formatted:
        print(f"parse-check FAILED: {formatted!r} did not round-trip", file=sys.stderr)
        return EXIT_PARSE
    print(f"parse-check OK: {formatted}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    from .schemas import CompareResponse

    request = CompareRequest(
        matrix=_load_payload(args.path, args.format),
        partition=_parse_partition(args.partition) if args.partition else None,
        tol=args.tol,
        trials=args.trials,
        seed=args.seed,
    )
    response = _dispatch(args, "compare", request, handle_compare, CompareResponse)
    print(f"{'label':<10} {'block':>30} {'dense':>30} {'rel_error':>12}")
    for row in response.rows:
        print(
            f"{row.label:<10} {row.block_value.formatted:>30} "
            f"{row.dense_value.formatted:>30} {row.relative_error:>12.3e}"
        )
    if not response.within_tol:
        print(f"tolerance {response.tol:g} exceeded", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def _cmd_bench(args) -> int:
    from .schemas import BenchResponse

    request = BenchRequest(
        max_block_count=args.max_N,
        max_block_size=args.max_n,
        trials=args.trials,
        seed=args.seed,
    )
    response = _dispatch(args, "bench", request, handle_bench, BenchResponse)
    writer = csv.writer(sys.stdout)
    writer.writerow(["N", "n", "method", "median_ns", "relative_error"])
    for row in response.rows:
        writer.writerow([row.N, row.n, row.method, row.median_ns, f"{row.relative_error:.6e}"])
    return EXIT_OK


def _cmd_njl(args) -> int:
    from .schemas import NjlResponse

    request = NjlRequest(
        mass=args.mass,
        chemical_potential=args.mu,
        gap_re=args.delta_re,
        gap_im=args.delta_im,
        kx=args.kx,
        ky=args.ky,
        kz=args.kz,
        energy_re=args.E_re,
        energy_im=args.E_im,
    )
    response = _dispatch(args, "njl", request, handle_njl, NjlResponse)
    print("eigenenergies:")
    for idx, level in enumerate(response.spectrum, start=1):
        print(f"  E{idx} = {level.value:.12g}  (multiplicity {level.multiplicity})")
    total = sum(level.multiplicity for level in response.spectrum)
    print(f"  total multiplicity: {total}")
    print(f"block engine det: {response.block_value.formatted}")
    print(f"closed form det:  {response.closed_value.formatted}")
    print("checks:")
    for check in response.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"  [{status}] {check.name}: {check.measured:.3e} (<= {check.threshold:g})")
    return EXIT_OK if response.all_passed else EXIT_TOLERANCE


def _add_matrix_args(parser) -> None:
    parser.add_argument("path", help="matrix file")
    parser.add_argument(
        "--format",
        choices=[DENSE_TEXT, BLOCK_JSON],
        default=None,
        help="force the input format instead of auto-detecting",
    )
    parser.add_argument("--partition", metavar="N,n", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockdet", description=__doc__)
    parser.add_argument("--server", default=None, help="base URL of a running service")
    sub = parser.add_subparsers(dest="command", required=True)

    det = sub.add_parser("det", help="print the determinant of a matrix file")
    _add_matrix_args(det)
    det.add_argument("--fallback", choices=["dense"], default=None)
    det.set_defaults(func=_cmd_det)

    pc = sub.add_parser("parse-check", help="det plus an output round-trip self-test")
    _add_matrix_args(pc)
    pc.add_argument("--fallback", choices=["dense"], default=None)
    pc.set_defaults(func=_cmd_parse_check)

    cmp_ = sub.add_parser("compare", help="block engine vs dense oracle")
    _add_matrix_args(cmp_)
    cmp_.add_argument("--tol", type=float, default=1e-8)
    cmp_.add_argument("--trials", type=int, default=0,
                      help="extra random matrices of the same partition")
    cmp_.add_argument("--seed", type=int, default=DEFAULT_SEED)
    cmp_.set_defaults(func=_cmd_compare)

    bench = sub.add_parser("bench", help="timing sweep, CSV on stdout")
    bench.add_argument("--max-N", type=int, default=4, dest="max_N")
    bench.add_argument("--max-n", type=int, default=4, dest="max_n")
    bench.add_argument("--trials", type=int, default=3)
    bench.add_argument("--seed", type=int, default=DEFAULT_SEED)
    bench.set_defaults(func=_cmd_bench)

    njl = sub.add_parser("njl", help="NJL case-study verification report")
    njl.add_argument("--mass", "-M", type=float, default=0.35)
    njl.add_argument("--mu", type=float, default=0.4)
    njl.add_argument("--delta-re", type=float, default=0.1, dest="delta_re")
    njl.add_argument("--delta-im", type=float, default=0.0, dest="delta_im")
    njl.add_argument("--kx", type=float, default=0.1)
    njl.add_argument("--ky", type=float, default=0.2)
    njl.add_argument("--kz", type=float, default=0.3)
    njl.add_argument("--E-re", type=float, default=0.77, dest="E_re")
    njl.add_argument("--E-im", type=float, default=0.13, dest="E_im")
    njl.set_defaults(func=_cmd_njl)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SingularPivotBlock as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR_PIVOT
    except (BlockDetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
