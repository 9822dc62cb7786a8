"""Matrix file formats and determinant text formatting.

Two formats are supported:

* dense-text: '#' comments, a "rows cols" header line, then rows*cols
  whitespace-separated complex entries written as "re", "re+imi" or
  "re-imi".
* block-json: an object with integer fields "N" and "n" and a field
  "blocks" holding an N x N array of n x n arrays of [re, im] pairs.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .blocks import BlockMatrix
from .dense import as_matrix
from .errors import BlockDetError
from .scaled import ScaledDet

DENSE_TEXT = "dense-text"
BLOCK_JSON = "block-json"


class ParseError(BlockDetError):
    """Input file does not conform to its declared format."""


def detect_format(text: str) -> str:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        return BLOCK_JSON if stripped.startswith("{") else DENSE_TEXT
    raise ParseError("empty input")


def _parse_entry(token: str) -> complex:
    if token.endswith("i"):
        token = token[:-1] + "j"
    try:
        return complex(token)
    except ValueError as exc:
        raise ParseError(f"bad matrix entry {token!r}") from exc


def parse_dense_text(text: str) -> np.ndarray:
    tokens = []
    header = None
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if header is None:
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'rows cols' header, got {stripped!r}")
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError as exc:
                raise ParseError(f"bad header {stripped!r}") from exc
            continue
        tokens.extend(stripped.split())
    if header is None:
        raise ParseError("missing 'rows cols' header")
    rows, cols = header
    if rows < 1 or cols < 1:
        raise ParseError(f"bad dimensions {rows}x{cols}")
    if len(tokens) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries, found {len(tokens)}")
    entries = [_parse_entry(t) for t in tokens]
    return np.array(entries, dtype=np.complex128).reshape(rows, cols)


def write_dense_text(m) -> str:
    m = as_matrix(m)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(" ".join(_format_entry(z) for z in row))
    return "\n".join(lines) + "\n"


def _format_entry(z: complex) -> str:
    re_, im_ = float(z.real), float(z.imag)
    if im_ == 0:
        return repr(re_)
    return f"{re_!r}{'+' if im_ >= 0 else '-'}{abs(im_)!r}i"


def parse_block_json(text: str) -> BlockMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or not {"N", "n", "blocks"} <= set(obj):
        raise ParseError("block-json requires fields 'N', 'n', 'blocks'")
    N, n = obj["N"], obj["n"]
    if not (isinstance(N, int) and isinstance(n, int) and N >= 1 and n >= 1):
        raise ParseError("'N' and 'n' must be positive integers")
    try:
        grid = np.array(
            [
                [
                    [[complex(re_, im_) for re_, im_ in row] for row in block]
                    for block in block_row
                ]
                for block_row in obj["blocks"]
            ],
            dtype=np.complex128,
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed 'blocks' payload: {exc}") from exc
    if grid.shape != (N, N, n, n):
        raise ParseError(
            f"'blocks' has shape {grid.shape}, inconsistent with N={N}, n={n}"
        )
    return BlockMatrix(N, n, grid)


def write_block_json(bm: BlockMatrix) -> str:
    payload = {
        "N": bm.block_count,
        "n": bm.block_size,
        "blocks": [
            [
                [[[z.real, z.imag] for z in row] for row in bm.block(i, j)]
                for j in range(1, bm.block_count + 1)
            ]
            for i in range(1, bm.block_count + 1)
        ],
    }
    return json.dumps(payload)


_SCALED_RE = re.compile(
    r"^([+-]?\d\.\d{12})([+-]\d\.\d{12})E([+-]\d{3,})$"
)


def format_scaled(value: ScaledDet) -> str:
    """Render as m.mmmmmmmmmmmm(+/-)i.iiiiiiiiiiiiE(+/-)xxx."""
    m, e = value.mantissa, value.exponent
    # rounding to 12 decimals may push a 9.999... mantissa to 10
    if round(abs(m.real), 12) >= 10.0 or round(abs(m.imag), 12) >= 10.0:
        m /= 10.0
        e += 1
    return f"{m.real:.12f}{m.imag:+.12f}E{e:+04d}"


def parse_scaled(text: str) -> ScaledDet:
    match = _SCALED_RE.match(text.strip())
    if not match:
        raise ParseError(f"not a formatted determinant: {text!r}")
    re_part, im_part, exp_part = match.groups()
    return ScaledDet(complex(float(re_part), float(im_part)), int(exp_part))
