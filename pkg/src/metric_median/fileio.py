"""Text formats for instances.

Matrix file::

    metric-matrix 1
    n <int>
    <n rows of n space-separated decimals>

Points file::

    euclidean-points 1
    n <int> dim <int>
    <n rows of dim space-separated decimals>

Decimals use the shortest round-trip representation; integral values are
written without a fractional part.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import ParseError
from .metric import DenseMetric, EuclideanMetric, MetricInstance

MATRIX_HEADER = "metric-matrix 1"
POINTS_HEADER = "euclidean-points 1"


def format_decimal(x: float) -> str:
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def dumps(m: MetricInstance) -> str:
    if isinstance(m, EuclideanMetric):
        lines = [POINTS_HEADER, f"n {m.n} dim {m.dim}"]
        rows = m.points
    else:
        rows = m.to_dense().matrix
        lines = [MATRIX_HEADER, f"n {m.n}"]
    lines.extend(" ".join(format_decimal(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_instance(m: MetricInstance, path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8", newline="\n")


def _parse_row(text: str, width: int, lineno: int, allow_negative: bool) -> list[float]:
    fields = text.split()
    if len(fields) != width:
        raise ParseError(f"expected {width} values, got {len(fields)}", lineno)
    row = []
    for tok in fields:
        try:
            v = float(tok)
        except ValueError:
            raise ParseError(f"not a number: {tok!r}", lineno) from None
        if not math.isfinite(v):
            raise ParseError(f"non-finite value {tok!r}", lineno)
        if v < 0 and not allow_negative:
            raise ParseError(f"negative distance {tok!r}", lineno)
        row.append(v)
    return row


def _parse_int(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", lineno) from None
    if v < 1:
        raise ParseError(f"count must be >= 1, got {v}", lineno)
    return v


def loads(text: str) -> DenseMetric | EuclideanMetric:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty file", 1)
    header = lines[0].strip()
    if header not in (MATRIX_HEADER, POINTS_HEADER):
        raise ParseError(f"unknown header {header!r}", 1)
    if len(lines) < 2:
        raise ParseError("missing size line", 2)
    size = lines[1].split()

    if header == MATRIX_HEADER:
        if len(size) != 2 or size[0] != "n":
            raise ParseError("expected 'n <int>'", 2)
        n = _parse_int(size[1], 2)
        width, allow_negative = n, False
    else:
        if len(size) != 4 or size[0] != "n" or size[2] != "dim":
            raise ParseError("expected 'n <int> dim <int>'", 2)
        n = _parse_int(size[1], 2)
        width, allow_negative = _parse_int(size[3], 2), True

    body = lines[2:]
    if len(body) != n:
        raise ParseError(f"expected {n} data rows, got {len(body)}", 2 + min(len(body), n) + 1)
    rows = [_parse_row(line, width, k + 3, allow_negative) for k, line in enumerate(body)]

    if header == POINTS_HEADER:
        return EuclideanMetric(np.array(rows))
    return DenseMetric(np.array(rows))


def read_instance(path) -> DenseMetric | EuclideanMetric:
    return loads(Path(path).read_text(encoding="utf-8"))
