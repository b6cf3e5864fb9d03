"""Distance oracles over the point set {0, ..., n-1}.

Every backend answers ``distance(i, j)`` for a single pair and
``distances(rows, cols)`` for a batch of pairs.  Backends that can evaluate
batches natively (numpy) set ``batched = True``; the DP driver uses that to
pick its vectorized engine.  Both paths must return bit-identical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError

TRIANGLE_TOL = 1e-9


class MetricInstance:
    """Abstract distance oracle.  Subclasses set ``n`` and implement ``_dist``."""

    n: int
    batched = False

    def distance(self, i: int, j: int) -> float:
        self.check_index(i)
        self.check_index(j)
        if i == j:
            return 0.0
        return self._dist(i, j)

    def distances(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Distances for paired index arrays, elementwise."""
        return np.array([self.distance(int(a), int(b)) for a, b in zip(rows, cols)], dtype=np.float64)

    def _dist(self, i: int, j: int) -> float:
        raise NotImplementedError

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise UsageError(f"point index {i} out of range for n={self.n}")

    def to_dense(self) -> "DenseMetric":
        idx = np.arange(self.n)
        rows = np.repeat(idx, self.n)
        cols = np.tile(idx, self.n)
        return DenseMetric(self.distances(rows, cols).reshape(self.n, self.n))

    def __len__(self) -> int:
        return self.n


class DenseMetric(MetricInstance):
    batched = True

    def __init__(self, matrix):
        m = np.array(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise UsageError(f"distance matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise UsageError("distance matrix has non-finite entries")
        if np.any(m < 0):
            raise UsageError("distance matrix has negative entries")
        self.matrix = m
        self.n = m.shape[0]

    def _dist(self, i, j):
        return float(self.matrix[i, j])

    def distances(self, rows, cols):
        return self.matrix[rows, cols]

    def to_dense(self):
        return self

    def __repr__(self):
        return f"DenseMetric(n={self.n})"


class EuclideanMetric(MetricInstance):
    batched = True

    def __init__(self, points):
        pts = np.array(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise UsageError("points must be an (n, dim) array with dim >= 1")
        if not np.all(np.isfinite(pts)):
            raise UsageError("point coordinates must be finite")
        self.points = pts
        self.n, self.dim = pts.shape
        self._rows = pts.tolist()

    def _dist(self, i, j):
        # coordinate order and rounding match the batched path exactly
        acc = 0.0
        for a, b in zip(self._rows[i], self._rows[j]):
            diff = a - b
            acc += diff * diff
        return math.sqrt(acc)

    def distances(self, rows, cols):
        acc = np.zeros(len(rows), dtype=np.float64)
        for k in range(self.dim):
            diff = self.points[rows, k] - self.points[cols, k]
            acc += diff * diff
        return np.sqrt(acc)

    def __repr__(self):
        return f"EuclideanMetric(n={self.n}, dim={self.dim})"


class LineMetric(MetricInstance):
    """Points 0..n-1 on the integer line: d(i, j) = |i - j|."""

    batched = True

    def __init__(self, n: int):
        self.n = n

    def _dist(self, i, j):
        return float(abs(i - j))

    def distances(self, rows, cols):
        return np.abs(np.asarray(rows, dtype=np.int64) - np.asarray(cols, dtype=np.int64)).astype(np.float64)

    def __repr__(self):
        return f"LineMetric(n={self.n})"


class CycleMetric(MetricInstance):
    """Shortest hop distance on the n-cycle."""

    batched = True

    def __init__(self, n: int):
        self.n = n

    def _dist(self, i, j):
        k = abs(i - j)
        return float(min(k, self.n - k))

    def distances(self, rows, cols):
        k = np.abs(np.asarray(rows, dtype=np.int64) - np.asarray(cols, dtype=np.int64))
        return np.minimum(k, self.n - k).astype(np.float64)

    def __repr__(self):
        return f"CycleMetric(n={self.n})"


class UniformMetric(MetricInstance):
    """All distinct points at distance 1."""

    batched = True

    def __init__(self, n: int):
        self.n = n

    def _dist(self, i, j):
        return 1.0

    def distances(self, rows, cols):
        return (np.asarray(rows) != np.asarray(cols)).astype(np.float64)

    def __repr__(self):
        return f"UniformMetric(n={self.n})"


class RecordingOracle(MetricInstance):
    """Wraps a metric and logs every non-self query in invocation order.

    Self-queries return 0 without touching ``inner`` and are not logged.
    With ``memoize`` on, repeated unordered pairs are served from a cache:
    ``trace`` still lists every invocation but ``count`` only grows on cache
    misses, so it equals the number of distinct pairs touched.
    """

    def __init__(self, inner: MetricInstance, memoize: bool = False):
        self.inner = inner
        self.n = inner.n
        self.memoize = memoize
        self.trace: list[tuple[int, int]] = []
        self.count = 0
        self._cache: dict[tuple[int, int], float] = {}

    def distance(self, i, j):
        self.check_index(i)
        self.check_index(j)
        if i == j:
            return 0.0
        self.trace.append((i, j))
        if not self.memoize:
            self.count += 1
            return self.inner.distance(i, j)
        key = (i, j) if i < j else (j, i)
        d = self._cache.get(key)
        if d is None:
            self.count += 1
            d = self._cache[key] = self.inner.distance(i, j)
        return d

    @property
    def distinct_pairs(self) -> int:
        return len({(a, b) if a < b else (b, a) for a, b in self.trace})

    def spawn(self) -> "RecordingOracle":
        """A worker-local recorder over the same inner metric."""
        return RecordingOracle(self.inner, memoize=self.memoize)

    def absorb(self, children: Sequence["RecordingOracle"]) -> None:
        """Merge worker traces, in the order given, into this recorder."""
        for child in children:
            self.trace.extend(child.trace)
            if not self.memoize:
                self.count += len(child.trace)
                continue
            for a, b in child.trace:
                key = (a, b) if a < b else (b, a)
                if key not in self._cache:
                    self._cache[key] = child._cache[key]
                    self.count += 1

    def reset(self) -> None:
        self.trace.clear()
        self.count = 0
        self._cache.clear()

    def __repr__(self):
        return f"RecordingOracle({self.inner!r}, count={self.count})"


def distance(oracle: MetricInstance, i: int, j: int) -> float:
    return oracle.distance(i, j)


def cost(oracle: MetricInstance, i: int) -> float:
    """Sum of distances from ``i`` to every point, accumulated in ascending j."""
    oracle.check_index(i)
    total = 0.0
    for j in range(oracle.n):
        total += oracle.distance(i, j)
    return total


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str | None = None  # "diagonal" | "negative" | "symmetry" | "triangle"
    where: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_metric(m: MetricInstance | np.ndarray, tol: float = TRIANGLE_TOL) -> ValidationReport:
    """Check the metric axioms on a dense matrix; report the first violation.

    Checks run in the order diagonal, negative entries, symmetry, triangle;
    within each check the lexicographically smallest index tuple is reported.
    """
    if isinstance(m, MetricInstance):
        D = m.to_dense().matrix
    else:
        D = np.asarray(m, dtype=np.float64)
    n = D.shape[0]

    diag = np.flatnonzero(np.diag(D) != 0)
    if diag.size:
        i = int(diag[0])
        return ValidationReport(False, "diagonal", (i,), f"d({i},{i})={D[i, i]!r}")
    neg = np.argwhere(D < 0)
    if neg.size:
        i, j = map(int, neg[0])
        return ValidationReport(False, "negative", (i, j), f"d({i},{j})={D[i, j]!r}")
    asym = np.argwhere(D != D.T)
    if asym.size:
        i, j = map(int, asym[0])
        return ValidationReport(False, "symmetry", (i, j), f"d({i},{j})={D[i, j]!r} != d({j},{i})={D[j, i]!r}")
    for x in range(n):
        # bad[y, z]: d(x,y) + d(y,z) < d(x,z) - tol
        bad = np.argwhere(D[x, :, None] + D < D[x, None, :] - tol)
        if bad.size:
            y, z = map(int, bad[0])
            return ValidationReport(
                False,
                "triangle",
                (x, y, z),
                f"d({x},{y})+d({y},{z})={D[x, y] + D[y, z]!r} < d({x},{z})={D[x, z]!r}",
            )
    return ValidationReport(True)


def shortest_path_closure(weights: Iterable) -> DenseMetric:
    """All-pairs shortest paths of the complete graph with the given edge weights.

    ``inf`` marks a missing edge.  Plain Floyd-Warshall, vectorized per pivot.
    """
    W = np.array(weights, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise UsageError(f"weight matrix must be square, got shape {W.shape}")
    if np.any(W < 0):
        raise UsageError("weight matrix has negative entries")
    if np.any(np.diag(W) != 0):
        raise UsageError("weight matrix must have a zero diagonal")
    if np.any(W != W.T):
        raise UsageError("weight matrix must be symmetric")
    D = W.copy()
    for k in range(D.shape[0]):
        np.minimum(D, D[:, k, None] + D[None, k, :], out=D)
    if not np.all(np.isfinite(D)):
        raise UsageError("weight graph is disconnected")
    return DenseMetric(D)
