"""The f/g dynamic program over base-t digit prefixes, and the find-median driver.

For a point i and level m, f(i, m) sums pseudodistance paths that start at i
and add the digits s_m, ..., s_0 of every offset no larger than the low m+1
digits of n-1; g(i, m) does the same over all t**(m+1) digit tuples.  Level m
depends only on level m-1, so two rolling levels of n values suffice.

Accumulation order is fixed (textual order of the recurrence, each inner sum
in ascending digit order, accumulated separately and then added), which makes
the scalar engine, the numpy engine and the threaded variants bit-identical.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import UsageError
from .metric import MetricInstance, RecordingOracle
from .tary import TaryParams, suffix_value, to_digits


def _params(n: int, h: int) -> TaryParams:
    if h < 2:
        raise UsageError(f"h must be an integer >= 2, got {h}")
    if n < 1:
        raise UsageError(f"metric must have at least one point, got n={n}")
    return TaryParams.build(n, h)


def pseudo_distance(oracle: MetricInstance, p: TaryParams, i: int, j: int) -> float:
    """Length of the path from i to i+j (mod n) that adds j's digits from the top down."""
    n = p.n
    oracle.check_index(i)
    if not 0 <= j < n:
        raise UsageError(f"offset {j} not in [0, {n})")
    s = to_digits(j, p)
    total = 0.0
    for k in range(p.h):
        a = (i + suffix_value(s, p.h - k, p)) % n
        b = (i + suffix_value(s, p.h - 1 - k, p)) % n
        total += oracle.distance(a, b)
    return total


def pseudo_cost(oracle: MetricInstance, p: TaryParams, i: int) -> float:
    total = 0.0
    for j in range(p.n):
        total += pseudo_distance(oracle, p, i, j)
    return total


def dp_base(oracle: MetricInstance, p: TaryParams, i: int) -> tuple[float, float]:
    """(f(i, 0), g(i, 0)) from a single sweep s0 = 0..t-1."""
    n = p.n
    acc = 0.0
    f0 = 0.0
    for s0 in range(p.t):
        acc += oracle.distance(i, (i + s0) % n)
        if s0 == p.s_prime[0]:
            f0 = acc
    return f0, acc


def dp_step_f(
    oracle: MetricInstance, p: TaryParams, m: int, i: int, f_prev: Sequence[float], g_prev: Sequence[float]
) -> float:
    n, tm, top = p.n, p.powers[m], p.s_prime[m]
    f = (1 + p.prefix_sums[m - 1]) * oracle.distance(i, (i + top * tm) % n)
    acc = 0.0
    for s in range(top):
        acc += oracle.distance(i, (i + s * tm) % n)
    f += tm * acc
    f += f_prev[(i + top * tm) % n]
    acc = 0.0
    for s in range(top):
        acc += g_prev[(i + s * tm) % n]
    f += acc
    return float(f)


def dp_step_g(oracle: MetricInstance, p: TaryParams, m: int, i: int, g_prev: Sequence[float]) -> float:
    n, tm = p.n, p.powers[m]
    acc = 0.0
    for s in range(p.t):
        acc += oracle.distance(i, (i + s * tm) % n)
    g = tm * acc
    acc = 0.0
    for s in range(p.t):
        acc += g_prev[(i + s * tm) % n]
    g += acc
    return float(g)


@dataclass
class DpTables:
    """f and g values for every point at ``level`` (the last level computed)."""

    params: TaryParams
    level: int
    f: np.ndarray
    g: np.ndarray
    queries: int = 0


@dataclass
class MedianResult:
    index: int
    proxy_cost: float
    queries: int
    params: TaryParams
    f_values: np.ndarray = field(repr=False, compare=False, default=None)


# -- engines -----------------------------------------------------------------
# Each engine fills f_cur[lo:hi], g_cur[lo:hi] for one level and returns the
# number of non-self oracle invocations it made.


def _scalar_chunk(oracle, p, m, lo, hi, f_prev, g_prev, f_cur, g_cur):
    counter = _CountingView(oracle)
    if m == 0:
        for i in range(lo, hi):
            f_cur[i], g_cur[i] = dp_base(counter, p, i)
    else:
        fp, gp = f_prev.tolist(), g_prev.tolist()
        for i in range(lo, hi):
            f_cur[i] = dp_step_f(counter, p, m, i, fp, gp)
            g_cur[i] = dp_step_g(counter, p, m, i, gp)
    return counter.count


class _CountingView(MetricInstance):
    """Counts non-self invocations on the way through to ``inner``."""

    def __init__(self, inner):
        self.inner = inner
        self.n = inner.n
        self.count = 0

    def distance(self, i, j):
        if i == j:
            return 0.0
        self.count += 1
        return self.inner.distance(i, j)


def _vector_chunk(oracle, p, m, lo, hi, f_prev, g_prev, f_cur, g_cur):
    n, t = p.n, p.t
    idx = np.arange(lo, hi, dtype=np.int64)
    queries = 0

    def hop(offset):
        nonlocal queries
        if offset % n == 0:
            return np.zeros(len(idx))
        queries += len(idx)
        return np.asarray(oracle.distances(idx, (idx + offset) % n), dtype=np.float64)

    if m == 0:
        acc = np.zeros(len(idx))
        for s0 in range(t):
            acc += hop(s0)
            if s0 == p.s_prime[0]:
                f_cur[lo:hi] = acc
        g_cur[lo:hi] = acc
        return queries

    tm, top = p.powers[m], p.s_prime[m]
    f = (1 + p.prefix_sums[m - 1]) * hop(top * tm)
    acc = np.zeros(len(idx))
    for s in range(top):
        acc += hop(s * tm)
    f += tm * acc
    f += f_prev[(idx + top * tm) % n]
    acc = np.zeros(len(idx))
    for s in range(top):
        acc += g_prev[(idx + s * tm) % n]
    f += acc
    f_cur[lo:hi] = f

    acc = np.zeros(len(idx))
    for s in range(t):
        acc += hop(s * tm)
    g = tm * acc
    acc = np.zeros(len(idx))
    for s in range(t):
        acc += g_prev[(idx + s * tm) % n]
    g += acc
    g_cur[lo:hi] = g
    return queries


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    bounds = [n * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


def dp_tables(
    oracle: MetricInstance,
    h: int,
    levels: int | None = None,
    *,
    engine: str = "auto",
    parallel: bool = False,
    workers: int | None = None,
) -> DpTables:
    """Run the DP for levels 0..levels-1 (default all h levels)."""
    p = _params(oracle.n, h)
    levels = h if levels is None else levels
    if not 1 <= levels <= h:
        raise UsageError(f"levels must be in [1, {h}], got {levels}")
    if engine == "auto":
        engine = "vector" if oracle.batched else "scalar"
    if engine not in ("scalar", "vector"):
        raise UsageError(f"unknown engine {engine!r}")
    run = _vector_chunk if engine == "vector" else _scalar_chunk

    n = p.n
    f_prev = np.zeros(n)
    g_prev = np.zeros(n)
    f_cur = np.zeros(n)
    g_cur = np.zeros(n)
    queries = 0
    recorder = oracle if isinstance(oracle, RecordingOracle) else None
    nworkers = (workers or os.cpu_count() or 1) if parallel else 1
    chunks = _chunks(n, nworkers)

    pool = ThreadPoolExecutor(max_workers=len(chunks)) if len(chunks) > 1 else None
    try:
        for m in range(levels):
            if pool is None:
                queries += run(oracle, p, m, 0, n, f_prev, g_prev, f_cur, g_cur)
            else:
                # each worker records into its own sub-trace; merged in ascending i
                subs = [recorder.spawn() if recorder is not None else oracle for _ in chunks]
                futures = [
                    pool.submit(run, sub, p, m, lo, hi, f_prev, g_prev, f_cur, g_cur)
                    for sub, (lo, hi) in zip(subs, chunks)
                ]
                queries += sum(fut.result() for fut in futures)
                if recorder is not None:
                    recorder.absorb(subs)
            f_prev, f_cur = f_cur, f_prev
            g_prev, g_cur = g_cur, g_prev
    finally:
        if pool is not None:
            pool.shutdown()
    return DpTables(p, levels - 1, f_prev, g_prev, queries)


def find_median(
    oracle: MetricInstance,
    h: int,
    *,
    engine: str = "auto",
    parallel: bool = False,
    workers: int | None = None,
) -> MedianResult:
    """Return the point minimizing the summed pseudodistance (lowest index on ties).

    Its true cost is within a factor 2h of the optimum.  The sequence of
    distance queries depends only on (n, h); see :func:`query_trace`.
    """
    p = _params(oracle.n, h)
    if p.n == 1:
        return MedianResult(0, 0.0, 0, p, np.zeros(1))
    tables = dp_tables(oracle, h, engine=engine, parallel=parallel, workers=workers)
    index = int(np.argmin(tables.f))  # first occurrence of the minimum
    return MedianResult(index, float(tables.f[index]), tables.queries, p, tables.f)


# -- the query schedule, without any metric ------------------------------------


def _per_point_offsets(p: TaryParams) -> list[list[int]]:
    """Offsets queried from each point, per level, in issue order (self included)."""
    sched = [list(range(p.t))]
    for m in range(1, p.h):
        tm, top = p.powers[m], p.s_prime[m]
        level = [top * tm] + [s * tm for s in range(top)] + [s * tm for s in range(p.t)]
        sched.append(level)
    return sched


def iter_query_trace(n: int, h: int) -> Iterator[tuple[int, int]]:
    p = _params(n, h)
    if n == 1:
        return
    for offsets in _per_point_offsets(p):
        for i in range(n):
            for off in offsets:
                j = (i + off) % n
                if j != i:
                    yield i, j


def query_trace(n: int, h: int) -> list[tuple[int, int]]:
    """The exact ordered (i, j) sequence find_median issues on any n-point metric."""
    return list(iter_query_trace(n, h))


def query_count(n: int, h: int) -> int:
    p = _params(n, h)
    if n == 1:
        return 0
    return n * sum(1 for offsets in _per_point_offsets(p) for off in offsets if off % n)


def distinct_pair_count(n: int, h: int) -> int:
    """Number of distinct unordered pairs in the query trace.

    Every offset is applied from every point, so the pairs are exactly
    {a, a+d} for d in the symmetric closure S of the nonzero offsets, and
    each such pair is hit from both ends: n * |S| / 2.
    """
    p = _params(n, h)
    if n == 1:
        return 0
    offs = {off % n for offsets in _per_point_offsets(p) for off in offsets} - {0}
    sym = offs | {n - d for d in offs}
    return n * len(sym) // 2
