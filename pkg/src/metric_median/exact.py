"""Brute-force ground truth.

Nothing here calls into the DP; these are the independent references the
DP is checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .dp import find_median, pseudo_cost
from .metric import MetricInstance, cost
from .tary import TaryParams

RATIO_RTOL = 1e-12


@dataclass(frozen=True)
class ExactResult:
    index: int
    opt_cost: float


@dataclass(frozen=True)
class VerifyReport:
    approx_index: int
    approx_cost: float
    opt_index: int
    opt_cost: float
    ratio: float
    bound: int
    passed: bool
    queries: int = 0

    def __bool__(self):
        return self.passed


def all_costs(oracle: MetricInstance) -> np.ndarray:
    """cost(i) for every i, each summed in ascending j."""
    n = oracle.n
    if not oracle.batched:
        return np.array([cost(oracle, i) for i in range(n)])
    rows = np.arange(n)
    acc = np.zeros(n)
    for j in range(n):
        col = np.full(n, j)
        acc += oracle.distances(rows, col)
    return acc


def exact_median(oracle: MetricInstance) -> ExactResult:
    costs = all_costs(oracle)
    i = int(np.argmin(costs))
    return ExactResult(i, float(costs[i]))


def pseudo_median_bruteforce(oracle: MetricInstance, p: TaryParams) -> int:
    best, best_i = None, 0
    for i in range(oracle.n):
        c = pseudo_cost(oracle, p, i)
        if best is None or c < best:
            best, best_i = c, i
    return best_i


def verify_ratio(oracle: MetricInstance, h: int, **kwargs) -> VerifyReport:
    """Run find_median and the exact scan; check cost(found) <= 2h * optimum."""
    res = find_median(oracle, h, **kwargs)
    opt = exact_median(oracle)
    approx = cost(oracle, res.index)
    ratio = 1.0 if opt.opt_cost == 0 else approx / opt.opt_cost
    bound = 2 * h
    return VerifyReport(
        res.index, approx, opt.index, opt.opt_cost, ratio, bound, ratio <= bound * (1 + RATIO_RTOL), res.queries
    )


# -- literal f/g definitions, by enumeration over digit tuples -----------------


def _digits_of(x: int, t: int, h: int) -> list[int]:
    out = []
    for _ in range(h):
        out.append(x % t if t > 1 else 0)
        x = x // t if t > 1 else x
    return out


def _path_sum(oracle, n, t, i, s, m):
    """sum_k d(i + sum_{l=m+1-k}^m s_l t^l, i + sum_{l=m-k}^m s_l t^l), k = 0..m."""
    total = 0.0
    for k in range(m + 1):
        a = i + sum(s[ell] * t**ell for ell in range(m + 1 - k, m + 1))
        b = i + sum(s[ell] * t**ell for ell in range(m - k, m + 1))
        total += oracle.distance(a % n, b % n)
    return total


def f_bruteforce(oracle: MetricInstance, h: int, i: int, m: int) -> float:
    n = oracle.n
    t = 1
    while t**h < n:
        t += 1
    sp = _digits_of(n - 1, t, h)
    limit = sum(sp[r] * t**r for r in range(m + 1))
    total = 0.0
    for s in itertools.product(range(t), repeat=m + 1):
        if sum(s[r] * t**r for r in range(m + 1)) <= limit:
            total += _path_sum(oracle, n, t, i, s, m)
    return total


def g_bruteforce(oracle: MetricInstance, h: int, i: int, m: int) -> float:
    n = oracle.n
    t = 1
    while t**h < n:
        t += 1
    total = 0.0
    for s in itertools.product(range(t), repeat=m + 1):
        total += _path_sum(oracle, n, t, i, s, m)
    return total
