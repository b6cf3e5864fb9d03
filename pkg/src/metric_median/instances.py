"""Seeded metric generators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .metric import (
    CycleMetric,
    EuclideanMetric,
    LineMetric,
    MetricInstance,
    UniformMetric,
    shortest_path_closure,
)

MASK64 = (1 << 64) - 1
KINDS = ("uniform", "line", "cycle", "euclidean", "graph")


class Rng64:
    """splitmix64.  Fixed algorithm so instances are reproducible anywhere."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def next_below(self, bound: int) -> int:
        return self.next_u64() % bound


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    dim: int = 2
    seed: int = 0
    density: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.n < 1:
            raise UsageError(f"n must be >= 1, got {self.n}")
        if self.dim < 1:
            raise UsageError(f"dim must be >= 1, got {self.dim}")
        if not 0 < self.density <= 1:
            raise UsageError(f"density must be in (0, 1], got {self.density}")


def euclidean_points(n: int, dim: int, seed: int) -> np.ndarray:
    rng = Rng64(seed)
    return np.array([[rng.next_float() for _ in range(dim)] for _ in range(n)])


def graph_weights(n: int, density: float, seed: int) -> np.ndarray:
    """Symmetric integer edge weights in [1, 100]; missing edges are inf.

    Pairs (i, j), i < j, are visited row-major and each draws a coin and a
    weight.  The path edges (i, i+1) are always kept so the graph is connected.
    """
    rng = Rng64(seed)
    W = np.full((n, n), np.inf)
    np.fill_diagonal(W, 0.0)
    for i in range(n):
        for j in range(i + 1, n):
            coin = rng.next_float()
            w = 1 + rng.next_below(100)
            if coin < density or j == i + 1:
                W[i, j] = W[j, i] = w
    return W


def generate(spec: GenSpec) -> MetricInstance:
    if spec.kind == "uniform":
        return UniformMetric(spec.n)
    if spec.kind == "line":
        return LineMetric(spec.n)
    if spec.kind == "cycle":
        return CycleMetric(spec.n)
    if spec.kind == "euclidean":
        return EuclideanMetric(euclidean_points(spec.n, spec.dim, spec.seed))
    return shortest_path_closure(graph_weights(spec.n, spec.density, spec.seed))
