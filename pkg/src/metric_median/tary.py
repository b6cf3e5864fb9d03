"""Base-t digit arithmetic for offsets j in [0, t**h)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import UsageError


def smallest_base(n: int, h: int) -> int:
    """Smallest integer t >= 1 with t**h >= n, i.e. ceil(n ** (1/h)), exactly."""
    if h < 2:
        raise UsageError(f"h must be an integer >= 2, got {h}")
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    # float root as a starting guess only; integer checks settle it
    t = max(1, int(round(n ** (1.0 / h))))
    while t > 1 and (t - 1) ** h >= n:
        t -= 1
    while t**h < n:
        t += 1
    return t


@dataclass(frozen=True)
class TaryParams:
    n: int
    h: int
    t: int
    s_prime: tuple[int, ...]  # digits of n-1, little-endian
    powers: tuple[int, ...]  # t**0 .. t**(h-1)
    prefix_sums: tuple[int, ...]  # prefix_sums[m] = sum_{r<=m} s_prime[r] * t**r
    top: int = field(repr=False, default=0)  # t**h

    @classmethod
    def build(cls, n: int, h: int) -> "TaryParams":
        t = smallest_base(n, h)
        powers = tuple(t**k for k in range(h))
        digits = []
        rest = n - 1
        for _ in range(h):
            digits.append(rest % t if t > 1 else 0)
            rest = rest // t if t > 1 else rest
        prefix = []
        acc = 0
        for m in range(h):
            acc += digits[m] * powers[m]
            prefix.append(acc)
        return cls(n, h, t, tuple(digits), powers, tuple(prefix), t**h)

    def __post_init__(self):
        if self.prefix_sums and self.prefix_sums[-1] != self.n - 1:
            raise UsageError(f"n={self.n} does not fit in {self.h} base-{self.t} digits")


def to_digits(j: int, p: TaryParams) -> list[int]:
    """Little-endian base-t digits of j (index l holds the coefficient of t**l)."""
    if not 0 <= j < p.top:
        raise UsageError(f"offset {j} outside [0, {p.top})")
    digits = []
    for _ in range(p.h):
        if p.t > 1:
            j, r = divmod(j, p.t)
        else:
            r = 0
        digits.append(r)
    return digits


def from_digits(digits: Sequence[int], p: TaryParams) -> int:
    if len(digits) != p.h:
        raise UsageError(f"expected {p.h} digits, got {len(digits)}")
    total = 0
    for ell, s in enumerate(digits):
        if not 0 <= s < p.t:
            raise UsageError(f"digit {s} at position {ell} not in [0, {p.t})")
        total += s * p.powers[ell]
    return total


def suffix_value(digits: Sequence[int], a: int, p: TaryParams) -> int:
    """sum_{l=a}^{h-1} digits[l] * t**l; zero when a == h."""
    if not 0 <= a <= p.h:
        raise UsageError(f"level {a} not in [0, {p.h}]")
    return sum(digits[ell] * p.powers[ell] for ell in range(a, p.h))
