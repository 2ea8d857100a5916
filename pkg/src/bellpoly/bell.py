"""Partial and complete Bell polynomials over exact moment sequences.

Two independent evaluation routes are provided: the convolution
recurrence ``B(n,k) = sum_m C(n-1,m-1) x_m B(n-m,k-1)`` (fast path,
memoized per sequence) and a direct sum over integer partitions
(:func:`bell_partial_oracle`, the ground truth for moderate n). The
classical triangles (Stirling, Lah) are generated by their own
recurrences so they can serve as independent witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InsufficientPrefix
from .rationals import ZERO, ONE, as_fraction


@dataclass(frozen=True)
class MomentSequence:
    """A finite prefix x_1..x_N of a scalar sequence, fully materialized.

    The first moment need not be 1; operations that require a
    normalized sequence say so explicitly.
    """

    values: tuple[Fraction, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not all(isinstance(v, Fraction) for v in self.values):
            object.__setattr__(self, "values", tuple(as_fraction(v) for v in self.values))

    @classmethod
    def of(cls, values: Iterable, label: str | None = None) -> MomentSequence:
        return cls(tuple(as_fraction(v) for v in values), label)

    @classmethod
    def from_spec(cls, spec, length: int) -> MomentSequence:
        """Build from the inline shorthands "1", "m", "m!", "delta" or a list."""
        if isinstance(spec, (list, tuple)):
            return cls.of(spec)
        if spec == "1":
            return cls.of([1] * length, label="1")
        if spec == "m":
            return cls.of(range(1, length + 1), label="m")
        if spec == "m!":
            return cls.of([math.factorial(m) for m in range(1, length + 1)], label="m!")
        if spec == "delta":
            return cls.of([1] + [0] * (length - 1), label="delta")
        raise ValueError(f"unknown moment-sequence spec {spec!r}")

    def __len__(self) -> int:
        return len(self.values)

    def x(self, m: int) -> Fraction:
        """1-based access to x_m."""
        if m < 1 or m > len(self.values):
            raise InsufficientPrefix(f"x_{m} requested from a {len(self.values)}-term sequence")
        return self.values[m - 1]

    def require(self, count: int) -> None:
        if len(self.values) < count:
            raise InsufficientPrefix(
                f"need {count} moments, have {len(self.values)}"
                + (f" (label {self.label!r})" if self.label else "")
            )


class BellTriangle:
    """Memoized table of partial Bell polynomial values over one sequence.

    Memoization is observationally pure: every cell equals what a fresh
    recomputation would return. With ``zero_tail`` the sequence is
    treated as having an implicit all-zero tail (used for finite-support
    auxiliary sequences); otherwise exceeding the prefix raises
    InsufficientPrefix.
    """

    def __init__(self, moments: MomentSequence, zero_tail: bool = False):
        self.moments = moments
        self.zero_tail = zero_tail
        self._memo: dict[tuple[int, int], Fraction] = {}

    def _x(self, m: int) -> Fraction:
        if self.zero_tail and m > len(self.moments):
            return ZERO
        return self.moments.x(m)

    def value(self, n: int, k: int) -> Fraction:
        if n < 0 or k < 0:
            raise ValueError("Bell indices must be nonnegative")
        if k == 0:
            return ONE if n == 0 else ZERO
        if k > n:
            return ZERO
        if not self.zero_tail:
            self.moments.require(n - k + 1)
        return self._cell(n, k)

    def _cell(self, n: int, k: int) -> Fraction:
        if k == 0:
            return ONE if n == 0 else ZERO
        if k > n:
            return ZERO
        key = (n, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        total = ZERO
        for m in range(1, n - k + 2):
            xm = self._x(m)
            if xm:
                total += math.comb(n - 1, m - 1) * xm * self._cell(n - m, k - 1)
        self._memo[key] = total
        return total


_triangles: dict[tuple[tuple[Fraction, ...], bool], BellTriangle] = {}


def triangle_for(x: MomentSequence, zero_tail: bool = False) -> BellTriangle:
    """Shared memoized triangle for a sequence, keyed by its values."""
    key = (x.values, zero_tail)
    tri = _triangles.get(key)
    if tri is None:
        tri = BellTriangle(x, zero_tail=zero_tail)
        _triangles[key] = tri
    return tri


def _as_moments(x) -> MomentSequence:
    return x if isinstance(x, MomentSequence) else MomentSequence.of(x)


def bell_partial(x, n: int, k: int) -> Fraction:
    """B_{n,k}(x_1, ..., x_{n-k+1}) by the convolution recurrence."""
    return triangle_for(_as_moments(x)).value(n, k)


def _partitions_exact(n: int, k: int, max_part: int) -> Iterator[list[int]]:
    """Nonincreasing part lists of n with exactly k parts, parts <= max_part."""
    if k == 0:
        if n == 0:
            yield []
        return
    for p in range(min(n - k + 1, max_part), 0, -1):
        for rest in _partitions_exact(n - p, k - 1, p):
            yield [p] + rest


def bell_partial_oracle(x, n: int, k: int) -> Fraction:
    """Independent route: direct sum over partitions of n into k parts.

    For each partition with c_j parts of size j the contribution is
    ``n! / prod(c_j! * (j!)**c_j) * prod(x_j**c_j)``.
    """
    x = _as_moments(x)
    if n < 0 or k < 0:
        raise ValueError("Bell indices must be nonnegative")
    if k == 0:
        return ONE if n == 0 else ZERO
    if k > n:
        return ZERO
    x.require(n - k + 1)
    total = ZERO
    for parts in _partitions_exact(n, k, n - k + 1):
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        weight = Fraction(math.factorial(n))
        term = ONE
        for j, c in counts.items():
            weight /= math.factorial(c) * math.factorial(j) ** c
            term *= x.x(j) ** c
        total += weight * term
    return total


def bell_complete(x, n: int) -> Fraction:
    """A_n = sum_k B_{n,k}, with A_0 = 1."""
    x = _as_moments(x)
    if n == 0:
        return ONE
    x.require(n)
    tri = triangle_for(x)
    return sum((tri.value(n, k) for k in range(1, n + 1)), ZERO)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind, S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if n == 0 or k == 0:
        return 1 if n == k else 0
    if k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1_unsigned(n: int, k: int) -> int:
    """Unsigned Stirling numbers of the first kind, c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1)."""
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if n == 0 or k == 0:
        return 1 if n == k else 0
    if k > n:
        return 0
    return (n - 1) * stirling1_unsigned(n - 1, k) + stirling1_unsigned(n - 1, k - 1)


@lru_cache(maxsize=None)
def lah(n: int, k: int) -> int:
    """Lah numbers via L(n,k) = L(n-1,k-1) + (n-1+k) L(n-1,k)."""
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if n == 0 or k == 0:
        return 1 if n == k else 0
    if k > n:
        return 0
    return lah(n - 1, k - 1) + (n - 1 + k) * lah(n - 1, k)


CLASSICAL_TRIANGLES = {
    "stirling2": stirling2,
    "stirling1": stirling1_unsigned,
    "lah": lah,
}


def classical_triangle(kind: str, n: int, k: int) -> int:
    try:
        fn = CLASSICAL_TRIANGLES[kind]
    except KeyError:
        raise ValueError(f"unknown triangle kind {kind!r}") from None
    return fn(n, k)


def check_scaling(x, n: int, k: int, alpha) -> tuple[bool, bool]:
    """Check the two classical scaling laws at one (n, k, alpha) point.

    Law 1: B(a x_1, a x_2, ...)      = a**k * B(x)
    Law 2: B(a x_1, a^2 x_2, ...)    = a**n * B(x)
    Both must hold identically; the pair of booleans is a property-test
    primitive, not an expected failure mode.
    """
    x = _as_moments(x)
    alpha = as_fraction(alpha)
    base = bell_partial(x, n, k)
    uniform = MomentSequence.of(alpha * v for v in x.values)
    graded = MomentSequence.of(alpha ** (m + 1) * v for m, v in enumerate(x.values))
    first = bell_partial(uniform, n, k) == alpha**k * base
    second = bell_partial(graded, n, k) == alpha**n * base
    return first, second


def shift_collapse(a, r: int, n: int, k: int) -> tuple[Fraction, Fraction]:
    """Both sides of the zero-prefix shift identity, computed independently.

    LHS: B_{n,k} of the sequence that is zero in positions 1..r and
    carries the given values from position r+1 on. RHS:
    ``n!/(n-rk)! * B_{n-rk,k}(i! a_{i+r} / (i+r)!)``, defined as 0 when
    n < k(r+1). Equality of the pair is the property under test.
    """
    a = _as_moments(a)
    if r < 0:
        raise ValueError("r must be >= 0")
    padded = MomentSequence.of((ZERO,) * r + a.values)
    lhs = bell_partial(padded, n, k)
    if n - r * k < k:
        rhs = ZERO
    else:
        transformed = MomentSequence.of(
            Fraction(math.factorial(i), math.factorial(i + r)) * a.values[i - 1]
            for i in range(1, len(a.values) + 1)
        )
        rhs = Fraction(math.factorial(n), math.factorial(n - r * k)) * bell_partial(
            transformed, n - r * k, k
        )
    return lhs, rhs
