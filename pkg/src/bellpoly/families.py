"""Binomial-type polynomial families and their deformations.

A family f_0..f_N (f_0 = 1) is of binomial type when
``f_n(p+q) = sum_k C(n,k) f_k(p) f_{n-k}(q)``. Families are always
materialized to a finite N declared up front. Validation is done by
grid evaluation on a degree-complete grid: both sides are bivariate of
degree at most N per variable, so agreement on an (N+1) x (N+1) grid of
distinct abscissae proves the polynomial identity, it does not merely
spot-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .bell import MomentSequence, stirling2, triangle_for
from .errors import FamilyTooShort
from .polynomials import Poly
from .rationals import ZERO, ONE, as_fraction


@dataclass(frozen=True)
class BinomialFamily:
    """Materialized family f_0..f_N with its accumulated deformation."""

    polys: tuple[Poly, ...]
    deformation: Fraction = ZERO
    kind: str | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        """Largest materialized index N."""
        return len(self.polys) - 1

    def poly(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("family index must be >= 0")
        if n > self.size:
            raise FamilyTooShort(
                f"f_{n} requested from a family materialized to N={self.size}"
                + (f" (kind {self.kind!r})" if self.kind else "")
            )
        return self.polys[n]

    def first_moment(self) -> Fraction:
        """x_1 = f_1'(0); the deformation does not change it."""
        p = self.poly(1)
        return p.coeffs[1] if p.degree >= 1 else ZERO


def family_from_moments(x: MomentSequence, size: int) -> BinomialFamily:
    """f_n(t) = sum_k B_{n,k}(x_1, x_2, ...) t^k for n = 0..size."""
    x.require(size)
    tri = triangle_for(x)
    polys = [Poly.one()]
    for n in range(1, size + 1):
        polys.append(Poly([ZERO] + [tri.value(n, k) for k in range(1, n + 1)]))
    return BinomialFamily(tuple(polys), kind="from_moments")


def moments_of(fam: BinomialFamily) -> MomentSequence:
    """x_n = f_n'(0); exact left inverse of family_from_moments."""
    values = []
    for n in range(1, fam.size + 1):
        p = fam.poly(n)
        values.append(p.coeffs[1] if p.degree >= 1 else ZERO)
    return MomentSequence.of(values)


@lru_cache(maxsize=None)
def abelize(fam: BinomialFamily, a) -> BinomialFamily:
    """The deformation f_n(t; a) = t/(a n + t) * f_n(a n + t).

    Realized exactly as ``t * shift(f_n / t, a*n)``; requires f_n(0) = 0
    for n >= 1 (NonZeroRemainder otherwise). The result is again of
    binomial type, and deformations compose additively.
    """
    a = as_fraction(a)
    if a == 0:
        return fam
    x = Poly.x()
    polys = [Poly.one()]
    for n in range(1, fam.size + 1):
        h = fam.poly(n).divide_exact(x)
        polys.append(h.shift(a * n).times_x())
    return BinomialFamily(tuple(polys), deformation=fam.deformation + a, kind=fam.kind)


def _monomial(size: int) -> tuple[Poly, ...]:
    return tuple(Poly.monomial(n) for n in range(size + 1))


def _falling(size: int) -> tuple[Poly, ...]:
    polys = [Poly.one()]
    for n in range(1, size + 1):
        polys.append(polys[-1] * Poly([-(n - 1), 1]))
    return tuple(polys)


def _rising(size: int) -> tuple[Poly, ...]:
    polys = [Poly.one()]
    for n in range(1, size + 1):
        polys.append(polys[-1] * Poly([n - 1, 1]))
    return tuple(polys)


def _touchard(size: int) -> tuple[Poly, ...]:
    # Built from the Stirling triangle, not from Bell evaluation, so it
    # stays an independent witness for B_{n,k}(1,1,...) = S(n,k).
    polys = [Poly.one()]
    for n in range(1, size + 1):
        polys.append(Poly([ZERO] + [Fraction(stirling2(n, k)) for k in range(1, n + 1)]))
    return tuple(polys)


def _abel(size: int, a: Fraction) -> tuple[Poly, ...]:
    polys = [Poly.one()]
    for n in range(1, size + 1):
        polys.append(Poly.monomial(n - 1).shift(a * n).times_x())
    return tuple(polys)


BUILTIN_KINDS = ("monomial", "falling", "rising", "abel", "touchard")


@lru_cache(maxsize=None)
def builtin_family(kind: str, size: int, a=None, moments: MomentSequence | None = None) -> BinomialFamily:
    """Construct a builtin family materialized to f_0..f_size.

    ``a`` is only meaningful for kind "abel"; ``moments`` only for kind
    "from_moments".
    """
    if kind == "monomial":
        return BinomialFamily(_monomial(size), kind=kind)
    if kind == "falling":
        return BinomialFamily(_falling(size), kind=kind)
    if kind == "rising":
        return BinomialFamily(_rising(size), kind=kind)
    if kind == "touchard":
        return BinomialFamily(_touchard(size), kind=kind)
    if kind == "abel":
        aval = as_fraction(a if a is not None else 1)
        return BinomialFamily(_abel(size, aval), deformation=aval, kind=kind)
    if kind == "from_moments":
        if moments is None:
            raise ValueError("from_moments requires a moment sequence")
        return family_from_moments(moments, size)
    raise ValueError(f"unknown family kind {kind!r}")


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    # first violation as (n, p, q, lhs, rhs); None when the check passed
    violation: tuple | None = None


def binomial_grid(size: int) -> list[tuple[Fraction, Fraction]]:
    """The canonical degree-complete grid: abscissae 0..size per axis."""
    axis = [Fraction(i) for i in range(size + 1)]
    return [(p, q) for p, q in product(axis, axis)]


def _grid_axes(points: Sequence[tuple], size: int) -> tuple[list, list]:
    ps = sorted({as_fraction(p) for p, _ in points})
    qs = sorted({as_fraction(q) for _, q in points})
    if len(ps) < size + 1 or len(qs) < size + 1:
        raise ValueError(
            f"degree-complete validation needs {size + 1} distinct abscissae per axis"
        )
    have = {(as_fraction(p), as_fraction(q)) for p, q in points}
    if not all((p, q) in have for p in ps for q in qs):
        raise ValueError("points must form a full grid of the supplied abscissae")
    return ps, qs


def check_binomial_type(fam: BinomialFamily, points: Sequence[tuple] | None = None) -> FamilyCheck:
    """Prove (via a degree-complete grid) or refute the binomial identity.

    On failure reports the first violating (n, p, q) in lexicographic
    order together with both side values.
    """
    size = fam.size
    if points is None:
        points = binomial_grid(size)
    ps, qs = _grid_axes(points, size)

    evals_p = {p: [fam.poly(n)(p) for n in range(size + 1)] for p in ps}
    evals_q = {q: [fam.poly(n)(q) for n in range(size + 1)] for q in qs}
    sum_cache: dict[Fraction, list[Fraction]] = {}
    for n in range(size + 1):
        binom = [math.comb(n, k) for k in range(n + 1)]
        for p in ps:
            fp = evals_p[p]
            for q in qs:
                point = p + q
                col = sum_cache.get(point)
                if col is None:
                    col = [fam.poly(m)(point) for m in range(size + 1)]
                    sum_cache[point] = col
                fq = evals_q[q]
                rhs = sum(binom[k] * fp[k] * fq[n - k] for k in range(n + 1))
                if col[n] != rhs:
                    return FamilyCheck(False, (n, p, q, col[n], rhs))
    return FamilyCheck(True)


def remark_family(builder, b, size: int) -> BinomialFamily:
    """Family p_n(t) = t * sum_k Y(n,k) (b n + t)^(k-1), p_0 = 1.

    ``builder`` is any Y-sequence evaluator with a ``value(n, k)``
    method whose values solve the partial-Bell fixed-point equation;
    the construction then yields a binomial-type family.
    """
    b = as_fraction(b)
    polys = [Poly.one()]
    for n in range(1, size + 1):
        acc = Poly.zero()
        for k in range(1, n + 1):
            acc = acc + Poly.monomial(k - 1).shift(b * n) * builder.value(n, k)
        polys.append(acc.times_x())
    return BinomialFamily(tuple(polys), kind="remark")
