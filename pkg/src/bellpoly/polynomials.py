"""Dense univariate polynomials over exact rationals.

A polynomial is a tuple of Fraction coefficients, constant term first,
with no trailing zeros (the zero polynomial is the empty tuple). All
operations are pure and exact; instances are immutable and hashable, so
they are safe to share between threads and to use as cache keys.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .errors import NonZeroRemainder
from .rationals import ZERO, ONE, as_fraction


class Poly:
    """Immutable dense polynomial; ``Poly([1, 0, 2])`` is ``1 + 2x^2``."""

    __slots__ = ("coeffs",)

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> Poly:
        return _ZERO_POLY

    @classmethod
    def one(cls) -> Poly:
        return _ONE_POLY

    @classmethod
    def x(cls) -> Poly:
        return _X_POLY

    @classmethod
    def monomial(cls, power: int, coeff=1) -> Poly:
        """coeff * x**power"""
        return cls([ZERO] * power + [as_fraction(coeff)])

    @property
    def degree(self) -> int:
        """Degree of the leading term; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{i}")
        return f"Poly({' + '.join(parts)})"

    def __call__(self, point) -> Fraction:
        point = as_fraction(point)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __add__(self, other) -> Poly:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> Poly:
        return _coerce(other) + (-self)

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction, str)):
            c = as_fraction(other)
            return Poly([c * a for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return _ZERO_POLY
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = _ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def times_x(self) -> Poly:
        """Multiply by x (shift all coefficients up one slot)."""
        if self.is_zero():
            return self
        return Poly((ZERO,) + self.coeffs)

    def shift(self, c) -> Poly:
        """Return q with q(x) = p(x + c); degree is preserved."""
        c = as_fraction(c)
        if c == 0 or self.is_zero():
            return self
        n = len(self.coeffs)
        out = [ZERO] * n
        for coeff in reversed(self.coeffs):
            # out <- out*(x + c) + coeff, updated high to low
            for i in range(n - 1, 0, -1):
                out[i] = out[i - 1] + c * out[i]
            out[0] = c * out[0] + coeff
        return Poly(out)

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def derive_eval(self, order: int, point) -> Fraction:
        """Value of the order-th derivative at ``point``; 0 past the degree."""
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        if order > self.degree:
            return ZERO
        point = as_fraction(point)
        acc = ZERO
        for i in range(self.degree, order - 1, -1):
            acc = acc * point + self.coeffs[i] * math.perm(i, order)
        return acc

    def divide_exact(self, divisor: Poly) -> Poly:
        """Return h with self = divisor * h; NonZeroRemainder otherwise."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return _ZERO_POLY
        dd = divisor.degree
        if self.degree < dd:
            raise NonZeroRemainder(f"{self!r} is not divisible by {divisor!r}")
        rem = list(self.coeffs)
        lead = divisor.coeffs[-1]
        q = [ZERO] * (len(rem) - dd)
        for i in range(len(q) - 1, -1, -1):
            f = rem[i + dd] / lead
            q[i] = f
            if f:
                for j, dc in enumerate(divisor.coeffs):
                    rem[i + j] -= f * dc
        if any(rem[:dd]):
            raise NonZeroRemainder(f"{self!r} is not divisible by {divisor!r}")
        return Poly(q)


def exp_shift_deriv(p: Poly, k: int, alpha, c) -> Fraction:
    """k-th derivative at z = 0 of exp(alpha*z) * p(c + z).

    Computed by the finite Leibniz sum
    ``sum_j C(k, j) * alpha**(k-j) * p^(j)(c)``, truncated at
    min(k, degree) since higher derivatives of p vanish. For alpha = 0
    this reduces to ``p.derive_eval(k, c)``.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    alpha = as_fraction(alpha)
    c = as_fraction(c)
    top = min(k, p.degree)
    if top < 0:
        return ZERO
    if alpha == 0:
        return p.derive_eval(k, c)
    total = ZERO
    power = alpha ** (k - top)
    for j in range(top, -1, -1):
        total += math.comb(k, j) * power * p.derive_eval(j, c)
        power *= alpha
    return total


def _coerce(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly([as_fraction(value)])


_ZERO_POLY = Poly()
_ONE_POLY = Poly([ONE])
_X_POLY = Poly([ZERO, ONE])
