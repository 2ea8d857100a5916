"""Builders for Y(n,k)/Z(n,s) sequences and the fixed-point verifiers.

A Y builder produces candidate solutions of the partial-Bell equation

    (h)   B_{n,k}(Y(1,1), Y(2,1), Y(3,1), ...) = Y(n,k)

and a Z builder candidate solutions of the complete-Bell equation

    (b)   A_n(s Z(1,0), ..., s Z(n,0)) = s Z(n,s).

Builders are immutable value objects; evaluation is pure, so grids may
be evaluated concurrently. Every formula is evaluated through the
polynomial pipeline (deform, shift, exponential-shift derivative); no
symbolic exponentials are ever materialized.

Shorthands used below: T = r(n-k) + sk and R = nr + s. The diagonal
factor sk/T is taken as 1 when n = k, including at s = 0 where it is
formally 0/0; this is the unique value consistent with (h) on the
diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bell import BellTriangle, MomentSequence, bell_complete, triangle_for
from .errors import (
    BellPolyError,
    DegenerateT,
    NotNormalized,
    ZeroAlpha,
    ZeroFirstMoment,
    ZeroGamma,
)
from .families import BinomialFamily, abelize
from .polynomials import exp_shift_deriv
from .rationals import ZERO, ONE, as_fraction, format_rational
from .reporting import ERROR, FAIL, PASS, Counterexample, IdentityReport, timer


@dataclass(frozen=True)
class AuxSequence:
    """Finite-support auxiliary sequence a_1..a_M.

    Entries beyond M are implicitly zero, which makes every j-sum in the
    generalized builders exactly finite: B_{j,T}(a_1,...,a_M,0,...)
    vanishes for j > M*T.
    """

    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, values) -> AuxSequence:
        return cls(tuple(as_fraction(v) for v in values))

    @property
    def support(self) -> int:
        return len(self.values)

    def phi(self, t) -> Fraction:
        """phi(t) = sum_i a_i t^i / i!, an exact polynomial evaluation."""
        t = as_fraction(t)
        total = ZERO
        power = ONE
        for i, a in enumerate(self.values, start=1):
            power *= t
            total += a * power / math.factorial(i)
        return total

    def triangle(self) -> BellTriangle:
        return triangle_for(MomentSequence(self.values), zero_tail=True)


def _nat(name: str, value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValueError(f"{name} must be a natural number, got {value!r}")
    return value


def _check_cell_y(n: int, k: int) -> None:
    if not (n >= k >= 1):
        raise ValueError(f"need n >= k >= 1, got (n, k) = ({n}, {k})")


def _check_cell_z(n: int, s: int) -> None:
    if n < 1 or s < 0:
        raise ValueError(f"need n >= 1 and s >= 0, got (n, s) = ({n}, {s})")


def _fmt(value) -> str:
    return format_rational(as_fraction(value))


class _YBase:
    """Shared conventions for Y builders carrying (r, s)."""

    name = "?"
    r: int
    s: int

    def _init_rs(self, r: int, s: int) -> None:
        _nat("r", r)
        _nat("s", s)
        if r + s < 1:
            raise ValueError("r + s >= 1 required (use the r=s=0 builder otherwise)")
        self.r = r
        self.s = s

    def _T(self, n: int, k: int) -> int:
        T = self.r * (n - k) + self.s * k
        if T == 0 and n > k:
            raise DegenerateT(f"T = 0 at (n, k) = ({n}, {k})")
        return T

    def moment(self, m: int) -> Fraction:
        return self.value(m, 1)

    def value(self, n: int, k: int) -> Fraction:  # pragma: no cover - overridden
        raise NotImplementedError


class YProp4(_YBase):
    """Reference solution of (h): ratio of Bell values over a base sequence.

    Y(n,k) = C(n,k) * (sk/T) * B(T + n - k, T) / C(T + n - k, T), where
    B runs over the supplied moments.
    """

    name = "prop4"

    def __init__(self, moments: MomentSequence, r: int, s: int):
        self._init_rs(r, s)
        self.moments = moments
        self._tri = triangle_for(moments)

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        top = T + (n - k)
        return (
            math.comb(n, k)
            * Fraction(self.s * k, T)
            * self._tri.value(top, T)
            / math.comb(top, T)
        )

    def params(self) -> dict:
        return {
            "moments": self.moments.label or [_fmt(v) for v in self.moments.values],
            "r": self.r,
            "s": self.s,
        }


class _FamilyYBase(_YBase):
    """Y builders over a deformed binomial-type family."""

    def _init_family(self, fam: BinomialFamily, a) -> None:
        self.base = fam
        self.a = as_fraction(a)
        self.fam = abelize(fam, self.a)

    def _family_params(self) -> dict:
        return {"family": self.base.kind or "custom", "a": _fmt(self.a)}


class YThm1(_FamilyYBase):
    """Y(n,k) = C(n,k) (sk/T) D_{z=0}^T [e^{alpha z} f_{n-k}(Tx + z; a)]."""

    name = "thm1"

    def __init__(self, fam: BinomialFamily, a, x, alpha, r: int, s: int):
        self._init_rs(r, s)
        self._init_family(fam, a)
        self.x = as_fraction(x)
        self.alpha = as_fraction(alpha)

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        deriv = exp_shift_deriv(self.fam.poly(n - k), T, self.alpha, T * self.x)
        return math.comb(n, k) * Fraction(self.s * k, T) * deriv

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "alpha": _fmt(self.alpha),
            "r": self.r,
            "s": self.s,
        }


class YThm1Alpha0(_FamilyYBase):
    """alpha-free variant: n!/(k!(T+n-k)!) (sk/T) D^T f_{T+n-k}(Tx + z; a)|_{z=0}."""

    name = "thm1-alpha0"

    def __init__(self, fam: BinomialFamily, a, x, r: int, s: int):
        self._init_rs(r, s)
        self._init_family(fam, a)
        self.x = as_fraction(x)

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        q = T + n - k
        deriv = self.fam.poly(q).derive_eval(T, T * self.x)
        return (
            Fraction(math.factorial(n), math.factorial(k) * math.factorial(q))
            * Fraction(self.s * k, T)
            * deriv
        )

    def params(self) -> dict:
        return {**self._family_params(), "x": _fmt(self.x), "r": self.r, "s": self.s}


class YRS0(_FamilyYBase):
    """The r = s = 0 case: Y(n,k) = C(n,k) f_{n-k}(kx; a).

    The k-fold dilation of the argument is forced: with moment row
    Y(m,1) = m f_{m-1}(x;a) the generating function of the Bell side is
    t^k F(t;a)^{kx} / k!, whose coefficients are C(n,k) f_{n-k}(kx;a).
    (The source display omits the k; without it (h) already fails at
    (n,k) = (3,2) for f_n = x^n, x = 2.)
    """

    name = "rs0"

    def __init__(self, fam: BinomialFamily, a, x):
        self._init_family(fam, a)
        self.x = as_fraction(x)
        self.r = 0
        self.s = 0

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        return math.comb(n, k) * self.fam.poly(n - k)(k * self.x)

    def params(self) -> dict:
        return {**self._family_params(), "x": _fmt(self.x), "r": 0, "s": 0}


class YThm3(_FamilyYBase):
    """Generalized form with an auxiliary sequence:

    Y(n,k) = C(n,k) (sk/T) T! * sum_{j=T}^{M T} B_{j,T}(a_1, a_2, ...)
             * D_{z=0}^{ju+vT} [e^{alpha z} f_{n-k}(beta j + lambda T + z; a)]
             * x^j / j!
    """

    name = "thm3"

    def __init__(self, fam, a, aux: AuxSequence, x, alpha, beta, lam, u: int, v: int, r: int, s: int):
        self._init_rs(r, s)
        self._init_family(fam, a)
        self.aux = aux
        self.x = as_fraction(x)
        self.alpha = as_fraction(alpha)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = _nat("u", u)
        self.v = _nat("v", v)
        self._aux_tri = aux.triangle()

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        p = self.fam.poly(n - k)
        total = ZERO
        for j in range(T, self.aux.support * T + 1):
            b = self._aux_tri.value(j, T)
            if b == 0:
                continue
            deriv = exp_shift_deriv(p, j * self.u + self.v * T, self.alpha, self.beta * j + self.lam * T)
            if deriv == 0:
                continue
            total += b * deriv * self.x**j / math.factorial(j)
        return math.comb(n, k) * Fraction(self.s * k, T) * math.factorial(T) * total

    def params(self) -> dict:
        return {
            **self._family_params(),
            "aux": [_fmt(v) for v in self.aux.values],
            "x": _fmt(self.x),
            "alpha": _fmt(self.alpha),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
            "s": self.s,
        }


class YThm3Alpha0(_FamilyYBase):
    """alpha-free generalized form; the j-sum stops at T + floor((n-k)/u)
    for u >= 1 because higher derivatives of f_{(u+v)T+n-k} vanish."""

    name = "thm3-alpha0"

    def __init__(self, fam, a, aux: AuxSequence, x, beta, lam, u: int, v: int, r: int, s: int):
        self._init_rs(r, s)
        self._init_family(fam, a)
        self.aux = aux
        self.x = as_fraction(x)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = _nat("u", u)
        self.v = _nat("v", v)
        self._aux_tri = aux.triangle()

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        q = (self.u + self.v) * T + (n - k)
        p = self.fam.poly(q)
        j_hi = self.aux.support * T
        if self.u >= 1:
            j_hi = min(j_hi, T + (n - k) // self.u)
        total = ZERO
        for j in range(T, j_hi + 1):
            b = self._aux_tri.value(j, T)
            if b == 0:
                continue
            deriv = p.derive_eval(j * self.u + self.v * T, self.beta * j + self.lam * T)
            if deriv == 0:
                continue
            total += b * deriv * self.x**j / math.factorial(j)
        return (
            Fraction(math.factorial(n), math.factorial(k))
            * Fraction(self.s * k, T)
            * Fraction(math.factorial(T), math.factorial(q))
            * total
        )

    def params(self) -> dict:
        return {
            **self._family_params(),
            "aux": [_fmt(v) for v in self.aux.values],
            "x": _fmt(self.x),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
            "s": self.s,
        }


class YCorP1(_FamilyYBase):
    """Finite Leibniz corollary:
    Y(n,k) = C(n,k) (sk/T) sum_{j=0}^{n-k} C(T,j) D^j f_{n-k}(z;a)|_{z=Tx} alpha^j."""

    name = "p1"

    def __init__(self, fam, a, x, alpha, r: int, s: int):
        self._init_rs(r, s)
        self._init_family(fam, a)
        self.x = as_fraction(x)
        self.alpha = as_fraction(alpha)

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        p = self.fam.poly(n - k)
        point = T * self.x
        total = ZERO
        for j in range(0, n - k + 1):
            c = math.comb(T, j)
            if c == 0:
                continue
            total += c * p.derive_eval(j, point) * self.alpha**j
        return math.comb(n, k) * Fraction(self.s * k, T) * total

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "alpha": _fmt(self.alpha),
            "r": self.r,
            "s": self.s,
        }


def _corollary_tail(j: int, slope: Fraction, base: Fraction) -> Fraction:
    # slope*j*base^(j-1) + base^j with the j = 0 term being exactly 1
    if j == 0:
        return ONE
    return slope * j * base ** (j - 1) + base**j


class YCorZ1(_YBase):
    """Bell-weighted corollary in free parameters (b, c) over a base sequence."""

    name = "z1"

    def __init__(self, moments: MomentSequence, b, c, r: int, s: int):
        self._init_rs(r, s)
        self.moments = moments
        self.b = as_fraction(b)
        self.c = as_fraction(c)
        self._tri = triangle_for(moments)

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        q = T + n - k
        base = self.b * (n - k) + self.c * self.s * k
        slope = (self.r + 1) * self.c - self.b
        total = ZERO
        for j in range(0, n - k + 1):
            total += (
                math.comb(T + j - 1, T - 1)
                * self._tri.value(q, T + j)
                * _corollary_tail(j, slope, base)
            )
        return Fraction(self.s * k, T) * math.comb(n, k) * total / math.comb(q, n - k)

    def params(self) -> dict:
        return {
            "moments": self.moments.label or [_fmt(v) for v in self.moments.values],
            "b": _fmt(self.b),
            "c": _fmt(self.c),
            "r": self.r,
            "s": self.s,
        }


class YCorZ2(_YBase):
    """Specialization of the (b, c) corollary with a single scalar x."""

    name = "z2"

    def __init__(self, moments: MomentSequence, x, r: int, s: int):
        self._init_rs(r, s)
        self.moments = moments
        self.x = as_fraction(x)
        self._tri = triangle_for(moments)

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        q = T + n - k
        scaled = q * self.x
        total = ZERO
        for j in range(0, n - k + 1):
            total += (
                math.comb(T + j - 1, T - 1) * self._tri.value(q, T + j) * scaled**j
            )
        return Fraction(self.s * k, T) * math.comb(n, k) * total / math.comb(q, n - k)

    def params(self) -> dict:
        return {
            "moments": self.moments.label or [_fmt(v) for v in self.moments.values],
            "x": _fmt(self.x),
            "r": self.r,
            "s": self.s,
        }


class YCorZ8A(_FamilyYBase):
    """Two-parameter binomial corollary (requires v >= u):
    Y(n,k) = C(n,k) (sk/T) sum_j C(T,j)
             D_{z=0}^{ju+vT} [e^{alpha z} f_{n-k}(beta j + lambda T + z; a)]
             x^j y^{T-j}."""

    name = "z8a"

    def __init__(self, fam, a, x, y, alpha, beta, lam, u: int, v: int, r: int, s: int):
        self._init_rs(r, s)
        self._init_family(fam, a)
        if _nat("v", v) < _nat("u", u):
            raise ValueError("v >= u required")
        self.x = as_fraction(x)
        self.y = as_fraction(y)
        self.alpha = as_fraction(alpha)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = u
        self.v = v

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        p = self.fam.poly(n - k)
        total = ZERO
        for j in range(0, T + 1):
            deriv = exp_shift_deriv(
                p, j * self.u + self.v * T, self.alpha, self.beta * j + self.lam * T
            )
            if deriv == 0:
                continue
            total += math.comb(T, j) * deriv * self.x**j * self.y ** (T - j)
        return math.comb(n, k) * Fraction(self.s * k, T) * total

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "y": _fmt(self.y),
            "alpha": _fmt(self.alpha),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
            "s": self.s,
        }


Z8B_READINGS = ("printed", "theorem-index")


class YCorZ8B(_FamilyYBase):
    """alpha-free companion of the two-parameter corollary (v >= u).

    The family index is ambiguous in the source statement; both
    readings are implemented. "printed" uses f_{vT+n-k} (the index as
    displayed), "theorem-index" uses f_{(u+v)T+n-k}. The readings
    coincide at u = 0; verification selects "printed" as the one that
    satisfies (h), and it is the default.
    """

    name = "z8b"

    def __init__(self, fam, a, x, y, beta, lam, u: int, v: int, r: int, s: int, reading: str = "printed"):
        self._init_rs(r, s)
        self._init_family(fam, a)
        if _nat("v", v) < _nat("u", u):
            raise ValueError("v >= u required")
        if reading not in Z8B_READINGS:
            raise ValueError(f"reading must be one of {Z8B_READINGS}")
        self.x = as_fraction(x)
        self.y = as_fraction(y)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = u
        self.v = v
        self.reading = reading

    def value(self, n: int, k: int) -> Fraction:
        _check_cell_y(n, k)
        if self.s == 0:
            return ONE if n == k else ZERO
        T = self._T(n, k)
        if self.reading == "printed":
            idx = self.v * T + n - k
        else:
            idx = (self.u + self.v) * T + n - k
        p = self.fam.poly(idx)
        total = ZERO
        for j in range(0, T + 1):
            deriv = p.derive_eval(j * self.u + self.v * T, self.beta * j + self.lam * T)
            if deriv == 0:
                continue
            total += math.comb(T, j) * deriv * self.x**j * self.y ** (T - j)
        return (
            Fraction(math.factorial(n), math.factorial(k))
            * Fraction(self.s * k, T)
            * total
            / math.factorial(idx)
        )

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "y": _fmt(self.y),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
            "s": self.s,
            "reading": self.reading,
        }


class ScaledY:
    """lambda^(n-k) * Y(n,k); solves (h) whenever the inner builder does."""

    name = "scaled-y"

    def __init__(self, inner, lam):
        self.inner = inner
        self.lam = as_fraction(lam)
        if self.lam == 0:
            raise ValueError("scaling factor must be nonzero")

    def value(self, n: int, k: int) -> Fraction:
        return self.lam ** (n - k) * self.inner.value(n, k)

    def moment(self, m: int) -> Fraction:
        return self.value(m, 1)

    def params(self) -> dict:
        return {"scale": _fmt(self.lam), "inner": {"builder": self.inner.name, **self.inner.params()}}


class OverrideY:
    """Debugging wrapper that overrides individual cells (fault injection)."""

    name = "override-y"

    def __init__(self, inner, overrides: dict[tuple[int, int], Fraction]):
        self.inner = inner
        self.overrides = {key: as_fraction(v) for key, v in overrides.items()}

    def value(self, n: int, k: int) -> Fraction:
        hit = self.overrides.get((n, k))
        if hit is not None:
            return hit
        return self.inner.value(n, k)

    def moment(self, m: int) -> Fraction:
        return self.value(m, 1)

    def params(self) -> dict:
        return {
            "override": {f"{n},{k}": _fmt(v) for (n, k), v in sorted(self.overrides.items())},
            "inner": {"builder": self.inner.name, **self.inner.params()},
        }


# ---------------------------------------------------------------------------
# Z builders


class _ZBase:
    name = "?"
    r: int

    def _init_r(self, r: int) -> None:
        if _nat("r", r) < 1:
            raise ValueError("r >= 1 required")
        self.r = r

    def _R(self, n: int, s: int) -> int:
        return n * self.r + s

    def value(self, n: int, s: int) -> Fraction:  # pragma: no cover - overridden
        raise NotImplementedError


class ZProp8(_ZBase):
    """Reference solution of (b) over a normalized base sequence:
    Z(n,s) = (1/R) * B(R + n, R) / C(R + n, R)."""

    name = "prop8"

    def __init__(self, moments: MomentSequence, r: int):
        self._init_r(r)
        moments.require(1)
        if moments.x(1) != 1:
            raise NotNormalized(f"first moment must be 1, got {moments.x(1)}")
        self.moments = moments
        self._tri = triangle_for(moments)

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        top = R + n
        return Fraction(1, R) * self._tri.value(top, R) / math.comb(top, R)

    def params(self) -> dict:
        return {
            "moments": self.moments.label or [_fmt(v) for v in self.moments.values],
            "r": self.r,
        }


class _FamilyZBase(_ZBase):
    def _init_family(self, fam: BinomialFamily, a) -> None:
        self.base = fam
        self.a = as_fraction(a)
        self.fam = abelize(fam, self.a)

    def _family_params(self) -> dict:
        return {"family": self.base.kind or "custom", "a": _fmt(self.a)}


class ZThm2(_FamilyZBase):
    """Z(n,s) = alpha^(-s) (1/R) D_{z=0}^R [e^{alpha z} f_n(Rx + z; a)]."""

    name = "thm2"

    def __init__(self, fam, a, x, alpha, r: int):
        self._init_r(r)
        self._init_family(fam, a)
        self.x = as_fraction(x)
        self.alpha = as_fraction(alpha)
        if self.alpha == 0:
            raise ZeroAlpha("alpha = 0 is not valid here; use the alpha-free variant")

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        deriv = exp_shift_deriv(self.fam.poly(n), R, self.alpha, R * self.x)
        return self.alpha ** (-s) * Fraction(1, R) * deriv

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "alpha": _fmt(self.alpha),
            "r": self.r,
        }


class ZThm2Alpha0(_FamilyZBase):
    """alpha-free variant dividing by the first moment:
    Z(n,s) = Df_1(0)^(-s) (1/R) n!/(R+n)! D^R f_{R+n}(Rx + z; a)|_{z=0}."""

    name = "thm2-alpha0"

    def __init__(self, fam, a, x, r: int):
        self._init_r(r)
        self._init_family(fam, a)
        self.x = as_fraction(x)
        self.x1 = self.fam.first_moment()
        if self.x1 == 0:
            raise ZeroFirstMoment("Df_1(0) = 0; the formula divides by it")

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        deriv = self.fam.poly(R + n).derive_eval(R, R * self.x)
        return (
            self.x1 ** (-s)
            * Fraction(1, R)
            * Fraction(math.factorial(n), math.factorial(R + n))
            * deriv
        )

    def params(self) -> dict:
        return {**self._family_params(), "x": _fmt(self.x), "r": self.r}


class ZThm4(_FamilyZBase):
    """Generalized complete-Bell builder with gamma = alpha^v phi(x alpha^u):

    Z(n,s) = R!/(gamma^s R) * sum_{j=R}^{MR} B_{j,R}(a_1, ...)
             * D_{z=0}^{ju+vR} [e^{alpha z} f_n(beta j + lambda R + z; a)]
             * x^j / j!
    """

    name = "thm4"

    def __init__(self, fam, a, aux: AuxSequence, x, alpha, beta, lam, u: int, v: int, r: int):
        self._init_r(r)
        self._init_family(fam, a)
        self.aux = aux
        self.x = as_fraction(x)
        self.alpha = as_fraction(alpha)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = _nat("u", u)
        self.v = _nat("v", v)
        self.gamma = self.alpha**self.v * aux.phi(self.x * self.alpha**self.u)
        if self.gamma == 0:
            raise ZeroGamma("gamma = alpha^v phi(x alpha^u) vanished")
        self._aux_tri = aux.triangle()

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        p = self.fam.poly(n)
        total = ZERO
        for j in range(R, self.aux.support * R + 1):
            b = self._aux_tri.value(j, R)
            if b == 0:
                continue
            deriv = exp_shift_deriv(p, j * self.u + self.v * R, self.alpha, self.beta * j + self.lam * R)
            if deriv == 0:
                continue
            total += b * deriv * self.x**j / math.factorial(j)
        return Fraction(math.factorial(R), R) * self.gamma ** (-s) * total

    def params(self) -> dict:
        return {
            **self._family_params(),
            "aux": [_fmt(v) for v in self.aux.values],
            "x": _fmt(self.x),
            "alpha": _fmt(self.alpha),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
        }


class ZThm4Alpha0(_FamilyZBase):
    """alpha-free generalized builder; gamma has a two-case definition:
    a_1 x Df_1(0)^(u+v) for u >= 1, Df_1(0)^v phi(x) for u = 0."""

    name = "thm4-alpha0"

    def __init__(self, fam, a, aux: AuxSequence, x, beta, lam, u: int, v: int, r: int):
        self._init_r(r)
        self._init_family(fam, a)
        self.aux = aux
        self.x = as_fraction(x)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = _nat("u", u)
        self.v = _nat("v", v)
        x1 = self.fam.first_moment()
        if self.u >= 1:
            a1 = aux.values[0] if aux.support >= 1 else ZERO
            self.gamma = a1 * self.x * x1 ** (self.u + self.v)
        else:
            self.gamma = x1**self.v * aux.phi(self.x)
        if self.gamma == 0:
            raise ZeroGamma("gamma vanished (needs a_1, x and Df_1(0) nonzero for u >= 1)")
        self._aux_tri = aux.triangle()

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        q = n + (self.u + self.v) * R
        p = self.fam.poly(q)
        j_hi = self.aux.support * R
        if self.u >= 1:
            j_hi = min(j_hi, R + n // self.u)
        total = ZERO
        for j in range(R, j_hi + 1):
            b = self._aux_tri.value(j, R)
            if b == 0:
                continue
            deriv = p.derive_eval(j * self.u + self.v * R, self.beta * j + self.lam * R)
            if deriv == 0:
                continue
            total += b * deriv * self.x**j / math.factorial(j)
        return (
            Fraction(math.factorial(n) * math.factorial(R), R)
            * self.gamma ** (-s)
            * total
            / math.factorial(q)
        )

    def params(self) -> dict:
        return {
            **self._family_params(),
            "aux": [_fmt(v) for v in self.aux.values],
            "x": _fmt(self.x),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
        }


class ZCorP6(_FamilyZBase):
    """Z(n,s) = (1/R) sum_{j=0}^n C(R,j) D^j f_n(z;a)|_{z=Rx} alpha^j."""

    name = "p6"

    def __init__(self, fam, a, x, alpha, r: int):
        self._init_r(r)
        self._init_family(fam, a)
        self.x = as_fraction(x)
        self.alpha = as_fraction(alpha)

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        p = self.fam.poly(n)
        point = R * self.x
        total = ZERO
        for j in range(0, n + 1):
            c = math.comb(R, j)
            if c == 0:
                continue
            total += c * p.derive_eval(j, point) * self.alpha**j
        return Fraction(1, R) * total

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "alpha": _fmt(self.alpha),
            "r": self.r,
        }


class ZCorZ3(_ZBase):
    """Bell-weighted complete corollary in free parameters (b, c)."""

    name = "z3"

    def __init__(self, moments: MomentSequence, b, c, r: int):
        self._init_r(r)
        self.moments = moments
        self.b = as_fraction(b)
        self.c = as_fraction(c)
        moments.require(1)
        self.x1 = moments.x(1)
        if self.x1 == 0:
            raise ZeroFirstMoment("first moment must be nonzero")
        self._tri = triangle_for(moments)

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        top = R + n
        base = self.c * n + self.b * s
        slope = (self.r + 1) * self.b - self.c
        total = ZERO
        for j in range(0, n + 1):
            total += (
                math.comb(R + j - 1, R - 1)
                * self._tri.value(top, R + j)
                * _corollary_tail(j, slope, base)
            )
        return self.x1 ** (-s) * Fraction(1, R) * total / math.comb(top, n)

    def params(self) -> dict:
        return {
            "moments": self.moments.label or [_fmt(v) for v in self.moments.values],
            "b": _fmt(self.b),
            "c": _fmt(self.c),
            "r": self.r,
        }


class ZCorZ4(_ZBase):
    """Specialization of the (b, c) complete corollary with one scalar x."""

    name = "z4"

    def __init__(self, moments: MomentSequence, x, r: int):
        self._init_r(r)
        self.moments = moments
        self.x = as_fraction(x)
        moments.require(1)
        self.x1 = moments.x(1)
        if self.x1 == 0:
            raise ZeroFirstMoment("first moment must be nonzero")
        self._tri = triangle_for(moments)

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        top = R + n
        scaled = top * self.x
        total = ZERO
        for j in range(0, n + 1):
            total += math.comb(R + j - 1, R - 1) * self._tri.value(top, R + j) * scaled**j
        return self.x1 ** (-s) * Fraction(1, R) * total / math.comb(top, n)

    def params(self) -> dict:
        return {
            "moments": self.moments.label or [_fmt(v) for v in self.moments.values],
            "x": _fmt(self.x),
            "r": self.r,
        }


class ZCorZ12A(_FamilyZBase):
    """Two-parameter complete corollary (v >= u), gamma = alpha^v (x alpha^u + y)."""

    name = "z12a"

    def __init__(self, fam, a, x, y, alpha, beta, lam, u: int, v: int, r: int):
        self._init_r(r)
        self._init_family(fam, a)
        if _nat("v", v) < _nat("u", u):
            raise ValueError("v >= u required")
        self.x = as_fraction(x)
        self.y = as_fraction(y)
        self.alpha = as_fraction(alpha)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = u
        self.v = v
        self.gamma = self.alpha**v * (self.x * self.alpha**u + self.y)
        if self.gamma == 0:
            raise ZeroGamma("gamma = alpha^v (x alpha^u + y) vanished")

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        p = self.fam.poly(n)
        total = ZERO
        for j in range(0, R + 1):
            deriv = exp_shift_deriv(
                p, j * self.u + self.v * R, self.alpha, self.beta * j + self.lam * R
            )
            if deriv == 0:
                continue
            total += math.comb(R, j) * deriv * self.x**j * self.y ** (R - j)
        return Fraction(1, R) * self.gamma ** (-s) * total

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "y": _fmt(self.y),
            "alpha": _fmt(self.alpha),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
        }


Z12B_READINGS = ("derived", "printed")


class ZCorZ12B(_FamilyZBase):
    """alpha-free companion of the two-parameter complete corollary (v >= u).

    The source display disagrees with the generalized theorem it
    specializes: it prints family index n+(u+v)R and swaps the two
    gamma cases. "derived" (the default) uses the re-derived reading
    (index n+vR, gamma = y Df_1(0)^v for u >= 1 and (x+y) Df_1(0)^v for
    u = 0); "printed" follows the display verbatim. The readings
    coincide at u = 0 up to the gamma swap; verification selects
    "derived".
    """

    name = "z12b"

    def __init__(self, fam, a, x, y, beta, lam, u: int, v: int, r: int, reading: str = "derived"):
        self._init_r(r)
        self._init_family(fam, a)
        if _nat("v", v) < _nat("u", u):
            raise ValueError("v >= u required")
        if reading not in Z12B_READINGS:
            raise ValueError(f"reading must be one of {Z12B_READINGS}")
        self.x = as_fraction(x)
        self.y = as_fraction(y)
        self.beta = as_fraction(beta)
        self.lam = as_fraction(lam)
        self.u = u
        self.v = v
        self.reading = reading
        x1 = self.fam.first_moment()
        if reading == "derived":
            self.gamma = self.y * x1**v if u >= 1 else (self.x + self.y) * x1**v
        else:
            self.gamma = (self.x + self.y) * x1**v if u >= 1 else self.y * x1**v
        if self.gamma == 0:
            raise ZeroGamma("gamma vanished")

    def value(self, n: int, s: int) -> Fraction:
        _check_cell_z(n, s)
        R = self._R(n, s)
        if self.reading == "derived":
            idx = n + self.v * R
        else:
            idx = n + (self.u + self.v) * R
        p = self.fam.poly(idx)
        total = ZERO
        for j in range(0, R + 1):
            deriv = p.derive_eval(j * self.u + self.v * R, self.beta * j + self.lam * R)
            if deriv == 0:
                continue
            total += math.comb(R, j) * deriv * self.x**j * self.y ** (R - j)
        return (
            Fraction(math.factorial(n), R)
            * self.gamma ** (-s)
            * total
            / math.factorial(idx)
        )

    def params(self) -> dict:
        return {
            **self._family_params(),
            "x": _fmt(self.x),
            "y": _fmt(self.y),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "u": self.u,
            "v": self.v,
            "r": self.r,
            "reading": self.reading,
        }


class ScaledZ:
    """lambda^n * Z(n,s); solves (b) whenever the inner builder does."""

    name = "scaled-z"

    def __init__(self, inner, lam):
        self.inner = inner
        self.lam = as_fraction(lam)
        if self.lam == 0:
            raise ValueError("scaling factor must be nonzero")

    def value(self, n: int, s: int) -> Fraction:
        return self.lam**n * self.inner.value(n, s)

    def params(self) -> dict:
        return {"scale": _fmt(self.lam), "inner": {"builder": self.inner.name, **self.inner.params()}}


class OverrideZ:
    """Debugging wrapper overriding individual (n, s) cells."""

    name = "override-z"

    def __init__(self, inner, overrides: dict[tuple[int, int], Fraction]):
        self.inner = inner
        self.overrides = {key: as_fraction(v) for key, v in overrides.items()}

    def value(self, n: int, s: int) -> Fraction:
        hit = self.overrides.get((n, s))
        if hit is not None:
            return hit
        return self.inner.value(n, s)

    def params(self) -> dict:
        return {
            "override": {f"{n},{s}": _fmt(v) for (n, s), v in sorted(self.overrides.items())},
            "inner": {"builder": self.inner.name, **self.inner.params()},
        }


# ---------------------------------------------------------------------------
# Verifiers


def _builder_params(builder) -> dict:
    return {"builder": builder.name, **builder.params()}


def verify_h(builder, n_max: int) -> IdentityReport:
    """Check B_{n,k}(Y(1,1), Y(2,1), ...) = Y(n,k) for 1 <= k <= n <= n_max.

    Both sides are evaluated exactly; the moment row Y(m,1) is fed to
    the partial-Bell recurrence. Builder errors surface as status
    "error" with context.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    counterexamples: list[Counterexample] = []
    error = None
    with timer() as t:
        try:
            moments = MomentSequence.of(builder.value(m, 1) for m in range(1, n_max + 1))
            tri = BellTriangle(moments)
            for n in range(1, n_max + 1):
                for k in range(1, n + 1):
                    lhs = tri.value(n, k)
                    rhs = builder.value(n, k)
                    if lhs != rhs:
                        counterexamples.append(Counterexample(n, k, lhs, rhs))
        except BellPolyError as exc:
            error = f"{type(exc).__name__}: {exc}"
    status = ERROR if error else (PASS if not counterexamples else FAIL)
    return IdentityReport(
        identity="h",
        params=_builder_params(builder),
        n_max=n_max,
        s_max=None,
        status=status,
        counterexamples=counterexamples,
        elapsed_ms=t.elapsed_ms,
        error=error,
    )


def verify_b(builder, n_max: int, s_max: int) -> IdentityReport:
    """Check A_n(s Z(1,0), ..., s Z(n,0)) = s Z(n,s) on the (n, s) grid.

    The s = 0 rows degenerate to A_n(0,...,0) = 0 and are recorded as
    trivially passing cells.
    """
    if n_max < 1 or s_max < 0:
        raise ValueError("need n_max >= 1 and s_max >= 0")
    counterexamples: list[Counterexample] = []
    error = None
    with timer() as t:
        try:
            column = [builder.value(m, 0) for m in range(1, n_max + 1)]
            for s in range(0, s_max + 1):
                scaled = MomentSequence.of(s * z for z in column)
                tri = BellTriangle(scaled)
                for n in range(1, n_max + 1):
                    lhs = sum((tri.value(n, k) for k in range(1, n + 1)), ZERO)
                    rhs = s * builder.value(n, s)
                    if lhs != rhs:
                        counterexamples.append(Counterexample(n, s, lhs, rhs))
        except BellPolyError as exc:
            error = f"{type(exc).__name__}: {exc}"
    counterexamples.sort(key=lambda ce: (ce.n, ce.k_or_s))
    status = ERROR if error else (PASS if not counterexamples else FAIL)
    return IdentityReport(
        identity="b",
        params=_builder_params(builder),
        n_max=n_max,
        s_max=s_max,
        status=status,
        counterexamples=counterexamples,
        elapsed_ms=t.elapsed_ms,
        error=error,
    )


def builders_equal_y(first, second, n_max: int) -> IdentityReport:
    """Cell-by-cell equality of two Y builders (collapse/specialization checks)."""
    counterexamples: list[Counterexample] = []
    error = None
    with timer() as t:
        try:
            for n in range(1, n_max + 1):
                for k in range(1, n + 1):
                    lhs = first.value(n, k)
                    rhs = second.value(n, k)
                    if lhs != rhs:
                        counterexamples.append(Counterexample(n, k, lhs, rhs))
        except BellPolyError as exc:
            error = f"{type(exc).__name__}: {exc}"
    status = ERROR if error else (PASS if not counterexamples else FAIL)
    return IdentityReport(
        identity="equal-y",
        params={"first": _builder_params(first), "second": _builder_params(second)},
        n_max=n_max,
        s_max=None,
        status=status,
        counterexamples=counterexamples,
        elapsed_ms=t.elapsed_ms,
        error=error,
    )


def builders_equal_z(first, second, n_max: int, s_max: int) -> IdentityReport:
    """Cell-by-cell equality of two Z builders over the (n, s) grid."""
    counterexamples: list[Counterexample] = []
    error = None
    with timer() as t:
        try:
            for n in range(1, n_max + 1):
                for s in range(0, s_max + 1):
                    lhs = first.value(n, s)
                    rhs = second.value(n, s)
                    if lhs != rhs:
                        counterexamples.append(Counterexample(n, s, lhs, rhs))
        except BellPolyError as exc:
            error = f"{type(exc).__name__}: {exc}"
    status = ERROR if error else (PASS if not counterexamples else FAIL)
    return IdentityReport(
        identity="equal-z",
        params={"first": _builder_params(first), "second": _builder_params(second)},
        n_max=n_max,
        s_max=s_max,
        status=status,
        counterexamples=counterexamples,
        elapsed_ms=t.elapsed_ms,
        error=error,
    )


def complete_bell_of(values, n: int) -> Fraction:
    """A_n of an explicit argument list (helper mirroring verify_b's LHS)."""
    return bell_complete(MomentSequence.of(values), n)
