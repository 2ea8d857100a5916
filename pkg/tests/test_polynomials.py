import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bellpoly import NonZeroRemainder, Poly, exp_shift_deriv, format_rational, parse_rational

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(rationals, min_size=0, max_size=8).map(Poly)


def test_parse_format_roundtrip():
    for text in ("3", "-5/7", "0", "22/7", "-1"):
        assert format_rational(parse_rational(text)) == text
    assert parse_rational("+4") == 4


def test_parse_rejects_noise():
    for bad in ("1.5", "3/0", "x", "1/-2", "2 / 3", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_shift_examples():
    x2 = Poly([0, 0, 1])
    assert x2.shift(0) == x2
    assert x2.shift(1) == Poly([1, 2, 1])
    assert Poly([F(-1, 2), 3]).shift(F(2, 3)) == Poly([F(3, 2), 3])


def test_derive_eval_examples():
    x3 = Poly([0, 0, 0, 1])
    assert x3.derive_eval(0, 2) == 8
    assert x3.derive_eval(2, 1) == 6
    assert x3.derive_eval(4, 5) == 0


def test_divide_exact_examples():
    assert Poly([0, 2, 1]).divide_exact(Poly([0, 1])) == Poly([2, 1])
    assert Poly([-1, 0, 1]).divide_exact(Poly([-1, 1])) == Poly([1, 1])
    with pytest.raises(NonZeroRemainder):
        Poly([1, 0, 1]).divide_exact(Poly([0, 1]))
    with pytest.raises(ZeroDivisionError):
        Poly([1]).divide_exact(Poly())


def test_exp_shift_deriv_examples():
    assert exp_shift_deriv(Poly([1]), 4, F(3), F(7)) == 81
    assert exp_shift_deriv(Poly([0, 1]), 2, 1, 0) == 2
    assert exp_shift_deriv(Poly([0, 0, 1]), 1, 0, 3) == 6


@given(polys, rationals)
@settings(max_examples=60, deadline=None)
def test_shift_roundtrip(p, c):
    assert p.shift(c).shift(-c) == p


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_divide_exact_inverts_multiplication(p, q):
    if q.is_zero():
        return
    assert (p * q).divide_exact(q) == p


@given(polys, st.integers(min_value=0, max_value=6), rationals)
@settings(max_examples=60, deadline=None)
def test_exp_shift_deriv_alpha_zero_is_plain_derivative(p, k, c):
    assert exp_shift_deriv(p, k, 0, c) == p.derive_eval(k, c)


@given(polys, st.integers(min_value=0, max_value=6), rationals)
@settings(max_examples=60, deadline=None)
def test_derive_eval_against_repeated_derivative(p, j, c):
    # second route: chain .derivative() j times, then evaluate
    q = p
    for _ in range(j):
        q = q.derivative()
    assert p.derive_eval(j, c) == q(c)


def _series_coeffs_of_shifted(p, c, order):
    # coefficients of p(c + z) in z, via the binomial theorem only
    out = [F(0)] * (order + 1)
    for i, coeff in enumerate(p.coeffs):
        for j in range(0, min(i, order) + 1):
            out[j] += coeff * math.comb(i, j) * c ** (i - j)
    return out


def _series_product_coeff(a, b, k):
    return sum(a[j] * b[k - j] for j in range(k + 1))


def test_leibniz_against_truncated_series():
    # brute-force oracle: expand exp(alpha z) * p(c + z) as a power series
    # and read off k! times the z^k coefficient
    rng = random.Random(20240811)
    for _ in range(120):
        deg = rng.randint(0, 8)
        p = Poly([F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(deg + 1)])
        k = rng.randint(0, 12)
        alpha = F(rng.randint(-4, 4), rng.randint(1, 3))
        c = F(rng.randint(-4, 4), rng.randint(1, 3))
        exp_series = [alpha**m / math.factorial(m) for m in range(k + 1)]
        shifted = _series_coeffs_of_shifted(p, c, k)
        expected = _series_product_coeff(exp_series, shifted, k) * math.factorial(k)
        assert exp_shift_deriv(p, k, alpha, c) == expected


def test_poly_arithmetic_basics():
    p = Poly([1, 2]) * Poly([0, 1]) + 3
    assert p == Poly([3, 1, 2])
    assert (-p)(2) == -(3 + 2 + 8)
    assert Poly([0, 1]) ** 3 == Poly([0, 0, 0, 1])
    assert Poly([1, 1]).times_x() == Poly([0, 1, 1])
    assert Poly([0, 0]).is_zero() and Poly().degree == -1


def test_poly_is_hashable_and_normalized():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert hash(Poly([1, 2, 0])) == hash(Poly([1, 2]))
    with pytest.raises(AttributeError):
        Poly([1]).coeffs = ()
