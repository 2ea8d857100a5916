"""Standalone identity checks: the s = 1 trio, the Appell connection and
the Hessenberg-determinant example.

Each check evaluates both sides of its identity exactly over the cell
grid 1 <= k <= n <= n_max and reports counterexamples; there is no
tolerance anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bell import BellTriangle, MomentSequence
from .errors import BellPolyError, InsufficientPrefix
from .families import BinomialFamily, abelize
from .polynomials import exp_shift_deriv
from .rationals import ZERO, ONE, as_fraction, format_rational
from .reporting import ERROR, FAIL, PASS, Counterexample, IdentityReport, timer

P2_ARGUMENT_FORMS = ("derived", "printed")


def _report(identity: str, params: dict, n_max: int, counterexamples, elapsed_ms: int, error=None) -> IdentityReport:
    status = ERROR if error else (PASS if not counterexamples else FAIL)
    return IdentityReport(
        identity=identity,
        params=params,
        n_max=n_max,
        s_max=None,
        status=status,
        counterexamples=list(counterexamples),
        elapsed_ms=elapsed_ms,
        error=error,
    )


def _grid_mismatches(arguments, rhs, n_max: int) -> list[Counterexample]:
    """Compare B_{n,k}(arguments) against rhs(n, k) over the cell grid."""
    tri = BellTriangle(MomentSequence.of(arguments))
    out = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            lhs = tri.value(n, k)
            want = rhs(n, k)
            if lhs != want:
                out.append(Counterexample(n, k, lhs, want))
    return out


def check_p2(fam: BinomialFamily, a, x, y, alpha, beta, lam, n_max: int,
             arguments: str = "derived") -> IdentityReport:
    """First s = 1 identity: exponential-shift arguments of first order.

    RHS(n,k) = C(n,k) sum_j C(k,j)
               D_{z=0}^k [e^{alpha z} f_{n-k}((beta-lam) j + lam k + z; a)]
               x^j y^(k-j).

    The "derived" argument list is
    m * (y * D_{z=0}[e^{alpha z} f_{m-1}(lam+z;a)]
         + x * D_{z=0}[e^{alpha z} f_{m-1}(beta+z;a)]);
    the "printed" form m*(alpha y f_{m-1}(lam;a) + x f'_{m-1}(beta;a))
    drops two of its four terms and already disagrees with the RHS at
    (n,k) = (1,1), so "derived" is the default.
    """
    if arguments not in P2_ARGUMENT_FORMS:
        raise ValueError(f"arguments must be one of {P2_ARGUMENT_FORMS}")
    x, y = as_fraction(x), as_fraction(y)
    alpha, beta, lam = as_fraction(alpha), as_fraction(beta), as_fraction(lam)
    deformed = abelize(fam, as_fraction(a))
    error = None
    mismatches: list[Counterexample] = []
    with timer() as t:
        try:
            args = []
            for m in range(1, n_max + 1):
                p = deformed.poly(m - 1)
                if arguments == "derived":
                    term = y * exp_shift_deriv(p, 1, alpha, lam) + x * exp_shift_deriv(p, 1, alpha, beta)
                else:
                    term = alpha * y * p(lam) + x * p.derive_eval(1, beta)
                args.append(m * term)

            def rhs(n: int, k: int) -> Fraction:
                p = deformed.poly(n - k)
                total = ZERO
                for j in range(0, k + 1):
                    deriv = exp_shift_deriv(p, k, alpha, (beta - lam) * j + lam * k)
                    if deriv == 0:
                        continue
                    total += math.comb(k, j) * deriv * x**j * y ** (k - j)
                return math.comb(n, k) * total

            mismatches = _grid_mismatches(args, rhs, n_max)
        except BellPolyError as exc:
            error = f"{type(exc).__name__}: {exc}"
    params = {
        "family": fam.kind or "custom", "a": format_rational(as_fraction(a)),
        "x": format_rational(x), "y": format_rational(y),
        "alpha": format_rational(alpha), "beta": format_rational(beta),
        "lambda": format_rational(lam), "arguments": arguments,
    }
    return _report("s1-p2", params, n_max, mismatches, t.elapsed_ms, error)


def check_p3(fam: BinomialFamily, a, x, y, beta, lam, n_max: int) -> IdentityReport:
    """Second s = 1 identity: plain first-derivative arguments.

    B_{n,k}(..., y f'_m(lam;a) + x f'_m(beta;a), ...)
      = (1/k!) sum_j C(k,j) D^k f_n((beta-lam) j + lam k + z; a)|_{z=0}
        x^j y^(k-j).
    """
    x, y = as_fraction(x), as_fraction(y)
    beta, lam = as_fraction(beta), as_fraction(lam)
    deformed = abelize(fam, as_fraction(a))
    error = None
    mismatches: list[Counterexample] = []
    with timer() as t:
        try:
            args = [
                y * deformed.poly(m).derive_eval(1, lam) + x * deformed.poly(m).derive_eval(1, beta)
                for m in range(1, n_max + 1)
            ]

            def rhs(n: int, k: int) -> Fraction:
                p = deformed.poly(n)
                total = ZERO
                for j in range(0, k + 1):
                    deriv = p.derive_eval(k, (beta - lam) * j + lam * k)
                    if deriv == 0:
                        continue
                    total += math.comb(k, j) * deriv * x**j * y ** (k - j)
                return total / math.factorial(k)

            mismatches = _grid_mismatches(args, rhs, n_max)
        except BellPolyError as exc:
            error = f"{type(exc).__name__}: {exc}"
    params = {
        "family": fam.kind or "custom", "a": format_rational(as_fraction(a)),
        "x": format_rational(x), "y": format_rational(y),
        "beta": format_rational(beta), "lambda": format_rational(lam),
    }
    return _report("s1-p3", params, n_max, mismatches, t.elapsed_ms, error)


def check_p4(fam: BinomialFamily, a, x, y, beta, lam, n_max: int) -> IdentityReport:
    """Third s = 1 identity: pure evaluation arguments.

    B_{n,k}(..., m (y f_{m-1}(lam;a) + x f_{m-1}(beta;a)), ...)
      = C(n,k) sum_j C(k,j) f_{n-k}((beta-lam) j + lam k; a) x^j y^(k-j).
    """
    x, y = as_fraction(x), as_fraction(y)
    beta, lam = as_fraction(beta), as_fraction(lam)
    deformed = abelize(fam, as_fraction(a))
    error = None
    mismatches: list[Counterexample] = []
    with timer() as t:
        try:
            args = [
                m * (y * deformed.poly(m - 1)(lam) + x * deformed.poly(m - 1)(beta))
                for m in range(1, n_max + 1)
            ]

            def rhs(n: int, k: int) -> Fraction:
                p = deformed.poly(n - k)
                total = ZERO
                for j in range(0, k + 1):
                    total += math.comb(k, j) * p((beta - lam) * j + lam * k) * x**j * y ** (k - j)
                return math.comb(n, k) * total

            mismatches = _grid_mismatches(args, rhs, n_max)
        except BellPolyError as exc:
            error = f"{type(exc).__name__}: {exc}"
    params = {
        "family": fam.kind or "custom", "a": format_rational(as_fraction(a)),
        "x": format_rational(x), "y": format_rational(y),
        "beta": format_rational(beta), "lambda": format_rational(lam),
    }
    return _report("s1-p4", params, n_max, mismatches, t.elapsed_ms, error)


def check_s1_identities(fam: BinomialFamily, a, x, y, alpha, beta, lam, n_max: int) -> IdentityReport:
    """Run the three s = 1 identities at one parameter point, merged."""
    with timer() as t:
        reports = [
            check_p2(fam, a, x, y, alpha, beta, lam, n_max),
            check_p3(fam, a, x, y, beta, lam, n_max),
            check_p4(fam, a, x, y, beta, lam, n_max),
        ]
    counterexamples = [ce for rep in reports for ce in rep.counterexamples]
    errors = [rep.error for rep in reports if rep.error]
    params = {
        "family": fam.kind or "custom", "a": format_rational(as_fraction(a)),
        "x": format_rational(as_fraction(x)), "y": format_rational(as_fraction(y)),
        "alpha": format_rational(as_fraction(alpha)),
        "beta": format_rational(as_fraction(beta)),
        "lambda": format_rational(as_fraction(lam)),
    }
    return _report("s1", params, n_max, counterexamples, t.elapsed_ms,
                   "; ".join(errors) if errors else None)


# ---------------------------------------------------------------------------
# Appell connection


def appell_trivariate(coeffs: list[Fraction], m: int, x, y, z) -> Fraction:
    """A_m(x,y,z) = sum_j C(m,j) a_j ((x+y)j + x+y+z) (xj + ym + x+y+z)^(m-1-j).

    The j = m term is the exact cancellation value a_m (the two linear
    forms coincide there, so the formally negative exponent drops out).
    """
    x, y, z = as_fraction(x), as_fraction(y), as_fraction(z)
    total = ZERO
    for j in range(0, m + 1):
        if j == m:
            total += coeffs[m]
            continue
        bracket = (x + y) * j + x + y + z
        base = x * j + y * m + x + y + z
        total += math.comb(m, j) * coeffs[j] * bracket * base ** (m - 1 - j)
    return total


def appell_univariate(coeffs: list[Fraction], m: int, z) -> Fraction:
    """A_m(z) = sum_j C(m,j) a_j z^(m-j)."""
    z = as_fraction(z)
    return sum(
        (math.comb(m, j) * coeffs[j] * z ** (m - j) for j in range(0, m + 1)), ZERO
    )


def appell_check(coeffs, x, y, z, n_max: int) -> IdentityReport:
    """Verify both Appell identities over 1 <= k <= n <= n_max.

    General form: B_{n,k}(A_0(x,y,z), ..., m A_{m-1}(x,y,z), ...)
      = sum_{j=k}^n C(n,j) B_{j,k}(a_0, 2a_1, 3a_2, ...)
        (jx + ny + kz)^(n-j-1) ((x+y)j + kz),
    with the j = n term read as its cancellation value. The x = y = 0
    specialization uses A_m(z) and weight (kz)^(n-j) with 0^0 = 1.
    """
    coeffs = [as_fraction(c) for c in coeffs]
    if len(coeffs) < n_max:
        raise InsufficientPrefix(f"need a_0..a_{n_max - 1}, got {len(coeffs)} values")
    x, y, z = as_fraction(x), as_fraction(y), as_fraction(z)
    weighted = MomentSequence.of(m * coeffs[m - 1] for m in range(1, n_max + 1))
    wtri = BellTriangle(weighted)
    counterexamples: list[Counterexample] = []
    with timer() as t:
        general_args = [m * appell_trivariate(coeffs, m - 1, x, y, z) for m in range(1, n_max + 1)]

        def general_rhs(n: int, k: int) -> Fraction:
            total = ZERO
            for j in range(k, n + 1):
                b = wtri.value(j, k)
                if b == 0:
                    continue
                if j == n:
                    total += math.comb(n, n) * b
                    continue
                base = j * x + n * y + k * z
                bracket = (x + y) * j + k * z
                total += math.comb(n, j) * b * base ** (n - j - 1) * bracket
            return total

        counterexamples.extend(_grid_mismatches(general_args, general_rhs, n_max))

        special_args = [m * appell_univariate(coeffs, m - 1, z) for m in range(1, n_max + 1)]

        def special_rhs(n: int, k: int) -> Fraction:
            total = ZERO
            for j in range(k, n + 1):
                b = wtri.value(j, k)
                if b:
                    total += math.comb(n, j) * b * (k * z) ** (n - j)
            return total

        counterexamples.extend(_grid_mismatches(special_args, special_rhs, n_max))

    params = {
        "a": [format_rational(c) for c in coeffs],
        "x": format_rational(x), "y": format_rational(y), "z": format_rational(z),
    }
    return _report("appell", params, n_max, counterexamples, t.elapsed_ms)


# ---------------------------------------------------------------------------
# Hessenberg-determinant example


def hessenberg_det(phi, order: int, shift=0) -> Fraction:
    """det of the order x order matrix with entries phi_{j-i+1} on and
    above the diagonal (phi_1 shifted by ``shift``) and i-1 on the
    subdiagonal; the empty matrix has determinant 1.

    Computed by the Hessenberg expansion along the last column:
    det A_m = sum_i (-1)^(m-i) ((m-1)!/(i-1)!) phi'_{m-i+1} det A_{i-1}.
    """
    return _hessenberg_dets(tuple(as_fraction(p) for p in phi), order, as_fraction(shift))[order]


def _hessenberg_dets(phi: tuple[Fraction, ...], order: int, shift: Fraction) -> list[Fraction]:
    if order > len(phi):
        raise InsufficientPrefix(f"need phi_1..phi_{order}, got {len(phi)} values")
    dets = [ONE]
    for m in range(1, order + 1):
        total = ZERO
        sign = 1
        for i in range(m, 0, -1):
            entry = phi[m - i] + (shift if m - i == 0 else 0)
            total += sign * Fraction(math.factorial(m - 1), math.factorial(i - 1)) * entry * dets[i - 1]
            sign = -sign
        dets.append(total)
    return dets


def hessenberg_check(phi, x, n_max: int) -> IdentityReport:
    """Verify the determinant identity

    B_{n,k}(1, ..., m det(A_{m-1} + x I), ...)
      = sum_{j=k}^n C(n,j) B_{j,k}(1, ..., m det A_{m-1}, ...) (kx)^(n-j).
    """
    phi = tuple(as_fraction(p) for p in phi)
    if len(phi) < n_max:
        raise InsufficientPrefix(f"need phi_1..phi_{n_max}, got {len(phi)} values")
    x = as_fraction(x)
    counterexamples: list[Counterexample] = []
    with timer() as t:
        shifted = _hessenberg_dets(phi, n_max - 1, x)
        plain = _hessenberg_dets(phi, n_max - 1, ZERO)
        args = [m * shifted[m - 1] for m in range(1, n_max + 1)]
        base_args = MomentSequence.of(m * plain[m - 1] for m in range(1, n_max + 1))
        btri = BellTriangle(base_args)

        def rhs(n: int, k: int) -> Fraction:
            total = ZERO
            for j in range(k, n + 1):
                b = btri.value(j, k)
                if b:
                    total += math.comb(n, j) * b * (k * x) ** (n - j)
            return total

        counterexamples = _grid_mismatches(args, rhs, n_max)
    params = {"phi": [format_rational(p) for p in phi], "x": format_rational(x)}
    return _report("hessenberg", params, n_max, counterexamples, t.elapsed_ms)
