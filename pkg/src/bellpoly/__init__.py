"""Exact-arithmetic Bell polynomials, binomial-type families, and a
zero-tolerance verification suite for their fixed-point identities.

Everything is computed over arbitrary-precision rationals
(:class:`fractions.Fraction`); equality checks are exact, never
approximate. The package exposes four layers:

- polynomials: dense rational polynomials and the exponential-shift
  derivative kernel,
- bell: partial/complete Bell polynomial evaluation with an independent
  partition-sum oracle and the classical triangles,
- families: binomial-type polynomial families, deformations and
  validation,
- identities / checks: builders for candidate identity solutions and
  the exact verifiers that test them.

The ``bellpoly`` CLI drives tables, family exports, single-cell checks
and config-driven verification runs.
"""

from .bell import (
    BellTriangle,
    MomentSequence,
    bell_complete,
    bell_partial,
    bell_partial_oracle,
    check_scaling,
    classical_triangle,
    lah,
    shift_collapse,
    stirling1_unsigned,
    stirling2,
)
from .checks import (
    appell_check,
    appell_trivariate,
    appell_univariate,
    check_p2,
    check_p3,
    check_p4,
    check_s1_identities,
    hessenberg_check,
    hessenberg_det,
)
from .errors import (
    BellPolyError,
    ConfigError,
    DegenerateT,
    FamilyTooShort,
    InsufficientPrefix,
    NonZeroRemainder,
    NotNormalized,
    UnboundedSum,
    ZeroAlpha,
    ZeroFirstMoment,
    ZeroGamma,
)
from .families import (
    BinomialFamily,
    FamilyCheck,
    abelize,
    binomial_grid,
    builtin_family,
    check_binomial_type,
    family_from_moments,
    moments_of,
    remark_family,
)
from .identities import (
    AuxSequence,
    OverrideY,
    OverrideZ,
    ScaledY,
    ScaledZ,
    YCorP1,
    YCorZ1,
    YCorZ2,
    YCorZ8A,
    YCorZ8B,
    YProp4,
    YRS0,
    YThm1,
    YThm1Alpha0,
    YThm3,
    YThm3Alpha0,
    ZCorP6,
    ZCorZ3,
    ZCorZ4,
    ZCorZ12A,
    ZCorZ12B,
    ZProp8,
    ZThm2,
    ZThm2Alpha0,
    ZThm4,
    ZThm4Alpha0,
    builders_equal_y,
    builders_equal_z,
    verify_b,
    verify_h,
)
from .polynomials import Poly, exp_shift_deriv
from .rationals import as_fraction, format_rational, parse_rational
from .reporting import Counterexample, IdentityReport

__version__ = "0.1.0"

__all__ = [
    "AuxSequence",
    "BellPolyError",
    "BellTriangle",
    "BinomialFamily",
    "ConfigError",
    "Counterexample",
    "DegenerateT",
    "FamilyCheck",
    "FamilyTooShort",
    "IdentityReport",
    "InsufficientPrefix",
    "MomentSequence",
    "NonZeroRemainder",
    "NotNormalized",
    "OverrideY",
    "OverrideZ",
    "Poly",
    "ScaledY",
    "ScaledZ",
    "UnboundedSum",
    "YCorP1",
    "YCorZ1",
    "YCorZ2",
    "YCorZ8A",
    "YCorZ8B",
    "YProp4",
    "YRS0",
    "YThm1",
    "YThm1Alpha0",
    "YThm3",
    "YThm3Alpha0",
    "ZCorP6",
    "ZCorZ3",
    "ZCorZ4",
    "ZCorZ12A",
    "ZCorZ12B",
    "ZProp8",
    "ZThm2",
    "ZThm2Alpha0",
    "ZThm4",
    "ZThm4Alpha0",
    "ZeroAlpha",
    "ZeroFirstMoment",
    "ZeroGamma",
    "abelize",
    "appell_check",
    "appell_trivariate",
    "appell_univariate",
    "as_fraction",
    "bell_complete",
    "bell_partial",
    "bell_partial_oracle",
    "binomial_grid",
    "builders_equal_y",
    "builders_equal_z",
    "builtin_family",
    "check_binomial_type",
    "check_p2",
    "check_p3",
    "check_p4",
    "check_s1_identities",
    "check_scaling",
    "classical_triangle",
    "exp_shift_deriv",
    "family_from_moments",
    "format_rational",
    "hessenberg_check",
    "hessenberg_det",
    "lah",
    "moments_of",
    "parse_rational",
    "remark_family",
    "shift_collapse",
    "stirling1_unsigned",
    "stirling2",
    "verify_b",
    "verify_h",
]
