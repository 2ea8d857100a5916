"""Exact rational scalars and their ``p/q`` wire format.

Every numeric value in this package is a :class:`fractions.Fraction`.
The serialization format used across tables, family exports and reports
is the string ``p/q`` with ``/q`` omitted when the denominator is 1,
e.g. ``"3"``, ``"-5/7"``.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse the strict ``p/q`` format (no floats, no whitespace padding)."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a p/q rational: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_fraction(value) -> Fraction:
    """Coerce ints, ``p/q`` strings and Fractions; reject inexact types."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")
