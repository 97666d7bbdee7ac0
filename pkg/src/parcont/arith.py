"""Exact rational coefficients.

Python integers are arbitrary precision and :class:`fractions.Fraction`
keeps numerator/denominator reduced with a positive denominator, so this
module only adds the operations and text syntax the rest of the package
relies on.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def normalize(n: int, d: int) -> Fraction:
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(n, d)


def add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def neg(a: Fraction) -> Fraction:
    return -a


def inv(a: Fraction) -> Fraction:
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / Fraction(a)


def as_rational(value) -> Fraction:
    """Coerce int, Fraction or text like ``-3/4`` to a Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return normalize(num, den)


def content(values) -> int:
    """gcd of a sequence of integers (0 for an empty or all-zero sequence)."""
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def lcm_of_denominators(values) -> int:
    out = 1
    for v in values:
        d = v.denominator
        out = out * d // gcd(out, d)
    return out
