"""Exact rational scalars and the combinatorial helpers built on them.

Every coefficient in the package is a :class:`fractions.Fraction`, which
already keeps itself in lowest terms with a positive denominator.  This
module adds the few primitives the action formulas need and a strict
string format for serialization.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals and exponents are rejected."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def factorial(n: int) -> Fraction:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    result = 1
    for k in range(2, n + 1):
        result *= k
    return Fraction(result)


def gen_binomial(m: int, n: int) -> Fraction:
    """Generalized binomial coefficient ``binom(m, n)`` for integer ``m``.

    Computed from the falling factorial ``m (m-1) ... (m-n+1) / n!`` so it
    is valid for negative ``m`` as well.
    """
    if n < 0:
        raise ValueError("lower index must be nonnegative")
    if n == 0:
        return Fraction(1)
    prod = 1
    for k in range(m - n + 1, m + 1):
        prod *= k
    return Fraction(prod) / factorial(n)


def int_pow(q: RationalLike, e: int) -> Fraction:
    """Exact integer power with the convention ``0**0 == 1``."""
    q = as_rational(q)
    if e == 0:
        return Fraction(1)
    if q == 0 and e < 0:
        raise ZeroDivisionError("zero raised to a negative power")
    return q**e
