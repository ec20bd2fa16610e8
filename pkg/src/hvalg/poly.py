"""Dense univariate polynomials in ``t`` with exact rational coefficients."""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .scalar import RationalLike, as_rational, format_rational, parse_rational


@functools.total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial. Smaller than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "MINUS_INFINITY"


MINUS_INFINITY = _MinusInfinity()


class Polynomial:
    """Immutable polynomial; ``coeffs[k]`` is the coefficient of ``t**k``.

    Trailing zeros are stripped on construction, so the zero polynomial has
    an empty coefficient tuple and degree :data:`MINUS_INFINITY`.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> "Polynomial":
        # trusted fast path: coefficients already Fractions
        obj = cls.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        obj.coeffs = tuple(cs)
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    # -- basic queries -------------------------------------------------

    @property
    def degree(self):
        if not self.coeffs:
            return MINUS_INFINITY
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RationalLike) -> "Polynomial":
        c = as_rational(c)
        if c == 0:
            return Polynomial._raw(())
        return Polynomial._raw([c * x for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial._raw(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        for _ in range(e):
            result = result * self
        return result

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    eval = __call__

    def derivative(self, s: int = 1) -> "Polynomial":
        return derivative_n(self, s)

    def shift(self, c: RationalLike) -> "Polynomial":
        return shift(self, c)

    # -- rendering -----------------------------------------------------

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag.numerator}{mono}"
                else:
                    body = f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Polynomial":
        return cls(parse_rational(str(c)) for c in data)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


T = Polynomial.monomial(1)
ONE = Polynomial.constant(1)


def derivative_n(f: Polynomial, s: int) -> Polynomial:
    """The ``s``-th formal derivative of ``f``."""
    if s < 0:
        raise ValueError("derivative order must be nonnegative")
    cs = f.coeffs
    if s == 0:
        return f
    if s >= len(cs):
        return Polynomial._raw(())
    out = []
    for k in range(s, len(cs)):
        falling = 1
        for j in range(k - s + 1, k + 1):
            falling *= j
        out.append(cs[k] * falling)
    return Polynomial._raw(out)


def shift(f: Polynomial, c: RationalLike) -> Polynomial:
    """Return ``g`` with ``g(t) = f(t - c)`` by binomial expansion."""
    c = as_rational(c)
    cs = f.coeffs
    if c == 0 or len(cs) <= 1:
        return f
    n = len(cs)
    powers = [Fraction(1)]
    for _ in range(n - 1):
        powers.append(powers[-1] * -c)
    out = [Fraction(0)] * n
    for k, a in enumerate(cs):
        if a == 0:
            continue
        for j in range(k + 1):
            out[j] += a * comb(k, j) * powers[k - j]
    return Polynomial._raw(out)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def scale(f: Polynomial, c: RationalLike) -> Polynomial:
    return f.scale(c)


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def evaluate(f: Polynomial, x: RationalLike) -> Fraction:
    return f(x)


_TERM_RE = re.compile(
    r"""^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*
         (?P<var>t(?:\s*\^\s*(?P<exp>\d+))?)?$""",
    re.VERBOSE,
)


def parse_polynomial(text: str) -> Polynomial:
    """Parse literals such as ``"t^2 - 2t + 1"`` or ``"3/2*t^3 + 1/4"``."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial literal")
    if src[0] not in "+-":
        src = "+" + src
    pieces = re.findall(r"[+-][^+-]*", src)
    if "".join(pieces) != src:
        raise ValueError(f"malformed polynomial literal: {text!r}")
    coeffs: dict[int, Fraction] = {}
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece[1:]
        m = _TERM_RE.match(body)
        if not body or m is None or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"malformed term {piece!r} in {text!r}")
        coef = parse_rational(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("var") is None:
            k = 0
        else:
            k = int(m.group("exp")) if m.group("exp") else 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * coef
    top = max(coeffs)
    return Polynomial(coeffs.get(k, 0) for k in range(top + 1))
