"""The Lie algebras HV(a, b; eps) and the operator realization of W(eps).

Basis vectors are ``L[i,m]`` and ``H[j,n]`` with ``i, j`` integers and
heights ``m, n >= 0``.  Brackets:

    [L[i,m], L[j,n]] = (j - i) L[i+j, m+n] - eps (n - m) L[i+j, m+n-eps]
    [L[i,m], H[j,n]] = (a + j + b i) H[i+j, m+n] - eps (n + b m) H[i+j, m+n-eps]
    [H[i,m], H[j,n]] = 0

The L-part is also realized as vector fields ``c(x, t) d_eps`` on
``Q[x, 1/x, t]`` with ``d_eps = x d/dx + t^(1-eps) d/dt``; that second
code path is used to cross-check the structure constants.  (With
``x^2 d/dx`` the fields ``x^(-eps i) t^m d_eps`` do not close under the
bracket: the x-degree drifts by one.)
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .scalar import RationalLike, as_rational, format_rational, parse_rational

L = "L"
H = "H"


@dataclass(frozen=True)
class AlgebraParams:
    """``(a, b, eps)``; ``a`` is unrestricted so shifted algebras fit."""

    a: Fraction
    b: Fraction
    epsilon: int

    def __init__(self, a: RationalLike, b: RationalLike, epsilon: int):
        if epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {epsilon!r}")
        object.__setattr__(self, "a", as_rational(a))
        object.__setattr__(self, "b", as_rational(b))
        object.__setattr__(self, "epsilon", int(epsilon))

    def shifted(self, k: int) -> "AlgebraParams":
        return AlgebraParams(self.a + k, self.b, self.epsilon)

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b), "epsilon": self.epsilon}

    @classmethod
    def from_json(cls, data: Mapping) -> "AlgebraParams":
        unknown = set(data) - {"a", "b", "epsilon"}
        if unknown:
            raise ValueError(f"unknown algebra keys: {sorted(unknown)}")
        return cls(parse_rational(str(data["a"])), parse_rational(str(data["b"])), int(data["epsilon"]))


class BasisVector(NamedTuple):
    kind: str
    i: int
    m: int

    def sort_key(self):
        return (0 if self.kind == L else 1, self.i, self.m)

    def __str__(self):
        return f"{self.kind}[{self.i},{self.m}]"


def basis(kind: str, i: int, m: int) -> BasisVector:
    if kind not in (L, H):
        raise ValueError(f"unknown basis kind {kind!r}")
    if m < 0:
        raise ValueError(f"negative height in {kind}[{i},{m}]")
    return BasisVector(kind, int(i), int(m))


def Lb(i: int, m: int) -> BasisVector:
    return basis(L, i, m)


def Hb(i: int, m: int) -> BasisVector:
    return basis(H, i, m)


class AlgebraElement:
    """Finite linear combination of basis vectors, zero terms dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[BasisVector, RationalLike] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisVector, Fraction] = {}
        for v, c in items:
            if type(v) is not BasisVector:
                v = basis(*v)
            if type(c) is not Fraction:
                c = as_rational(c)
            acc[v] = acc.get(v, Fraction(0)) + c
        self._terms = {v: acc[v] for v in sorted(acc, key=BasisVector.sort_key) if acc[v] != 0}
        self._hash = None

    @classmethod
    def of(cls, v: BasisVector, c: RationalLike = 1) -> "AlgebraElement":
        return cls({v: c})

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @property
    def terms(self) -> dict[BasisVector, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[BasisVector]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, v: BasisVector) -> Fraction:
        return self._terms.get(v, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        acc = dict(self._terms)
        for v, c in other._terms.items():
            acc[v] = acc.get(v, Fraction(0)) + c
        return AlgebraElement(acc)

    def __neg__(self):
        return AlgebraElement({v: -c for v, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: RationalLike):
        c = as_rational(c)
        return AlgebraElement({v: c * x for v, x in self._terms.items()})

    __rmul__ = __mul__

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        # heights print high to low inside each (kind, index) block
        order = sorted(self._terms, key=lambda v: (0 if v.kind == L else 1, v.i, -v.m))
        out = ""
        for n, v in enumerate(order):
            c = self._terms[v]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(v) if mag == 1 else f"{format_rational(mag)}*{v}"
            if n == 0:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def to_json(self) -> list[dict]:
        return [
            {"kind": v.kind, "i": v.i, "m": v.m, "coeff": format_rational(c)}
            for v, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "AlgebraElement":
        return cls([(basis(d["kind"], int(d["i"]), int(d["m"])), parse_rational(str(d["coeff"]))) for d in data])

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"AlgebraElement({self.to_text()!r})"


def as_element(x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, tuple):
        return AlgebraElement.of(basis(*x))
    raise TypeError(f"not an algebra element: {x!r}")


_TERM_RE = re.compile(r"([+-])((?:\d+(?:/\d+)?\*?)?)([LH])\[(-?\d+),(\d+)\]")


def parse_element(text: str) -> AlgebraElement:
    """Parse ``"L[0,1] - 3/2*H[2,0]"``; whitespace is ignored."""
    src = re.sub(r"\s+", "", text)
    if src == "0":
        return AlgebraElement.zero()
    if not src:
        raise ValueError("empty element literal")
    if src[0] not in "+-":
        src = "+" + src
    terms = []
    pos = 0
    for m in _TERM_RE.finditer(src):
        if m.start() != pos:
            break
        pos = m.end()
        coef = m.group(2).rstrip("*")
        c = parse_rational(coef) if coef else Fraction(1)
        if m.group(1) == "-":
            c = -c
        terms.append((basis(m.group(3), int(m.group(4)), int(m.group(5))), c))
    if pos != len(src) or not terms:
        raise ValueError(f"malformed element literal: {text!r}")
    return AlgebraElement(terms)


def bracket_basis(p: AlgebraParams, x: BasisVector, y: BasisVector) -> AlgebraElement:
    """Structure-constant expansion of ``[x, y]``."""
    eps = p.epsilon
    if x.kind == H and y.kind == H:
        return AlgebraElement.zero()
    if x.kind == H:
        return -bracket_basis(p, y, x)
    i, m = x.i, x.m
    j, n = y.i, y.m
    if y.kind == L:
        top = Fraction(j - i)
        low = Fraction(-eps * (n - m))
    else:
        top = p.a + j + p.b * i
        low = -eps * (n + p.b * m)
    terms = {}
    if top != 0:
        terms[BasisVector(y.kind, i + j, m + n)] = top
    if low != 0:
        h = m + n - eps
        assert h >= 0, f"nonzero coefficient on negative height in [{x},{y}]"
        terms[BasisVector(y.kind, i + j, h)] = terms.get(BasisVector(y.kind, i + j, h), 0) + low
    return AlgebraElement(terms)


_bracket_basis_cached = functools.lru_cache(maxsize=1 << 16)(bracket_basis)


def bracket(p: AlgebraParams, x, y, bracket_fn=None) -> AlgebraElement:
    """Bilinear extension of :func:`bracket_basis` (or of ``bracket_fn``)."""
    fn = bracket_fn or _bracket_basis_cached
    x, y = as_element(x), as_element(y)
    acc: dict[BasisVector, Fraction] = {}
    for u, cu in x.items():
        for v, cv in y.items():
            for w, cw in fn(p, u, v).items():
                acc[w] = acc.get(w, Fraction(0)) + cu * cv * cw
    return AlgebraElement(acc)


def shift_isomorphism(k: int, x) -> AlgebraElement:
    """``L[i,m] -> L[i,m]``, ``H[j,n] -> H[j-k,n]``; maps HV(a,b) to HV(a+k,b)."""
    x = as_element(x)
    return AlgebraElement(
        [(v if v.kind == L else BasisVector(H, v.i - k, v.m), c) for v, c in x.items()]
    )


# -- differential-operator realization ----------------------------------


class DiffOperator:
    """``c(x, t) d_eps`` stored as ``{(xexp, texp): coeff}``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], RationalLike] = ()):
        acc = {}
        for (xe, te), c in dict(coeffs).items():
            if te < 0:
                raise ValueError("negative power of t")
            c = as_rational(c)
            if c != 0:
                acc[(int(xe), int(te))] = c
        self._coeffs = dict(sorted(acc.items()))

    @property
    def coefficient(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __eq__(self, other):
        if isinstance(other, DiffOperator):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __add__(self, other):
        acc = dict(self._coeffs)
        for k, c in other._coeffs.items():
            acc[k] = acc.get(k, 0) + c
        return DiffOperator(acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = as_rational(c)
        return DiffOperator({k: c * v for k, v in self._coeffs.items()})

    def __bool__(self):
        return bool(self._coeffs)

    def to_json(self):
        return [{"xexp": xe, "texp": te, "coeff": format_rational(c)} for (xe, te), c in self._coeffs.items()]

    def __repr__(self):
        return f"DiffOperator({self._coeffs!r})"


def realize_L(eps: int, x: BasisVector) -> DiffOperator:
    """``L[i,m] -> -eps x^(-eps i) t^m d_eps``."""
    if x.kind != L:
        raise NotImplementedError("only L basis vectors have an operator realization")
    return DiffOperator({(-eps * x.i, x.m): -eps})


def realize(eps: int, x: AlgebraElement) -> DiffOperator:
    out = DiffOperator()
    for v, c in as_element(x).items():
        out = out + realize_L(eps, v).scale(c)
    return out


def _d_eps(eps: int, f: Mapping[tuple[int, int], Fraction]) -> dict:
    # d_eps(x^p t^q) = p x^p t^q + q x^p t^(q-eps)
    out: dict[tuple[int, int], Fraction] = {}
    for (p, q), c in f.items():
        if p != 0:
            out[(p, q)] = out.get((p, q), 0) + p * c
        if q != 0:
            assert q - eps >= 0
            out[(p, q - eps)] = out.get((p, q - eps), 0) + q * c
    return out


def _mul(f, g) -> dict:
    out: dict[tuple[int, int], Fraction] = {}
    for (p1, q1), c1 in f.items():
        for (p2, q2), c2 in g.items():
            key = (p1 + p2, q1 + q2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


def op_commutator(eps: int, A: DiffOperator, B: DiffOperator) -> DiffOperator:
    """``[f d, g d] = (f d(g) - g d(f)) d``."""
    f, g = A.coefficient, B.coefficient
    left = _mul(f, _d_eps(eps, g))
    right = _mul(g, _d_eps(eps, f))
    for k, c in right.items():
        left[k] = left.get(k, 0) - c
    return DiffOperator(left)
