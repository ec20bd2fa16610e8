"""Free rank-one U(h)-modules over HV(a, b; eps).

The carrier space is ``Q[t]`` and ``L[0,0]`` acts as multiplication by
``t``.  A module is fixed by :class:`AlgebraParams` together with
:class:`ModuleParams` ``(lambda, alpha, beta, gamma, kappa)``; which of
``gamma`` and ``kappa`` genuinely parametrize the module depends on the
branch of ``(a, b, eps)``:

======  ==================  =============  =============
eps     branch              gamma active   kappa active
======  ==================  =============  =============
+1      b = 0               yes            no
+1      b = 1, a != 0       yes            no
+1      b = 1, a = 0        no             no
+1      b not in {0, 1}     no             no
-1      b = 0               yes            no
-1      b = 1 (any a)       yes            yes
-1      b not in {0, 1}     no             no
======  ==================  =============  =============

Inactive parameters must be zero; ``kappa`` is a finite table on a
declared index window and reading outside the window is an error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .algebra import H, L, AlgebraElement, AlgebraParams, BasisVector, as_element
from .poly import ONE, Polynomial, derivative_n, shift
from .scalar import (
    RationalLike,
    as_rational,
    factorial,
    format_rational,
    gen_binomial,
    int_pow,
    parse_rational,
)


class ConfigurationError(ValueError):
    """Module parameters inconsistent with the algebra, or missing data."""


class Branch(enum.Enum):
    B0 = "b=0"
    B1 = "b=1,a!=0"
    B1_A0 = "b=1,a=0"
    GENERIC = "b not in {0,1}"


def branch_of(ap: AlgebraParams) -> Branch:
    if ap.b == 0:
        return Branch.B0
    if ap.b == 1:
        return Branch.B1_A0 if ap.a == 0 else Branch.B1
    return Branch.GENERIC


def gamma_active(ap: AlgebraParams) -> bool:
    br = branch_of(ap)
    if ap.epsilon == 1:
        return br in (Branch.B0, Branch.B1)
    return br in (Branch.B0, Branch.B1, Branch.B1_A0)


def kappa_active(ap: AlgebraParams) -> bool:
    return ap.epsilon == -1 and ap.b == 1


@dataclass(frozen=True)
class ModuleParams:
    lam: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction = Fraction(0)
    kappa: Mapping[int, Fraction] = field(default_factory=dict)
    kappa_window: tuple[int, int] | None = None

    def __init__(
        self,
        lam: RationalLike,
        alpha: RationalLike,
        beta: RationalLike,
        gamma: RationalLike = 0,
        kappa: Mapping[int, RationalLike] | None = None,
        kappa_window: tuple[int, int] | None = None,
    ):
        lam = as_rational(lam)
        if lam == 0:
            raise ConfigurationError("lambda must be nonzero")
        table = {int(i): as_rational(c) for i, c in (kappa or {}).items()}
        if kappa_window is None and table:
            kappa_window = (min(table), max(table))
        if kappa_window is not None:
            lo, hi = int(kappa_window[0]), int(kappa_window[1])
            if lo > hi:
                raise ConfigurationError(f"empty kappa window [{lo}, {hi}]")
            stray = [i for i in table if not lo <= i <= hi]
            if stray:
                raise ConfigurationError(f"kappa indices {stray} outside window [{lo}, {hi}]")
            kappa_window = (lo, hi)
        table = {i: table[i] for i in sorted(table) if table[i] != 0}
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", as_rational(alpha))
        object.__setattr__(self, "beta", as_rational(beta))
        object.__setattr__(self, "gamma", as_rational(gamma))
        object.__setattr__(self, "kappa", table)
        object.__setattr__(self, "kappa_window", kappa_window)

    def kappa_at(self, i: int) -> Fraction:
        if self.kappa_window is None or not self.kappa_window[0] <= i <= self.kappa_window[1]:
            raise ConfigurationError(f"kappa_{i} requested outside the declared window {self.kappa_window}")
        return self.kappa.get(i, Fraction(0))

    def kappa_nonzero(self) -> bool:
        return any(c != 0 for c in self.kappa.values())

    def __hash__(self):
        return hash((self.lam, self.alpha, self.beta, self.gamma, tuple(self.kappa.items()), self.kappa_window))

    def __eq__(self, other):
        if not isinstance(other, ModuleParams):
            return NotImplemented
        return (
            self.lam == other.lam
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.gamma == other.gamma
            and dict(self.kappa) == dict(other.kappa)
            and self.kappa_window == other.kappa_window
        )

    def to_json(self) -> dict:
        out = {
            "lambda": format_rational(self.lam),
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
        }
        if self.gamma != 0:
            out["gamma"] = format_rational(self.gamma)
        if self.kappa_window is not None:
            out["kappa"] = {str(i): format_rational(c) for i, c in self.kappa.items()}
            out["kappa_window"] = list(self.kappa_window)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "ModuleParams":
        unknown = set(data) - {"lambda", "alpha", "beta", "gamma", "kappa", "kappa_window"}
        if unknown:
            raise ConfigurationError(f"unknown module keys: {sorted(unknown)}")
        kappa = {int(k): parse_rational(str(v)) for k, v in data.get("kappa", {}).items()}
        window = data.get("kappa_window")
        return cls(
            parse_rational(str(data["lambda"])),
            parse_rational(str(data["alpha"])),
            parse_rational(str(data["beta"])),
            parse_rational(str(data.get("gamma", "0"))),
            kappa,
            tuple(window) if window is not None else None,
        )


def validate(ap: AlgebraParams, mp: ModuleParams, strict: bool = True) -> Branch:
    """Check ``mp`` against ``ap`` and return the branch.

    With ``strict=False`` values for inactive parameters are tolerated (the
    action never reads them); useful for showing that they are dead.
    """
    if not 0 <= ap.a < 1:
        raise ConfigurationError(f"module construction needs 0 <= a < 1, got a = {ap.a}")
    if kappa_active(ap) and mp.kappa_window is None:
        raise ConfigurationError("kappa is active here; declare a kappa window")
    if not strict:
        return branch_of(ap)
    if not gamma_active(ap) and mp.gamma != 0:
        raise ConfigurationError("gamma is not a parameter in this branch; it must be 0")
    if not kappa_active(ap) and (mp.kappa or mp.kappa_window is not None):
        raise ConfigurationError("kappa is not a parameter in this branch; leave it empty")
    return branch_of(ap)


# -- auxiliary scalar functions ------------------------------------------


def phi(i: int, a: RationalLike, b: RationalLike) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    if b == 0:
        return Fraction(1)
    if b == 1:
        if a == 0:
            return Fraction(1 if i == 0 else 0)
        if a + i == 0:
            raise ZeroDivisionError(f"a + i = 0 at i = {i}")
        return a / (a + i)
    return Fraction(0)


def varphi(i: int, m: int, a: RationalLike, mp: ModuleParams) -> Fraction:
    """The ``b = 1, a != 0`` coefficient function for ``eps = -1``."""
    a = as_rational(a)
    if a == 0 or a + i == 0:
        raise ZeroDivisionError(f"needs a != 0 and a + i != 0 (a = {a}, i = {i})")
    lam_i = int_pow(mp.lam, i)
    if m == 0:
        return a / (a + i) * lam_i * mp.gamma
    ai = a + i
    value = int_pow(-1, m - 1) / factorial(m - 1) * int_pow(ai, m - 1) * mp.kappa_at(i)
    for ell in range(m - 1):
        value += (
            factorial(m - ell - 2)
            / factorial(m - 1)
            * int_pow(-1, ell)
            * int_pow(ai, ell)
            * a
            * lam_i
            * int_pow(mp.beta, m - ell - 1)
            * mp.gamma
        )
    return value


def psi(i: int, m: int, mp: ModuleParams) -> Fraction:
    """The ``b = 1, a = 0`` coefficient function for ``eps = -1``."""
    if m == 0:
        return mp.gamma if i == 0 else Fraction(0)
    return int_pow(-i, m - 1) / factorial(m - 1) * mp.kappa_at(i)


# -- the module ----------------------------------------------------------


class RankOneModule:
    """``Omega(lambda, alpha, beta, gamma, kappa)`` over ``HV(a, b; eps)``.

    Parameters are validated once.  Basis actions are memoized per
    ``(basis vector, polynomial)`` pair since verification sweeps reuse
    them heavily.
    """

    def __init__(self, ap: AlgebraParams, mp: ModuleParams, strict: bool = True):
        self.ap = ap
        self.mp = mp
        self.branch = validate(ap, mp, strict)
        self._cache: dict[tuple[BasisVector, Polynomial], Polynomial] = {}

    @property
    def eps(self) -> int:
        return self.ap.epsilon

    def act_basis(self, x: BasisVector, f: Polynomial) -> Polynomial:
        key = (x, f)
        out = self._cache.get(key)
        if out is None:
            out = self._act_basis(x, f)
            self._cache[key] = out
        return out

    def act(self, x, f: Polynomial) -> Polynomial:
        out = Polynomial.zero()
        for v, c in as_element(x).items():
            out = out + self.act_basis(v, f).scale(c)
        return out

    def act_word(self, word, f: Polynomial) -> Polynomial:
        """Apply ``word[0] (word[1] (... f))``."""
        for x in reversed(list(word)):
            f = self.act(x, f)
        return f

    def _act_basis(self, x: BasisVector, f: Polynomial) -> Polynomial:
        if f.is_zero():
            return f
        if x.kind == L:
            return self._act_L(x.i, x.m, f)
        return self._act_H(x.i, x.m, f)

    def _act_L(self, i: int, m: int, f: Polynomial) -> Polynomial:
        mp = self.mp
        lam_i = int_pow(mp.lam, i)
        alpha, beta = mp.alpha, mp.beta
        t_minus_ia = Polynomial((-i * alpha, 1))
        out = Polynomial.zero()
        deg = f.degree
        if self.eps == 1:
            for s in range(min(m, deg) + 1):
                fs = shift(derivative_n(f, s), i)
                # beta^(m-s) (t - i alpha) + (m-s) alpha beta^(m-s-1); no negative beta power
                factor = t_minus_ia.scale(int_pow(beta, m - s))
                if m - s >= 1:
                    factor = factor + (m - s) * alpha * int_pow(beta, m - s - 1)
                out = out + (factor * fs).scale(gen_binomial(m, s) * lam_i)
        else:
            for s in range(deg + 1):
                c = gen_binomial(-m, s) * lam_i * int_pow(beta, m + s)
                if c == 0:
                    continue
                fs = shift(derivative_n(f, s), i)
                factor = Polynomial((-i * alpha - (m + s) * alpha * beta, 1))
                out = out + (factor * fs).scale(c)
        return out

    def _h_coefficients(self, i: int, m: int, deg: int) -> list[Fraction]:
        """``c_s`` with ``H[i,m] f = sum_s c_s f^(s)(t - shift)``."""
        ap, mp = self.ap, self.mp
        a = ap.a
        lam_i = int_pow(mp.lam, i)
        br = self.branch
        cs = []
        if self.eps == 1:
            if br is Branch.B0:
                for s in range(min(m, deg) + 1):
                    cs.append(gen_binomial(m, s) * lam_i * int_pow(mp.beta, m - s) * mp.gamma)
            elif br is Branch.B1:
                for s in range(min(m, deg) + 1):
                    inner = Fraction(0)
                    for ell in range(m - s + 1):
                        inner += (
                            factorial(m - s)
                            / factorial(m - s - ell)
                            * a
                            * lam_i
                            * int_pow(mp.beta, m - s - ell)
                            * mp.gamma
                            / int_pow(a + i, ell + 1)
                        )
                    cs.append(gen_binomial(m, s) * inner)
        else:
            for s in range(deg + 1):
                bin_ = gen_binomial(-m, s)
                if br is Branch.B0:
                    cs.append(bin_ * lam_i * int_pow(mp.beta, m + s) * mp.gamma)
                elif br is Branch.B1:
                    cs.append(bin_ * varphi(i, m + s, a, mp))
                elif br is Branch.B1_A0:
                    cs.append(bin_ * psi(i, m + s, mp))
        return cs

    def h_shift(self, i: int) -> Fraction:
        """Argument shift of the ``H[i,*]`` action (``t - a - i``)."""
        if self.eps == -1 and self.branch is Branch.B1_A0:
            return Fraction(i)
        return self.ap.a + i

    def _act_H(self, i: int, m: int, f: Polynomial) -> Polynomial:
        cs = self._h_coefficients(i, m, f.degree)
        out = Polynomial.zero()
        c_shift = self.h_shift(i)
        for s, c in enumerate(cs):
            if c != 0:
                out = out + shift(derivative_n(f, s), c_shift).scale(c)
        return out

    # -- closed forms and the monomial formulas ----------------------------

    def H_on_one(self, i: int, m: int) -> Fraction:
        """Closed form of ``H[i,m] . 1``."""
        mp, a, br = self.mp, self.ap.a, self.branch
        lam_i = int_pow(mp.lam, i)
        if br is Branch.B0:
            return lam_i * int_pow(mp.beta, m) * mp.gamma
        if self.eps == 1:
            if br is Branch.B1:
                total = Fraction(0)
                for ell in range(m + 1):
                    total += (
                        factorial(ell) * gen_binomial(m, ell) * int_pow(mp.beta, m - ell) / int_pow(a + i, ell + 1)
                    )
                return a * lam_i * mp.gamma * total
            return Fraction(0)
        if br is Branch.B1:
            return varphi(i, m, a, mp)
        if br is Branch.B1_A0:
            return psi(i, m, mp)
        return Fraction(0)

    def act_basis_monomial(self, x: BasisVector, k: int) -> Polynomial:
        """``x . t^k`` from the expanded monomial formulas.

        Independent of :meth:`act_basis`: it never differentiates or shifts
        a polynomial, only expands ``(t - c)^(k - s)`` directly.
        """
        mp, a = self.mp, self.ap.a
        i, m = x.i, x.m
        lam_i = int_pow(mp.lam, i)
        alpha, beta = mp.alpha, mp.beta
        out = Polynomial.zero()
        if x.kind == L:
            base = Polynomial((-i, 1))
            if self.eps == 1:
                for s in range(min(m, k) + 1):
                    coef = factorial(s) * gen_binomial(m, s) * gen_binomial(k, s) * lam_i
                    lin = Polynomial((-i * alpha, 1)).scale(int_pow(beta, m - s))
                    if m - s >= 1:
                        lin = lin + (m - s) * alpha * int_pow(beta, m - s - 1)
                    out = out + (lin * base ** (k - s)).scale(coef)
            else:
                for s in range(k + 1):
                    coef = (
                        int_pow(-1, s)
                        * factorial(s)
                        * gen_binomial(m + s - 1, s)
                        * gen_binomial(k, s)
                        * lam_i
                        * int_pow(beta, m + s)
                    )
                    lin = Polynomial((-i * alpha - (m + s) * alpha * beta, 1))
                    out = out + (lin * base ** (k - s)).scale(coef)
            return out
        br = self.branch
        if self.eps == 1:
            base = Polynomial((-(a + i), 1))
            for s in range(min(m, k) + 1):
                coef = factorial(s) * gen_binomial(m, s) * gen_binomial(k, s)
                if br is Branch.B0:
                    c = coef * lam_i * int_pow(beta, m - s) * mp.gamma
                elif br is Branch.B1:
                    c = Fraction(0)
                    for ell in range(m - s + 1):
                        c += (
                            factorial(s)
                            * factorial(m - s)
                            / factorial(m - s - ell)
                            * gen_binomial(m, s)
                            * gen_binomial(k, s)
                            * a
                            * lam_i
                            * int_pow(beta, m - s - ell)
                            * mp.gamma
                            / int_pow(a + i, ell + 1)
                        )
                else:
                    c = Fraction(0)
                out = out + (base ** (k - s)).scale(c)
            return out
        for s in range(k + 1):
            coef = int_pow(-1, s) * factorial(s) * gen_binomial(m + s - 1, s) * gen_binomial(k, s)
            if br is Branch.B0:
                c = coef * lam_i * int_pow(beta, m + s) * mp.gamma
                base = Polynomial((-(a + i), 1))
            elif br is Branch.B1:
                c = coef * varphi(i, m + s, a, mp)
                base = Polynomial((-(a + i), 1))
            elif br is Branch.B1_A0:
                c = coef * psi(i, m + s, mp)
                base = Polynomial((-i, 1))
            else:
                c, base = Fraction(0), ONE
            out = out + (base ** (k - s)).scale(c)
        return out


# -- functional front end -------------------------------------------------


def act_basis(ap: AlgebraParams, mp: ModuleParams, x: BasisVector, f: Polynomial) -> Polynomial:
    return RankOneModule(ap, mp).act_basis(x, f)


def act(ap: AlgebraParams, mp: ModuleParams, x, f: Polynomial) -> Polynomial:
    return RankOneModule(ap, mp).act(x, f)


def H_on_one(ap: AlgebraParams, mp: ModuleParams, i: int, m: int) -> Fraction:
    return RankOneModule(ap, mp).H_on_one(i, m)


ActionOracle = Callable[[BasisVector, Polynomial], Polynomial]


def oracle_of(module: RankOneModule) -> ActionOracle:
    """Expose only the action map of ``module``, as a black box."""
    return module.act_basis
