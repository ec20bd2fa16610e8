"""Exact computations for Heisenberg-Virasoro type Lie algebras and their
rank-one free modules over the polynomial ring."""

from .algebra import AlgebraElement, AlgebraParams, BasisVector, Hb, Lb, basis, bracket, parse_element
from .module import Branch, ConfigurationError, ModuleParams, RankOneModule, branch_of
from .poly import Polynomial, parse_polynomial
from .scalar import Rational, gen_binomial, parse_rational

__all__ = [
    "AlgebraElement",
    "AlgebraParams",
    "BasisVector",
    "Branch",
    "ConfigurationError",
    "Hb",
    "Lb",
    "ModuleParams",
    "Polynomial",
    "RankOneModule",
    "Rational",
    "basis",
    "branch_of",
    "bracket",
    "gen_binomial",
    "parse_element",
    "parse_polynomial",
    "parse_rational",
]
