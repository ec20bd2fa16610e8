"""
Rank-one modules on C[t]
========================

The action of L and H on polynomials, the branch structure, and the
module axiom checked by hand on one pair.
"""

from fractions import Fraction

from hvalg import AlgebraParams, Hb, Lb, ModuleParams, RankOneModule, bracket, parse_polynomial
from hvalg.module import ConfigurationError

ap = AlgebraParams(0, 2, 1)
M = RankOneModule(ap, ModuleParams(lam=2, alpha=1, beta=3))
print("L[1,1].1 =", M.act_basis(Lb(1, 1), parse_polynomial("1")).to_text())
print("L[0,0].f =", M.act_basis(Lb(0, 0), parse_polynomial("t^2 - 1")).to_text())
# b = 2 is outside {0, 1}: H acts as zero
print("H[2,1].t^3 =", M.act_basis(Hb(2, 1), parse_polynomial("t^3")).to_text())

# gamma is only a parameter in some branches
try:
    RankOneModule(ap, ModuleParams(2, 1, 3, gamma=1))
except ConfigurationError as exc:
    print("rejected:", exc)

# eps = -1, b = 1: H[i,1].1 reads off kappa_i directly
ap = AlgebraParams(Fraction(1, 2), 1, -1)
mp = ModuleParams(2, Fraction(1, 2), 3, 1, {0: 1, 1: -2}, (-3, 3))
M = RankOneModule(ap, mp)
for i in range(-1, 3):
    print(f"H[{i},1].1 = {M.H_on_one(i, 1)}")

# [x,y].f = x.(y.f) - y.(x.f)
x, y, f = Lb(-1, 1), Hb(2, 0), parse_polynomial("t^3 + 2t")
lhs = M.act(bracket(ap, x, y), f)
rhs = M.act_basis(x, M.act_basis(y, f)) - M.act_basis(y, M.act_basis(x, f))
print("module axiom:", lhs == rhs)
print("  ", lhs.to_text())
