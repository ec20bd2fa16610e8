"""
Looking for submodules
======================

Saturation grows the span of a seed polynomial under the generators until
it stops changing. Finding 1 proves the seed generates everything; not
finding it is only evidence within the caps.
"""

from fractions import Fraction

from hvalg import AlgebraParams, Hb, ModuleParams, RankOneModule
from hvalg.poly import ONE, T
from hvalg.probe import check_t_submodule, contains_one, is_simple_expected, spot_check_soundness, submodule_saturation
from hvalg.verify import CheckWindow

half = Fraction(1, 2)

# alpha != 0: one seed reaches 1
ap, mp = AlgebraParams(0, 0, 1), ModuleParams(2, 1, 3)
span = submodule_saturation(ap, mp, T * T + ONE)
print("alpha=1:", "1 in span" if contains_one(span) else "1 not found", f"after {span.iterations} rounds")
print("  rows replay from the seed:", spot_check_soundness(RankOneModule(ap, mp), span, T * T + ONE))

# alpha = gamma = 0: t C[t] is a submodule and the quotient is trivial
mp = ModuleParams(2, 0, 3)
rep = check_t_submodule(ap, mp, CheckWindow((-3, 3), 3, 6))
print(rep.to_text())

# kappa alone, eps=-1, b=1: the predicate says simple ...
ap = AlgebraParams(half, 1, -1)
mp = ModuleParams(2, 0, 3, 0, {1: 1}, (-4, 4))
print("predicate says simple:", is_simple_expected(ap, mp))
# ... but with gamma = 0 every H[i,m] is a scalar
M = RankOneModule(ap, mp)
print("H[1,2].t^3 =", M.act_basis(Hb(1, 2), T**3).to_text(), "  (a multiple of t^3)")
span = submodule_saturation(ap, mp, T * T, degree_cap=8)
print("span of t^2 saturated:", span.saturated, "contains 1:", contains_one(span))
inv, quo = check_t_submodule(ap, mp, CheckWindow((-3, 3), 3, 6)).entries
print("t C[t] invariant:", inv.passed, " quotient trivial:", quo.passed)
