"""
Parameters and generating sets
==============================

Reading module parameters back from the action, counting which
parameters the action actually depends on, and the bracket closure of
the standard generators.
"""

from fractions import Fraction

from hvalg import AlgebraParams, Hb, ModuleParams, RankOneModule, basis
from hvalg.probe import generation_closure, live_count, live_parameters, recover_parameters
from hvalg.verify import CheckWindow, default_grid, generators

ap = AlgebraParams(Fraction(1, 2), 1, -1)
mp = ModuleParams(2, Fraction(1, 3), 3, 1, {0: 1, 1: -2}, (0, 1))
got = recover_parameters(ap, RankOneModule(ap, mp).act_basis, (0, 1))
print("recovered:", got.to_json(), "exact:", got == mp)

# live parameters per branch
w = CheckWindow((-2, 2), 2, 3)
for ap, mp in default_grid():
    n = live_count(live_parameters(ap, mp, w))
    print(f"eps={ap.epsilon:+d} a={ap.a} b={ap.b}: {n}")

# closure of L[i,0], L[i,1], H[i,0]
targets = [basis(k, i, m) for k in "LH" for i in range(-2, 3) for m in range(4)]
for ap in (AlgebraParams(Fraction(1, 3), 2, 1), AlgebraParams(0, 0, -1)):
    rep = generation_closure(ap, generators(ap, range(-2, 3)), targets, depth_cap=4, index_bound=2, height_bound=3)
    print(f"eps={ap.epsilon:+d} a={ap.a} b={ap.b} all reached:", all(e.note.startswith("proof") for e in rep.entries))

# for eps=-1, b=1 the H[i,1] are needed
ap = AlgebraParams(Fraction(1, 2), 1, -1)
gens = [g for g in generators(ap, range(-2, 3)) if g.m == 0 or g.kind == "L"]
rep = generation_closure(ap, gens, [Hb(0, 1)], depth_cap=3, index_bound=2, height_bound=3)
print("H[0,1] without H[i,1]:", rep.entries[0].note)
