"""
Brackets and the vector-field realization
=========================================

Structure constants of HV(a,b;eps), checked against commutators of
first-order differential operators in x and t.
"""

from fractions import Fraction

from hvalg import AlgebraParams, Lb, Hb, bracket, parse_element
from hvalg.algebra import op_commutator, realize, realize_L, shift_isomorphism

p = AlgebraParams(Fraction(1, 2), 1, 1)

# a few basis brackets
for x, y in [(Lb(0, 1), Lb(1, 0)), (Lb(1, 0), Hb(0, 1)), (Hb(1, 0), Hb(2, 3))]:
    print(f"[{x}, {y}] = {bracket(p, x, y).to_text()}")

# the text grammar round-trips
z = parse_element("2*L[1,1] - 3/4*H[-1,2]")
print("parsed:", z.to_text())

# L[i,m] -> -eps x^(-eps i) t^m d_eps, where d_eps = x d/dx + t^(1-eps) d/dt
for eps in (1, -1):
    A, B = realize_L(eps, Lb(0, 1)), realize_L(eps, Lb(1, 0))
    comm = op_commutator(eps, A, B)
    want = realize(eps, bracket(AlgebraParams(0, 0, eps), Lb(0, 1), Lb(1, 0)))
    print(f"eps={eps:+d}: commutator {comm.to_json()} matches: {comm == want}")

# relabelling H indices moves a by k
q = p.shifted(2)
x, y = Lb(1, 1), Hb(3, 0)
lhs = shift_isomorphism(2, bracket(p, x, y))
rhs = bracket(q, shift_isomorphism(2, x), shift_isomorphism(2, y))
print(f"a={p.a} -> a={q.a}:", lhs.to_text(), "==", rhs.to_text())
