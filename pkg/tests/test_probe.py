from fractions import Fraction
from itertools import product

import pytest

from hvalg.algebra import AlgebraParams, Hb, Lb, basis
from hvalg.module import ModuleParams, RankOneModule
from hvalg.poly import ONE, T, Polynomial
from hvalg.probe import (
    BOUNDED,
    PROOF,
    MalformedOracle,
    SpanBasis,
    check_t_submodule,
    closure_reaches,
    contains_one,
    default_generators,
    generation_closure,
    is_simple_expected,
    recover_parameters,
    spot_check_soundness,
    submodule_saturation,
)
from hvalg.verify import CheckWindow, default_grid, generators

half, third = Fraction(1, 2), Fraction(1, 3)
W6 = CheckWindow((-3, 3), 3, 6)


def span_of(*polys):
    return SpanBasis(list(polys), 3, True)


def test_contains_one_examples():
    assert contains_one(span_of(ONE, T))
    assert not contains_one(span_of(T, T * T))


def test_is_simple_expected_examples():
    assert not is_simple_expected(AlgebraParams(0, 2, 1), ModuleParams(1, 0, 1))
    assert is_simple_expected(AlgebraParams(0, 1, -1), ModuleParams(1, 0, 1, 0, {3: 5}, (-4, 4)))
    for ap, _ in default_grid():
        assert is_simple_expected(ap, ModuleParams(1, 7, 2))


ZERO_PARAMS = [
    (AlgebraParams(a, b, eps), ModuleParams(2, 0, beta, 0, {}, (-4, 4) if eps == -1 and b == 1 else None))
    for (a, b), eps, beta in product([(0, 0), (half, 1), (0, 1), (third, 2)], (1, -1), (3, 0))
]


@pytest.mark.parametrize("ap, mp", ZERO_PARAMS, ids=str)
def test_t_omega_is_a_submodule_with_trivial_quotient(ap, mp):
    rep = check_t_submodule(ap, mp, W6)
    assert rep.ok, rep.to_text()
    span = submodule_saturation(ap, mp, T)
    assert span.saturated and all(r.coeff(0) == 0 for r in span.rows)


def test_t_submodule_check_fails_when_alpha_nonzero():
    rep = check_t_submodule(AlgebraParams(0, 0, 1), ModuleParams(1, 1, 1), W6)
    assert not rep.ok


def test_L_on_one_lies_in_t_omega_when_alpha_zero():
    lam, beta = Fraction(2), Fraction(3)
    M1 = RankOneModule(AlgebraParams(0, 2, 1), ModuleParams(lam, 0, beta))
    M2 = RankOneModule(AlgebraParams(0, 2, -1), ModuleParams(lam, 0, beta))
    for i, m in product(range(-3, 4), range(1, 4)):
        assert M1.act_basis(Lb(i, m), ONE) == T.scale(lam**i * beta**m)
        assert M2.act_basis(Lb(i, m), ONE) == T.scale(lam**i * beta**m)


SIMPLE = [
    (AlgebraParams(0, 0, 1), ModuleParams(2, 1, 3)),
    (AlgebraParams(third, 2, -1), ModuleParams(-1, half, 0)),
    (AlgebraParams(0, 0, 1), ModuleParams(2, 0, 3, 1)),
    (AlgebraParams(half, 1, 1), ModuleParams(1, 0, 2, 3)),
    (AlgebraParams(0, 0, -1), ModuleParams(3, 0, half, -2)),
    (AlgebraParams(half, 1, -1), ModuleParams(2, 0, 1, 1, {}, (-4, 4))),
    (AlgebraParams(0, 1, -1), ModuleParams(1, 0, 0, 0, {1: 1}, (-4, 4))),
    (AlgebraParams(half, 1, -1), ModuleParams(2, 0, 3, 0, {2: -1}, (-4, 4))),
]


@pytest.mark.parametrize("ap, mp", SIMPLE, ids=str)
def test_saturation_finds_one_from_t2_plus_1(ap, mp):
    assert is_simple_expected(ap, mp)
    seed = T * T + ONE
    span = submodule_saturation(ap, mp, seed)
    assert contains_one(span)
    assert spot_check_soundness(RankOneModule(ap, mp), span, seed)


@pytest.mark.parametrize("eps", [1, -1])
def test_alpha_nonzero_from_seed_t(eps):
    ap = AlgebraParams(third, 2, eps)
    span = submodule_saturation(ap, ModuleParams(1, 1, 2), T)
    assert contains_one(span)


def test_monotone_in_caps_and_generators():
    ap, mp = AlgebraParams(half, 1, -1), ModuleParams(2, 0, 3, 1, {}, (-4, 4))
    small = submodule_saturation(ap, mp, T**3, gen_window=generators(ap, range(-1, 2)), degree_cap=3)
    for kw in ({"degree_cap": 5, "gen_window": generators(ap, range(-1, 2))}, {"degree_cap": 3}):
        big = submodule_saturation(ap, mp, T**3, **kw)
        assert all(big.contains(r) for r in small.rows)


def test_soundness_replay_every_row():
    ap, mp = AlgebraParams(0, 0, 1), ModuleParams(2, 1, 3, 1)
    seed = T**3 - T
    span = submodule_saturation(ap, mp, seed)
    assert spot_check_soundness(RankOneModule(ap, mp), span, seed, samples=len(span.rows))


def test_saturation_rejects_zero_seed():
    with pytest.raises(ValueError):
        submodule_saturation(AlgebraParams(0, 0, 1), ModuleParams(1, 1, 1), Polynomial.zero())


# Parameter points where the simplicity predicate says "simple" but
# t Omega is a proper submodule: with alpha = gamma = 0 every H[i,m]
# acts by a scalar, so kappa alone cannot move 1 out of t Omega.
COUNTER = [
    (AlgebraParams(half, 1, -1), ModuleParams(2, 0, 3, 0, {1: 1, -2: 5}, (-4, 4))),
    (AlgebraParams(0, 1, -1), ModuleParams(3, 0, -1, 0, {0: 2, 3: 1}, (-4, 4))),
]


@pytest.mark.parametrize("ap, mp", COUNTER, ids=str)
def test_kappa_alone_leaves_t_omega_invariant(ap, mp):
    assert is_simple_expected(ap, mp)
    M = RankOneModule(ap, mp)
    for i, m in product(range(-3, 4), range(4)):
        c = M.H_on_one(i, m)
        for k in range(6):
            assert M.act_basis(Hb(i, m), T**k) == (T**k).scale(c)
    invariant, trivial_quotient = check_t_submodule(ap, mp, W6).entries
    assert invariant.passed
    # the quotient is one-dimensional but H acts on it by nonzero scalars
    assert not trivial_quotient.passed
    span = submodule_saturation(ap, mp, T * T, degree_cap=8)
    assert span.saturated and not contains_one(span)


def test_gamma_is_a_scalar_for_b1_a0_eps_minus():
    # same phenomenon for gamma: H[0,0] acts as gamma, every other H as 0
    ap, mp = AlgebraParams(0, 1, -1), ModuleParams(2, 0, 3, 5, {}, (-4, 4))
    assert is_simple_expected(ap, mp)
    M = RankOneModule(ap, mp)
    assert M.act_basis(Hb(0, 0), T**3) == (T**3).scale(5)
    for i, m in product(range(-3, 4), range(4)):
        if (i, m) != (0, 0):
            assert M.act_basis(Hb(i, m), T**2).is_zero()
    invariant, trivial_quotient = check_t_submodule(ap, mp, W6).entries
    assert invariant.passed and not trivial_quotient.passed


def recovery_grid():
    out = []
    for (a, b), eps in product([(0, 0), (half, 1), (0, 1), (third, 2), (Fraction(2, 3), 1)], (1, -1)):
        ap = AlgebraParams(a, b, eps)
        for lam, alpha, beta, gamma in [(2, 1, 3, Fraction(5, 2)), (Fraction(-1, 3), 0, 0, 1)]:
            g = gamma if (b == 0 or (b == 1 and (a != 0 or eps == -1))) else 0
            if eps == -1 and b == 1:
                mp = ModuleParams(lam, alpha, beta, g, {0: 1, 1: -2, 3: Fraction(1, 4)}, (-3, 3))
            else:
                mp = ModuleParams(lam, alpha, beta, g)
            out.append((ap, mp))
    return out


def test_recovery_round_trip_and_injectivity():
    grid = recovery_grid()
    assert len(grid) >= 12
    seen = {}
    for ap, mp in grid:
        M = RankOneModule(ap, mp)
        got = recover_parameters(ap, M.act_basis, mp.kappa_window)
        assert got == mp
        seen.setdefault(ap, set()).add(got)
    assert all(len(s) == 2 for s in seen.values())


def test_recovery_examples():
    ap = AlgebraParams(0, 2, 1)
    mp = ModuleParams(2, 1, 3)
    assert recover_parameters(ap, RankOneModule(ap, mp).act_basis) == mp
    ap = AlgebraParams(half, 1, -1)
    mp = ModuleParams(1, 1, 1, 0, {0: 1, 1: -2}, (0, 1))
    got = recover_parameters(ap, RankOneModule(ap, mp).act_basis, (0, 1))
    assert got.kappa == {0: 1, 1: -2}
    ap = AlgebraParams(0, 0, 1)
    p1, p2 = ModuleParams(2, 1, 3, 1), ModuleParams(2, 1, 3, 4)
    r1 = recover_parameters(ap, RankOneModule(ap, p1).act_basis)
    r2 = recover_parameters(ap, RankOneModule(ap, p2).act_basis)
    diff = [k for k, v in r1.to_json().items() if r2.to_json()[k] != v]
    assert diff == ["gamma"]


def test_recovery_rejects_malformed_oracles():
    ap = AlgebraParams(0, 0, 1)
    M = RankOneModule(ap, ModuleParams(2, 1, 3, 1))

    def squared(x, f):
        return T * T if x == Lb(1, 0) else M.act_basis(x, f)

    def not_free(x, f):
        return T * T if x == Lb(0, 0) else M.act_basis(x, f)

    def bad_h(x, f):
        return T if x == Hb(0, 0) else M.act_basis(x, f)

    def bad_const(x, f):
        return T.scale(3) + 99 if x == Lb(0, 1) else M.act_basis(x, f)

    for oracle in (squared, not_free, bad_h, bad_const):
        with pytest.raises(MalformedOracle):
            recover_parameters(ap, oracle)


def test_closure_examples():
    rep = generation_closure(AlgebraParams(0, 0, 1), [Lb(-1, 1), Lb(1, 1)], [Lb(0, 2)], depth_cap=1)
    assert closure_reaches(rep) == {"L[0,2]": True}
    assert rep.entries[0].note.startswith(PROOF)
    rep = generation_closure(AlgebraParams(third, 0, 1), [Lb(-1, 1), Hb(1, 0)], [Hb(0, 1)], depth_cap=1)
    assert closure_reaches(rep) == {"H[0,1]": True}
    ap = AlgebraParams(half, 1, -1)
    gens = [g for g in generators(ap, range(-2, 3)) if not (g.kind == "H" and g.m == 1)]
    rep = generation_closure(ap, gens, [Hb(0, 1)], depth_cap=3, index_bound=2, height_bound=3, expect={Hb(0, 1): False})
    assert rep.ok and rep.entries[0].note.startswith(BOUNDED)


def test_closure_expectation_mismatch_fails():
    rep = generation_closure(AlgebraParams(0, 0, 1), [Lb(1, 0)], [Lb(2, 0)], depth_cap=2, expect={Lb(2, 0): True})
    assert not rep.ok


def test_default_generators_include_H1_when_kappa_lives():
    assert Hb(2, 1) in default_generators(AlgebraParams(half, 1, -1))
    assert Hb(2, 1) not in default_generators(AlgebraParams(half, 1, 1))
