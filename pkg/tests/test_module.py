from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import polys
from hvalg.algebra import AlgebraElement, AlgebraParams, Hb, Lb, basis, bracket
from hvalg.module import (
    Branch,
    ConfigurationError,
    H_on_one,
    ModuleParams,
    RankOneModule,
    act,
    act_basis,
    branch_of,
    gamma_active,
    kappa_active,
    phi,
    psi,
    validate,
    varphi,
)
from hvalg.poly import ONE, T, Polynomial
from hvalg.verify import default_grid

E = AlgebraElement.of
half, third = Fraction(1, 2), Fraction(1, 3)
GRID = default_grid()


def test_phi_examples():
    assert phi(7, third, 0) == 1
    assert phi(2, half, 1) == Fraction(1, 5)
    assert phi(3, 0, 1) == 0 and phi(0, 0, 1) == 1
    assert phi(4, third, 2) == 0


def test_varphi_examples():
    mp = ModuleParams(1, 0, 3, 2, {0: 5, 1: 7, -2: 11}, (-3, 3))
    for i in (-2, 0, 1, 3):
        assert varphi(i, 0, half, mp) == half / (half + i) * Fraction(1) ** i * 2
        assert varphi(i, 1, half, mp) == mp.kappa_at(i)
    assert varphi(0, 2, half, mp) == -half * 5 + 3


def test_psi_examples():
    mp = ModuleParams(2, 0, 3, Fraction(4, 3), {0: 5, 2: 7}, (-3, 3))
    assert psi(0, 0, mp) == Fraction(4, 3)
    assert psi(1, 0, mp) == 0
    assert psi(0, 1, mp) == 5
    assert psi(2, 3, mp) == 2 * 7


def test_kappa_outside_window_raises():
    mp = ModuleParams(1, 0, 1, 0, {0: 1}, (0, 1))
    with pytest.raises(ConfigurationError):
        mp.kappa_at(2)
    M = RankOneModule(AlgebraParams(0, 1, -1), mp)
    with pytest.raises(ConfigurationError):
        M.act_basis(Hb(3, 1), ONE)


def test_branch_activation_table():
    cases = {
        (0, 0, 1): (Branch.B0, True, False),
        (half, 1, 1): (Branch.B1, True, False),
        (0, 1, 1): (Branch.B1_A0, False, False),
        (third, 2, 1): (Branch.GENERIC, False, False),
        (0, 0, -1): (Branch.B0, True, False),
        (half, 1, -1): (Branch.B1, True, True),
        (0, 1, -1): (Branch.B1_A0, True, True),
        (third, 2, -1): (Branch.GENERIC, False, False),
    }
    for (a, b, eps), (br, g, k) in cases.items():
        ap = AlgebraParams(a, b, eps)
        assert (branch_of(ap), gamma_active(ap), kappa_active(ap)) == (br, g, k)


@pytest.mark.parametrize(
    "ap, mp",
    [
        (AlgebraParams(third, 2, 1), ModuleParams(1, 0, 1, gamma=1)),
        (AlgebraParams(0, 1, 1), ModuleParams(1, 0, 1, gamma=1)),
        (AlgebraParams(0, 0, 1), ModuleParams(1, 0, 1, kappa={0: 1})),
        (AlgebraParams(Fraction(3, 2), 0, 1), ModuleParams(1, 0, 1)),
        (AlgebraParams(-half, 0, 1), ModuleParams(1, 0, 1)),
    ],
)
def test_validate_rejects(ap, mp):
    with pytest.raises(ConfigurationError):
        validate(ap, mp)


def test_lambda_must_be_nonzero():
    with pytest.raises(ConfigurationError):
        ModuleParams(0, 1, 1)


def test_act_basis_examples():
    ap1 = AlgebraParams(0, 2, 1)
    assert act_basis(ap1, ModuleParams(2, 1, 3), Lb(1, 1), ONE) == Polynomial((-4, 6))
    lam, gamma, a = Fraction(3), Fraction(5, 2), third
    ap = AlgebraParams(a, 0, 1)
    got = act_basis(ap, ModuleParams(lam, 1, 2, gamma), Hb(2, 0), T)
    assert got == Polynomial((-(a + 2), 1)).scale(lam**2 * gamma)
    alpha, beta = Fraction(2, 3), Fraction(-5)
    got = act_basis(AlgebraParams(0, 2, -1), ModuleParams(2, alpha, beta), Lb(0, 1), ONE)
    assert got == Polynomial((-alpha * beta, 1)).scale(beta)


@pytest.mark.parametrize("ap, mp", GRID, ids=lambda x: str(x))
@given(polys)
def test_L00_is_multiplication_by_t(ap, mp, cs):
    f = Polynomial(cs)
    assert act_basis(ap, mp, Lb(0, 0), f) == T * f


@pytest.mark.parametrize("b", [2, Fraction(-1, 2), 3])
def test_H_vanishes_for_generic_b(b):
    ap = AlgebraParams(third, b, 1)
    M = RankOneModule(ap, ModuleParams(2, 1, 3))
    for i, m, k in product(range(-3, 4), range(4), range(5)):
        assert M.act_basis(Hb(i, m), T**k).is_zero()


def test_act_examples():
    ap = AlgebraParams(0, 0, 1)
    mp = ModuleParams(2, 1, 3, gamma=Fraction(7, 3))
    assert act(ap, mp, AlgebraElement.zero(), T**3).is_zero()
    assert act(ap, mp, 2 * E(Lb(0, 0)), T) == T * T * 2
    assert act(ap, mp, E(Lb(0, 0)) + E(Hb(0, 0)), ONE) == T + Fraction(7, 3)


def test_H_on_one_examples():
    lam, beta, gamma = Fraction(2), Fraction(3), Fraction(5, 4)
    for i, m in product(range(-3, 4), range(4)):
        assert H_on_one(AlgebraParams(third, 0, 1), ModuleParams(lam, 1, beta, gamma), i, m) == lam**i * beta**m * gamma
    got = H_on_one(AlgebraParams(half, 1, 1), ModuleParams(1, 1, beta, gamma), 0, 1)
    assert got == beta * gamma + 2 * gamma
    mp = ModuleParams(2, 1, beta, gamma, {2: Fraction(-3, 5)}, (-4, 4))
    assert H_on_one(AlgebraParams(0, 1, -1), mp, 2, 3) == 2 * Fraction(-3, 5)


@pytest.mark.parametrize("ap, mp", GRID, ids=lambda x: str(x))
def test_H_on_one_matches_action(ap, mp):
    M = RankOneModule(ap, mp)
    for i, m in product(range(-3, 4), range(5)):
        assert M.act_basis(Hb(i, m), ONE) == Polynomial.constant(M.H_on_one(i, m))


@pytest.mark.parametrize("ap, mp", GRID, ids=lambda x: str(x))
def test_monomial_form_matches_derivative_form(ap, mp):
    M = RankOneModule(ap, mp)
    for kind, i, m, k in product("LH", range(-3, 4), range(4), range(6)):
        x = basis(kind, i, m)
        assert M.act_basis(x, T**k) == M.act_basis_monomial(x, k), (x, k)


@pytest.mark.parametrize("ap, mp", GRID, ids=lambda x: str(x))
@given(polys, polys, st.integers(-4, 4))
def test_action_is_linear_in_f(ap, mp, a, b, c):
    M = RankOneModule(ap, mp)
    f, g = Polynomial(a), Polynomial(b)
    for x in (Lb(1, 2), Lb(-2, 0), Hb(1, 1), Hb(0, 2)):
        assert M.act_basis(x, f + g.scale(c)) == M.act_basis(x, f) + M.act_basis(x, g).scale(c)


EXTRA = [
    (AlgebraParams(0, 1, -1), ModuleParams(3, 0, -2, 0, {1: 1}, (-6, 6))),
    (AlgebraParams(half, 1, -1), ModuleParams(Fraction(-1, 2), 0, 0, 3, {0: 2}, (-6, 6))),
    (AlgebraParams(Fraction(2, 3), 1, 1), ModuleParams(5, 2, 0, 1)),
    (AlgebraParams(0, 0, -1), ModuleParams(1, 0, 0, 4)),
]


@pytest.mark.parametrize("ap, mp", list(GRID) + EXTRA, ids=lambda x: str(x))
def test_module_axiom_all_basis_pairs(ap, mp):
    M = RankOneModule(ap, mp)
    vecs = [basis(k, i, m) for k in "LH" for i in range(-2, 3) for m in range(3)]
    for x, y in product(vecs, vecs):
        for k in range(4):
            f = T**k
            lhs = M.act(bracket(ap, x, y), f)
            rhs = M.act_basis(x, M.act_basis(y, f)) - M.act_basis(y, M.act_basis(x, f))
            assert lhs == rhs, (x, y, k)


def test_params_json_round_trip():
    mp = ModuleParams(Fraction(-2, 3), 1, 0, Fraction(1, 7), {-1: 2, 3: Fraction(1, 2)}, (-4, 4))
    assert ModuleParams.from_json(mp.to_json()) == mp
    with pytest.raises((KeyError, ValueError)):
        ModuleParams.from_json({**mp.to_json(), "delta": "1"})
