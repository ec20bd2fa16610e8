from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from hvalg.algebra import (
    AlgebraElement,
    AlgebraParams,
    DiffOperator,
    Hb,
    Lb,
    basis,
    bracket,
    bracket_basis,
    op_commutator,
    parse_element,
    realize,
    realize_L,
    shift_isomorphism,
)

E = AlgebraElement.of
AB = [(0, 0), (Fraction(1, 2), 1), (0, 1), (Fraction(1, 3), 2)]
PARAMS = [AlgebraParams(a, b, eps) for a, b in AB for eps in (1, -1)]

vectors = st.builds(basis, st.sampled_from("LH"), st.integers(-3, 3), st.integers(0, 3))
elements = st.lists(st.tuples(vectors, st.integers(-3, 3)), max_size=3).map(AlgebraElement)


def test_bracket_basis_examples():
    p1, pm = AlgebraParams(0, 0, 1), AlgebraParams(0, 0, -1)
    assert bracket_basis(p1, Hb(1, 0), Hb(2, 3)) == 0
    assert bracket_basis(p1, Lb(0, 1), Lb(1, 0)) == E(Lb(1, 1)) + E(Lb(1, 0))
    assert bracket_basis(pm, Lb(0, 1), Lb(1, 0)) == E(Lb(1, 1)) - E(Lb(1, 2))
    p = AlgebraParams(Fraction(1, 2), 1, 1)
    assert bracket_basis(p, Lb(1, 0), Hb(0, 1)) == E(Hb(1, 1), Fraction(3, 2)) - E(Hb(1, 0))


def test_bracket_examples():
    p = AlgebraParams(Fraction(1, 3), 2, 1)
    x = E(Lb(1, 1)) + E(Hb(0, 2))
    assert bracket(p, x, x) == 0
    assert bracket(p, 2 * E(Lb(1, 0)), E(Lb(2, 0))) == 2 * E(Lb(3, 0))
    assert bracket(p, AlgebraElement.zero(), x) == 0


def test_bracket_formula_by_hand():
    # [L_{i,m}, H_{j,n}] = (a+j+bi) H_{i+j,m+n} - eps(n+bm) H_{i+j,m+n-eps}
    a, b = Fraction(1, 3), 2
    for eps in (1, -1):
        p = AlgebraParams(a, b, eps)
        for i, m, j, n in product(range(-2, 3), range(3), range(-2, 3), range(3)):
            want = AlgebraElement({Hb(i + j, m + n): a + j + b * i})
            if m + n - eps >= 0:
                want = want + AlgebraElement({Hb(i + j, m + n - eps): -eps * (n + b * m)})
            assert bracket_basis(p, Lb(i, m), Hb(j, n)) == want


def test_negative_height_never_produced():
    # when m + n - eps < 0 the coefficient of the missing term is already zero
    for p in PARAMS:
        assert bracket_basis(p, Lb(2, 0), Lb(-1, 0)) == E(Lb(1, 0), -3)
        assert bracket_basis(p, Lb(0, 0), Hb(0, 0)) == E(Hb(0, 0), p.a)


@pytest.mark.parametrize("p", PARAMS, ids=str)
@given(elements, elements, st.integers(-3, 3))
def test_antisymmetry_and_bilinearity(p, x, y, c):
    assert bracket(p, x, y) == -bracket(p, y, x)
    z = E(Lb(1, 1))
    assert bracket(p, x + c * y, z) == bracket(p, x, z) + c * bracket(p, y, z)


@pytest.mark.parametrize("p", PARAMS, ids=str)
@given(elements, elements, elements)
def test_jacobi_random_elements(p, x, y, z):
    total = bracket(p, x, bracket(p, y, z)) + bracket(p, y, bracket(p, z, x)) + bracket(p, z, bracket(p, x, y))
    assert total == 0


def test_shift_isomorphism_examples():
    x = E(Lb(1, 2)) + E(Hb(0, 1), 3)
    assert shift_isomorphism(2, E(Hb(3, 1))) == E(Hb(1, 1))
    assert shift_isomorphism(0, x) == x
    assert shift_isomorphism(1, E(Lb(5, 2)) + E(Hb(0, 0))) == E(Lb(5, 2)) + E(Hb(-1, 0))


@pytest.mark.parametrize("k", [-2, 1, 3])
@given(elements, elements)
def test_shift_isomorphism_is_homomorphism(k, x, y):
    p = AlgebraParams(Fraction(1, 3), 2, -1)
    q = p.shifted(k)
    assert q.a == p.a + k
    lhs = shift_isomorphism(k, bracket(p, x, y))
    rhs = bracket(q, shift_isomorphism(k, x), shift_isomorphism(k, y))
    assert lhs == rhs


def test_realize_L_examples():
    assert realize_L(1, Lb(0, 0)).coefficient == {(0, 0): -1}
    assert realize_L(1, Lb(2, 1)).coefficient == {(-2, 1): -1}
    assert realize_L(-1, Lb(1, 0)).coefficient == {(1, 0): 1}
    with pytest.raises(NotImplementedError):
        realize_L(1, Hb(0, 0))


def test_op_commutator_examples():
    A = realize_L(1, Lb(2, 3))
    assert not op_commutator(1, A, A)
    lhs = op_commutator(1, realize_L(1, Lb(0, 1)), realize_L(1, Lb(1, 0)))
    assert lhs == realize_L(1, Lb(1, 1)) + realize_L(1, Lb(1, 0))
    lhs = op_commutator(-1, realize_L(-1, Lb(0, 0)), realize_L(-1, Lb(1, 0)))
    assert lhs == realize_L(-1, Lb(1, 0))


@pytest.mark.parametrize("eps", [1, -1])
def test_realization_reproduces_L_bracket(eps):
    p = AlgebraParams(0, 0, eps)
    rng = range(-3, 4)
    for i, m, j, n in product(rng, range(4), rng, range(4)):
        comm = op_commutator(eps, realize_L(eps, Lb(i, m)), realize_L(eps, Lb(j, n)))
        assert comm == realize(eps, bracket_basis(p, Lb(i, m), Lb(j, n))), (i, m, j, n)


def test_diff_operator_rejects_negative_t_power():
    with pytest.raises(ValueError):
        DiffOperator({(0, -1): 1})


@pytest.mark.parametrize(
    "text, want",
    [
        ("L[1,1] + L[1,0]", E(Lb(1, 1)) + E(Lb(1, 0))),
        ("3/2*H[1,1] - H[1,0]", E(Hb(1, 1), Fraction(3, 2)) - E(Hb(1, 0))),
        ("-L[-2,0]", E(Lb(-2, 0), -1)),
        (" 2 * H[ -1 , 3 ] ", E(Hb(-1, 3), 2)),
        ("0", AlgebraElement.zero()),
    ],
)
def test_parse_element(text, want):
    assert parse_element(text) == want


@pytest.mark.parametrize("text", ["L[0]", "", "L[1,-1]", "X[0,0]", "L[0,0] H[0,0]", "L[0,0]+"])
def test_parse_element_rejects(text):
    with pytest.raises(ValueError):
        parse_element(text)


def test_rendering():
    assert (E(Lb(1, 1)) + E(Lb(1, 0))).to_text() == "L[1,1] + L[1,0]"
    assert (E(Hb(1, 1), Fraction(3, 2)) - E(Hb(1, 0))).to_text() == "3/2*H[1,1] - H[1,0]"
    assert AlgebraElement.zero().to_text() == "0"


@given(elements)
def test_text_and_json_round_trip(x):
    assert parse_element(x.to_text()) == x
    assert AlgebraElement.from_json(x.to_json()) == x


def test_params_json():
    p = AlgebraParams(Fraction(1, 3), 2, -1)
    assert AlgebraParams.from_json(p.to_json()) == p
    with pytest.raises((KeyError, ValueError)):
        AlgebraParams.from_json({**p.to_json(), "c": "1"})
    with pytest.raises(ValueError):
        AlgebraParams(0, 0, 2)
