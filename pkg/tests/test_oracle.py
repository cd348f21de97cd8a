import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from composed_factor.field import embed, frobenius, make_extension
from composed_factor.grid import field_for
from composed_factor.oracle import (
    count_factors,
    distinct_degree,
    equal_degree,
    factor_generic,
    find_irreducible_of_degree,
    find_root_in_extension,
    squarefree_decomposition,
)
from composed_factor.poly import Poly, PolyError, compose_xn, derivative, gcd, is_irreducible, product

from conftest import P


def polys(ctx, min_deg=1, max_deg=12):
    return st.lists(st.integers(0, ctx.order - 1), min_size=min_deg + 1, max_size=max_deg + 1).filter(
        lambda cs: cs[-1] != 0
    ).map(lambda cs: Poly.from_list(ctx, [ctx.element_at(c) for c in cs]))


def test_examples(F3, F11, cubic14, cubic14_partner):
    fac = factor_generic(P(F3, 2, 0, 1))
    assert fac.factors == [P(F3, 1, 1), P(F3, 2, 1)]
    phi14 = cubic14 * cubic14_partner
    assert factor_generic(phi14).factors == [cubic14_partner, cubic14]
    x8 = Poly.monomial(F3, 8) - 1
    assert factor_generic(x8).count == 5
    assert count_factors(x8) == {1: 2, 2: 3}
    with pytest.raises(PolyError):
        factor_generic(P(F3, 2))


def test_multiplicities(F2, F5):
    f = P(F5, 1, 1) ** 3 * P(F5, 2, 0, 1) ** 2 * P(F5, 3)
    fac = factor_generic(f)
    assert fac.product() == f
    assert dict(zip((g.to_text() for g in fac), fac.multiplicities)) == {"1,1": 3, "2,0,1": 2}
    # inseparable part in characteristic 2
    g = compose_xn(P(F2, 1, 1, 1), 4) * P(F2, 0, 1)
    assert factor_generic(g).product() == g
    assert count_factors(g) == {1: 1, 2: 4}


@given(data=st.data())
def test_reconstruction_and_irreducibility(data):
    F = field_for(data.draw(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13])))
    f = data.draw(polys(F))
    seed = data.draw(st.integers(0, 3))
    fac = factor_generic(f, seed)
    assert fac.product() == f
    assert all(g.is_monic() and is_irreducible(g) for g in fac)
    assert sum(g.degree * m for g, m in zip(fac.factors, fac.multiplicities)) == f.degree
    assert count_factors(f) == fac.degrees()
    assert factor_generic(f, seed).factors == fac.factors
    assert [g.sort_key() for g in fac] == sorted(g.sort_key() for g in fac)


@given(data=st.data())
def test_squarefree_and_ddf_pieces(data):
    F = field_for(data.draw(st.sampled_from([2, 3, 4, 9, 13])))
    f = data.draw(polys(F, max_deg=10)).monic()
    parts = squarefree_decomposition(f)
    assert product([g**m for g, m in parts], F) == f
    for g, _ in parts:
        if g.degree > 0:
            assert gcd(g, derivative(g)).degree == 0
            for piece, d in distinct_degree(g):
                assert piece.degree % d == 0
                split = equal_degree(piece, d, random.Random(1))
                assert all(h.degree == d for h in split)
                assert product(split, F) == piece


@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(1, 60))
def test_composed_input_is_squarefree(q, n):
    F = field_for(q)
    if n % q == 0:
        return
    f = P(F, F.order - 1, 1)
    g = compose_xn(f, n)
    assert gcd(g, derivative(g)).degree == 0
    assert all(m == 1 for m in factor_generic(g).multiplicities)


def test_find_irreducible(F2, F3, F9):
    assert find_irreducible_of_degree(F2, 1) == Poly.x(F2)
    assert find_irreducible_of_degree(F3, 2) == P(F3, 1, 0, 1)
    assert find_irreducible_of_degree(F2, 3) == P(F2, 1, 1, 0, 1)
    for ctx, deg in [(F2, 8), (F3, 5), (F9, 3)]:
        h = find_irreducible_of_degree(ctx, deg)
        assert h.degree == deg and h.is_monic() and is_irreducible(h)


def test_find_root(F3, F11, F9, cubic14):
    assert find_root_in_extension(P(F11, 7, 1), F11) == F11(4)
    i = find_root_in_extension(P(F3, 1, 0, 1), F9)
    assert i * i == F9(2)
    assert i == F9([0, 2])  # smallest linear factor is x + [0,1]
    E = make_extension(F11, find_irreducible_of_degree(F11, 3))
    a = find_root_in_extension(cubic14, E)
    lifted = Poly.from_list(E, [embed(c, E) for c in cubic14.elements()])
    assert lifted(a).is_zero() and frobenius(a, 3) == a
    with pytest.raises(PolyError):
        find_root_in_extension(cubic14, F9)
