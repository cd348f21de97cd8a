import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from composed_factor.composed import (
    GENERAL,
    IRREDUCIBLE,
    RADICAL,
    S2,
    SP,
    HypothesisError,
    build_G_tu,
    build_g_t,
    check_composed_irreducible,
    closed_count,
    compute_l_tu,
    compute_s_n,
    count_general,
    count_general_forms,
    count_radical_case,
    count_s2_case,
    count_sp_case,
    derive_params,
    factor_composed,
    factor_general,
    factor_in_working_extension,
    factor_radical_case,
    lambda_omega,
    minimal_polynomial_over_base,
    orbit_factor,
    orbit_product,
    r_nt,
    sp_case_structure,
)
from composed_factor.field import element_order, frobenius
from composed_factor.grid import class_representatives, field_for, meets_hypotheses
from composed_factor.ntheory import divisors
from composed_factor.oracle import count_factors, factor_generic
from composed_factor.poly import Poly, compose_xn, is_irreducible, poly_order, substitute_scaled

from conftest import P


def x_minus_1(F):
    return Poly.x(F) - 1


def keyset(polys):
    return sorted(p.key() for p in polys)


def test_gate_examples(F5, F11, cubic14):
    assert check_composed_irreducible(P(F5, 3, 1), 2)
    assert not check_composed_irreducible(P(F5, 4, 1), 2)
    assert not check_composed_irreducible(cubic14, 5)
    with pytest.raises(HypothesisError):
        check_composed_irreducible(P(F5, 4, 0, 1), 3)


def test_s_n_examples():
    assert compute_s_n(125, 11) == (1, 1)
    assert compute_s_n(8, 3) == (1, 2)
    assert compute_s_n(7, 2) == (3, 3)
    with pytest.raises(HypothesisError):
        compute_s_n(6, 3)


def test_params_worked_example(F11, cubic14):
    par = derive_params(cubic14, 5)
    assert (par.k, par.e, par.s_n, par.d, par.m, par.r) == (3, 14, 1, 5, 1, 3)
    assert par.case_tag == RADICAL
    # 4 = 2^2 is the first candidate power of order 5 in scan order
    assert par.theta == F11(4) and element_order(par.theta) == 5
    assert (par.n * par.r) % par.e == 1


def test_params_small_cases(F2, F3):
    p8 = derive_params(P(F3, 2, 1), 8)
    assert (p8.k, p8.e, p8.s_n, p8.d, p8.m, p8.case_tag) == (1, 1, 2, 8, 1, S2)
    p7 = derive_params(P(F2, 1, 1), 7)
    assert (p7.k, p7.e, p7.s_n, p7.d, p7.m, p7.case_tag) == (1, 1, 3, 7, 1, SP)
    assert derive_params(P(F3, 2, 1), 1).case_tag == IRREDUCIBLE


def test_params_reject(F2, F3, F11, cubic14):
    with pytest.raises(HypothesisError, match="gcd\\(n, e\\*k\\)"):
        derive_params(cubic14, 7)
    with pytest.raises(HypothesisError, match="gcd\\(n, q\\)"):
        derive_params(cubic14, 11)
    with pytest.raises(HypothesisError, match="irreducible"):
        derive_params(P(F3, 2, 0, 1), 5)
    with pytest.raises(HypothesisError, match="gcd\\(s_n, k\\)"):
        # x^2+x+1 over F_2 has e = 3; n = 5 gives s_n = 4
        derive_params(P(F2, 1, 1, 1), 5)


def test_g_t(F11, cubic14, cubic14_partner):
    # g_1 is the minimal polynomial of alpha^3, which is the partner cubic
    assert build_g_t(derive_params(cubic14, 5), 1) == cubic14_partner
    assert build_g_t(derive_params(cubic14_partner, 5), 1) == cubic14
    for a in (2, 3):
        par = derive_params(cubic14, 5**a)
        for b in range(a + 1):
            t = 5**b
            if par.m % t == 0:
                want = cubic14 if (a - b) % 2 == 0 else cubic14_partner
                assert build_g_t(par, t) == want
    par = derive_params(P(F11, 10, 1), 25)
    assert all(build_g_t(par, t) == P(F11, 10, 1) for t in divisors(par.m))


def test_g_t_conjugate_invariant(F11, cubic14):
    par = derive_params(cubic14, 25)
    for t in divisors(par.m):
        g = build_g_t(par, t)
        # same product started from the conjugate root alpha^q
        beta = frobenius(par.alpha, 1, 11) ** (t * par.r)
        roots = [beta, frobenius(beta, 1, 11), frobenius(beta, 2, 11)]
        x = Poly.x(par.stem)
        again = (x - roots[0]) * (x - roots[1]) * (x - roots[2])
        assert [c.coeffs[0] for c in again.elements()] == [c.value for c in g.elements()]
        assert all(c.coeffs[1:] == [0, 0] for c in again.elements())
        assert poly_order(g) == 14 and is_irreducible(g)


def test_radical_worked_example(F11, cubic14, cubic14_partner):
    par = derive_params(cubic14, 5)
    fl = factor_radical_case(par)
    expected = [substitute_scaled(cubic14_partner, F11(3) ** u).monic() for u in range(1, 6)]
    assert keyset(fl.polys) == keyset(expected)
    assert keyset(fl.polys) == keyset(factor_generic(compose_xn(cubic14, 5)).factors)
    assert fl.product() == compose_xn(cubic14, 5)
    assert keyset(factor_general(par).polys) == keyset(fl.polys)


def test_radical_n25(cubic14):
    par = derive_params(cubic14, 25)
    fl = factor_radical_case(par)
    assert fl.degrees() == {3: 5, 15: 4}
    assert count_radical_case(par) == (9, {3: 5, 15: 4})
    assert keyset(fl.polys) == keyset(factor_generic(compose_xn(cubic14, 25)).factors)


def test_n_equal_one(F11, cubic14):
    par = derive_params(cubic14, 1)
    assert factor_general(par).polys == [cubic14]
    assert count_radical_case(par)[0] == 1


def test_G_tu_and_l_tu(F3, F2):
    par = derive_params(P(F3, 2, 1), 8)
    assert compute_l_tu(par, 4) == 1 and compute_l_tu(par, 1) == 2 and compute_l_tu(par, 8) == 1
    th = par.theta
    G = build_G_tu(par, 1, 1)
    assert G == Poly.x(par.theta_field) - th ** (-1)
    prod_ = orbit_product(G, 2)
    assert prod_.ctx is F3 and prod_.weight() <= 3 and is_irreducible(prod_)
    lin, const = -(th**-1 + th**-3), th**-4
    assert lin.coeffs[1:] == [0] and const.coeffs[1:] == [0]
    assert prod_ == P(F3, const.coeffs[0], lin.coeffs[0], 1)
    par7 = derive_params(P(F2, 1, 1), 7)
    assert compute_l_tu(par7, 7) == 1 and compute_l_tu(par7, 1) == 3
    assert r_nt(par7, 1) == 1


def test_small_factorizations(F2, F3):
    fl8 = factor_general(derive_params(P(F3, 2, 1), 8))
    want8 = factor_generic(Poly.monomial(F3, 8) - 1).factors
    assert len(fl8) == 5 and keyset(fl8.polys) == keyset(want8)
    fl7 = factor_general(derive_params(P(F2, 1, 1), 7))
    assert keyset(fl7.polys) == keyset([P(F2, 1, 1), P(F2, 1, 1, 0, 1), P(F2, 1, 0, 1, 1)])


def test_lambda_omega_examples(F3):
    par = derive_params(P(F3, 2, 1), 8)
    assert lambda_omega(par, 1, 1) == (2, 2)
    assert lambda_omega(par, 1, 2) == (8, 6)


def test_counts_examples(F2, F3):
    assert count_general(derive_params(P(F2, 1, 1), 7)) == 3
    p8 = derive_params(P(F3, 2, 1), 8)
    assert count_general(p8) == 5 and count_s2_case(p8) == 5
    p16 = derive_params(P(F3, 2, 1), 16)
    assert p16.case_tag == S2 and (p16.d, p16.m) == (8, 2)
    assert count_s2_case(p16) == 7 == sum(count_factors(Poly.monomial(F3, 16) - 1).values())
    assert count_sp_case(derive_params(P(F2, 1, 1), 7)) == 3


def test_count_gates(F2):
    F4 = field_for(4)
    with pytest.raises(HypothesisError):
        count_sp_case(derive_params(P(F2, 1, 1), 9))
    with pytest.raises(HypothesisError):
        count_sp_case(derive_params(x_minus_1(F4), 9))
    with pytest.raises(HypothesisError):
        count_s2_case(derive_params(P(F2, 1, 1), 7))
    with pytest.raises(HypothesisError):
        count_radical_case(derive_params(P(F2, 1, 1), 7))


def test_sp_count_defect(F2):
    # the two-term closed form goes wrong once a prime squared divides n
    par = derive_params(P(F2, 1, 1), 49)
    assert par.case_tag == SP and par.m == 7
    assert count_sp_case(par) == Fraction(39, 7)
    assert count_general(par) == 5 == sum(count_factors(Poly.monomial(F2, 49) - 1).values())


def test_sp_structure(F2):
    fl = sp_case_structure(derive_params(P(F2, 1, 1), 7))
    base = [lf for lf in fl if lf.meta["branch"] == "base"]
    orbit = [lf for lf in fl if lf.meta["branch"] == "orbit"]
    assert [lf.poly for lf in base] == [P(F2, 1, 1)]
    assert sorted(sorted(lf.meta["orbit"]) for lf in orbit) == [[1, 2, 4], [3, 5, 6]]
    assert all(lf.degree == 3 for lf in orbit)


def test_working_extension_agrees(F11, cubic14, F3, F2):
    for f, n in [(cubic14, 25), (P(F3, 2, 1), 16), (P(F2, 1, 1), 21), (P(F2, 1, 1, 1), 7)]:
        par = derive_params(f, n)
        assert keyset(factor_in_working_extension(par).polys) == keyset(factor_general(par).polys)


@st.composite
def grid_instance(draw, nmax=60):
    q = draw(st.sampled_from([2, 3, 4, 5, 7, 9, 11, 13]))
    k = draw(st.integers(1, 3))
    reps = class_representatives(q, k)
    e, f = draw(st.sampled_from(reps))
    n = draw(st.integers(1, nmax))
    return q, k, e, n, f


@given(grid_instance())
def test_factor_general_matches_oracle(inst):
    q, k, e, n, f = inst
    if not meets_hypotheses(q, k, e, n):
        with pytest.raises(HypothesisError):
            derive_params(f, n)
        return
    par = derive_params(f, n)
    fl = factor_general(par)
    target = compose_xn(f, n)
    assert fl.product() == target
    assert keyset(fl.polys) == keyset(factor_generic(target).factors)
    assert len({p.key() for p in fl.polys}) == len(fl)
    assert sum(lf.degree for lf in fl) == n * k
    assert all(lf.degree == k * lf.t * lf.l for lf in fl)
    assert all(lf.poly.weight() <= k * lf.l + 1 for lf in fl)
    assert count_general(par) == len(fl)
    first, second = count_general_forms(par)
    assert first == second == len(fl)
    if par.case_tag == RADICAL:
        assert count_radical_case(par)[1] == fl.degrees()
    if par.case_tag == S2:
        assert count_s2_case(par) == len(fl)
    if par.case_tag == IRREDUCIBLE:
        assert len(fl) == 1


@given(grid_instance(nmax=400))
def test_counts_and_mobius(inst):
    q, k, e, n, f = inst
    if not meets_hypotheses(q, k, e, n):
        return
    par = derive_params(f, n)
    assert count_general(par) == sum(count_factors(compose_xn(f, n)).values())
    for t in divisors(par.m):
        for s in divisors(par.s_n):
            lam, _ = lambda_omega(par, t, s)
            assert sum(lambda_omega(par, t, v)[1] for v in divisors(s)) == lam


@given(grid_instance(nmax=120))
def test_gate_matches_oracle(inst):
    q, k, e, n, f = inst
    if math.gcd(n, q) != 1:
        return
    verdict = check_composed_irreducible(f, n)
    fac = count_factors(compose_xn(f, n))
    assert verdict == (fac == {n * k: 1})


@given(st.sampled_from([3, 7, 11, 19]), st.integers(1, 6))
def test_s2_family(q, j):
    F = field_for(q)
    n = 8 * 2 ** (j % 3) * (1 if j < 3 else (q - 1) // 2)
    par = derive_params(x_minus_1(F), n)
    if par.case_tag != S2:
        return
    assert count_s2_case(par) == count_general(par) == len(factor_general(par))
    assert all(lf.poly.weight() <= 3 for lf in factor_general(par))


def test_closed_count_names(F2, F3, F11, cubic14):
    assert closed_count(derive_params(cubic14, 5)) == ("radical", 5)
    assert closed_count(derive_params(P(F3, 2, 1), 8)) == ("s2", 5)
    assert closed_count(derive_params(P(F2, 1, 1), 7)) == ("sp", 3)
    assert closed_count(derive_params(P(F3, 2, 1), 1)) == ("irreducible", 1)
    par = derive_params(P(F2, 1, 1), 15)
    assert par.case_tag == GENERAL and closed_count(par) == ("general", count_general(par))


def test_factor_composed_entry(cubic14):
    assert len(factor_composed(cubic14, 5)) == 5


@given(grid_instance(nmax=90))
def test_orbit_factor_matches_direct_orbit_product(inst):
    q, k, e, n, f = inst
    if not meets_hypotheses(q, k, e, n):
        return
    par = derive_params(f, n)
    for t in divisors(par.m)[:2]:
        for u in range(1, min(par.d, 6) + 1):
            if math.gcd(u, t) != 1:
                continue
            l = compute_l_tu(par, u)
            direct = orbit_product(build_G_tu(par, t, u), l, par.base)
            assert orbit_factor(par, t, u, l) == direct


def test_minimal_polynomial_over_base(F3, F9):
    i = F9([0, 1])
    assert minimal_polynomial_over_base(i, F3, 2) == P(F3, 1, 0, 1)
    assert minimal_polynomial_over_base(F9(2), F3, 1) == P(F3, 1, 1)
