"""Small embedded fixtures; ``composed-factor selftest`` runs them."""

from __future__ import annotations

from .codes import minimal_constacyclic_codes
from .composed import check_composed_irreducible, closed_count, derive_params, factor_general
from .field import find_element_of_order, make_prime_field
from .oracle import factor_generic
from .poly import Poly, compose_xn


def _keys(polys):
    return sorted(p.key() for p in polys)


def _worked_example(n: int):
    F = make_prime_field(11)
    f = Poly.from_list(F, [1, 6, 4, 1])
    params = derive_params(f, n)
    fl = factor_general(params)
    oracle = factor_generic(compose_xn(f, n))
    return F, f, params, fl, oracle


def _check_n5():
    # the factors are scaled copies of x^3+6x^2+4x+1, the minimal polynomial of alpha^3 (3 = 5^-1 mod 14)
    F, f, _, fl, oracle = _worked_example(5)
    h = Poly.from_list(F, [1, 4, 6, 1])
    expected = [_scaled(h, F(3) ** u) for u in range(1, 6)]
    return _keys(fl.polys) == _keys(expected) == _keys(oracle.factors)


def _scaled(f, c):
    """monic f(c x)"""
    return Poly.from_list(f.ctx, [a * c**i for i, a in enumerate(f.elements())]).monic()


def _check_n25():
    _, _, params, fl, oracle = _worked_example(25)
    name, value = closed_count(params)
    return fl.degrees() == {3: 5, 15: 4} == oracle.degrees() and value == 9


def _check_x8_f3():
    F = make_prime_field(3)
    f = Poly.from_list(F, [2, 1])
    params = derive_params(f, 8)
    fl = factor_general(params)
    _, value = closed_count(params)
    return params.case_tag == "S2" and len(fl) == value == 5 == len(factor_generic(compose_xn(f, 8)))


def _check_x7_f2():
    F = make_prime_field(2)
    f = Poly.from_list(F, [1, 1])
    params = derive_params(f, 7)
    fl = factor_general(params)
    _, value = closed_count(params)
    return params.case_tag == "SP" and len(fl) == value == 3 == len(factor_generic(compose_xn(f, 7)))


def _check_gate():
    F5, F11 = make_prime_field(5), make_prime_field(11)
    return (
        check_composed_irreducible(Poly.from_list(F5, [3, 1]), 2)
        and not check_composed_irreducible(Poly.from_list(F5, [4, 1]), 2)
        and not check_composed_irreducible(Poly.from_list(F11, [1, 6, 4, 1]), 5)
    )


def _check_theta():
    return find_element_of_order(make_prime_field(11), 5).value == 4


def _check_codes():
    fam = minimal_constacyclic_codes(1, 7, make_prime_field(2))
    return sorted(c.dimension for c in fam) == [1, 3, 3]


FIXTURES = [
    ("F_11 cubic of order 14, n=5: five scaled cubics, equal to oracle", _check_n5),
    ("F_11 cubic of order 14, n=25: degrees {3:5, 15:4}, count 9", _check_n25),
    ("x^8-1 over F_3: S2 case, 5 factors", _check_x8_f3),
    ("x^7-1 over F_2: SP case, 3 factors", _check_x7_f2),
    ("irreducibility gate examples", _check_gate),
    ("theta of order 5 in F_11 is 4", _check_theta),
    ("cyclic codes of length 7 over F_2: dims 1,3,3", _check_codes),
]


def run_selftest(out=print) -> int:
    failures = 0
    for name, check in FIXTURES:
        try:
            ok = bool(check())
        except Exception as exc:  # report and keep going
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        failures += not ok
        out(f"{'PASS' if ok else 'FAIL'} {name}")
    return failures
