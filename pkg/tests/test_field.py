import pytest
from hypothesis import given
from hypothesis import strategies as st

from composed_factor.field import (
    Element,
    FieldError,
    NotInSubfieldError,
    coerce_to_subfield,
    element_order,
    embed,
    find_element_of_order,
    frobenius,
    has_exact_order,
    make_extension,
    make_prime_field,
    trace_to_base,
)
from composed_factor.ntheory import divisors
from composed_factor.oracle import find_irreducible_of_degree, find_root_in_extension
from composed_factor.poly import map_coeffs

from conftest import P


def test_prime_field_construction():
    assert make_prime_field(11).order == 11
    assert make_prime_field(2).order == 2
    with pytest.raises(FieldError, match="divisible by 3"):
        make_prime_field(9)
    with pytest.raises(FieldError):
        make_prime_field(2**31 + 11)


def test_extension_construction(F2, F3, F11, cubic14):
    F9 = make_extension(F3, P(F3, 1, 0, 1))
    assert F9.order == 9 and F9.degree == 2
    assert make_extension(F11, cubic14).order == 11**3
    with pytest.raises(FieldError, match="reducible"):
        make_extension(F2, P(F2, 0, 0, 1))
    with pytest.raises(FieldError):
        make_extension(F3, P(F3, 2, 2))  # degree 1
    with pytest.raises(FieldError):
        make_extension(F3, P(F3, 2, 0, 2))  # not monic


def test_arithmetic_examples(F11, F9):
    assert F11(3) ** 5 == 1
    i = F9([0, 1])
    assert i * i == F9(2)
    assert i * i == -F9.one
    with pytest.raises(ZeroDivisionError):
        F11.zero.inverse()


def test_element_order_examples(F11):
    assert element_order(F11.one) == 1
    assert element_order(F11(3)) == 5
    assert element_order(F11(2)) == 10
    with pytest.raises(ZeroDivisionError):
        element_order(F11.zero)


def test_find_element_of_order(F3, F11, F9):
    # scan 1, 2, 3, ...: 2**2 = 4 already has order 5
    assert find_element_of_order(F11, 5) == F11(4)
    assert find_element_of_order(F11, 1) == F11(1)
    assert find_element_of_order(F3, 2) == F3(2)
    assert element_order(find_element_of_order(F9, 8)) == 8
    with pytest.raises(FieldError):
        find_element_of_order(F11, 3)



@pytest.fixture(scope="module")
def some_fields(F2, F3, F11, F9, cubic14):
    F8 = make_extension(F2, P(F2, 1, 1, 0, 1))
    F1331 = make_extension(F11, cubic14)
    F81 = make_extension(F9, find_irreducible_of_degree(F9, 2))
    return [F2, F3, F11, F9, F8, F1331, F81]


@given(data=st.data())
def test_order_divides_group_order(some_fields, data):
    F = data.draw(st.sampled_from(some_fields))
    x = F.element_at(data.draw(st.integers(1, F.order - 1)))
    o = element_order(x)
    assert (F.order - 1) % o == 0
    assert has_exact_order(x, o)


@given(data=st.data())
def test_find_element_has_exact_order(some_fields, data):
    F = data.draw(st.sampled_from(some_fields))
    d = data.draw(st.sampled_from(divisors(F.order - 1)))
    y = find_element_of_order(F, d)
    assert y**d == F.one and element_order(y) == d


@given(data=st.data())
def test_frobenius_is_automorphism(some_fields, data):
    F = data.draw(st.sampled_from(some_fields))
    a = F.element_at(data.draw(st.integers(0, F.order - 1)))
    b = F.element_at(data.draw(st.integers(0, F.order - 1)))
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a, 0) == a
    assert frobenius(a, F.rel_degree) == a
    if a:
        assert a * a.inverse() == F.one


@given(data=st.data())
def test_embed_coerce_round_trip(some_fields, data):
    F = data.draw(st.sampled_from([f for f in some_fields if f.base is not None]))
    sub = F.base
    c = sub.element_at(data.draw(st.integers(0, sub.order - 1)))
    up = embed(c, F)
    assert frobenius(up) == up
    assert coerce_to_subfield(up, sub) == c


def test_root_of_cubic_and_trace(F11, cubic14):
    E = make_extension(F11, find_irreducible_of_degree(F11, 3))
    alpha = find_root_in_extension(cubic14, E)
    lifted = map_coeffs(cubic14, E, lambda c: embed(c, E))
    assert lifted(alpha).is_zero()
    assert frobenius(alpha, 3) == alpha and frobenius(alpha) != alpha
    with pytest.raises(NotInSubfieldError):
        coerce_to_subfield(alpha, F11)
    tr = coerce_to_subfield(trace_to_base(alpha), F11)
    assert tr == -cubic14.coeff(2)
    assert element_order(alpha) == 14


def test_element_mismatch(F3, F5):
    with pytest.raises(FieldError):
        P(F3, 1, 1) + P(F5, 1, 1)
