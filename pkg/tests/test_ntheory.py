import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from composed_factor.ntheory import (
    FactorizationLimitError,
    carmichael,
    cyclotomic_value,
    divisors,
    euler_phi,
    factor_power_minus_one,
    factorint,
    is_prime,
    lte_valuation,
    mobius,
    nu,
    ord_mod,
    prime_factors,
    prime_power,
    rad,
    smallest_divisor,
)


def brute_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_small_helpers():
    assert rad(12) == 6 and nu(2, 12) == 2
    assert mobius(30) == -1 and euler_phi(15) == 8
    assert ord_mod(11, 14) == 3
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert rad(1) == 1 and mobius(1) == 1 and mobius(12) == 0


def test_lte_examples():
    assert lte_valuation(5, 11, 5) == 2
    assert lte_valuation(2, 3, 2) == 3
    assert lte_valuation(3, 4, 1) == 1


@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 60), st.integers(1, 30))
def test_lte_matches_direct_valuation(p, a, k):
    if p == 2 and a % 2 == 0 or p > 2 and (a - 1) % p:
        with pytest.raises(ValueError):
            lte_valuation(p, a, k)
        return
    assert lte_valuation(p, a, k) == nu(p, a**k - 1)


def test_lte_rejects_bad_inputs():
    with pytest.raises(ValueError):
        lte_valuation(4, 5, 1)
    with pytest.raises(ValueError):
        lte_valuation(3, 5, 2)


@given(st.integers(1, 5000))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == brute_is_prime(n)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@given(st.integers(2, 10**12))
def test_factorint_reconstructs(n):
    fac = factorint(n)
    assert math.prod(p**e for p, e in fac.items()) == n
    assert all(is_prime(p) for p in fac)


def test_factorint_semiprime():
    p, q = 1000003, 998244353
    assert factorint(p * q) == {p: 1, q: 1}


def test_factor_power_minus_one():
    for q, k in [(11, 3), (2, 12), (3, 8), (13, 6)]:
        fac = factor_power_minus_one(q, k)
        assert math.prod(p**e for p, e in fac.items()) == q**k - 1


def test_factorization_limit():
    with pytest.raises(FactorizationLimitError):
        factorint((2**127 - 1) * (2**89 - 1))


def test_cyclotomic_value():
    assert cyclotomic_value(14, 11) == (11**14 - 1) * (11 - 1) // ((11**7 - 1) * (11**2 - 1))
    assert cyclotomic_value(1, 5) == 4


@given(st.integers(2, 400), st.integers(2, 60))
def test_ord_mod_definition(e, q):
    if math.gcd(e, q) != 1:
        return
    k = ord_mod(q, e)
    assert pow(q, k, e) == 1 % e
    assert all(pow(q, j, e) != 1 for j in range(1, k))
    assert carmichael(e) % k == 0


@given(st.integers(1, 3000))
def test_multiplicative_functions(n):
    assert sum(euler_phi(d) for d in divisors(n)) == n
    assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)
    assert rad(n) == math.prod(prime_factors(n))


def test_prime_power_and_divisor():
    assert prime_power(9) == (3, 2)
    assert prime_power(13) == (13, 1)
    with pytest.raises(ValueError):
        prime_power(12)
    assert smallest_divisor(91) == 7
