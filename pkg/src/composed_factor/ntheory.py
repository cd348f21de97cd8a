"""Integer arithmetic helpers: factorization, valuations and arithmetic functions."""

from __future__ import annotations

import math
import random
from functools import lru_cache

TRIAL_LIMIT = 10**6
FACTOR_LIMIT = 2**96

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactorizationLimitError(ArithmeticError):
    """Raised when a cofactor is too large for the desk-scale factoring backend."""


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, v in enumerate(flags) if v]


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    return _sieve(TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    """Miller-Rabin; the fixed base set is deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_divisor(n: int) -> int:
    """Smallest prime divisor of ``n`` (``n`` itself when prime)."""
    if n < 2:
        raise ValueError(f"no prime divisor for {n}")
    for p in _trial_primes():
        if p * p > n:
            return n
        if n % p == 0:
            return p
    return min(factorint(n))


def _pollard_brent(n: int, rng: random.Random, max_iter: int) -> int | None:
    if n % 2 == 0:
        return 2
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    ys = x = y
    done = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        done += r
        if done > max_iter:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    if n > FACTOR_LIMIT:
        raise FactorizationLimitError(
            f"composite cofactor {n} exceeds the 2^96 factoring limit"
        )
    rng = random.Random(n)
    for _ in range(64):
        g = _pollard_brent(n, rng, max_iter=1 << 22)
        if g is not None and 1 < g < n:
            _split(g, out)
            _split(n // g, out)
            return
    raise FactorizationLimitError(f"Pollard rho failed to split {n}")


@lru_cache(maxsize=4096)
def _factorint_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        _split(n, out)
    return tuple(sorted(out.items()))


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"factorint requires n >= 1, got {n}")
    return dict(_factorint_cached(n))


def factor_power_minus_one(q: int, k: int) -> dict[int, int]:
    """Factor ``q**k - 1`` through its algebraic factors ``Phi_m(q)``, ``m | k``."""
    out: dict[int, int] = {}
    for m in divisors(k):
        part = cyclotomic_value(m, q)
        for p, e in factorint(part).items():
            out[p] = out.get(p, 0) + e
    return dict(sorted(out.items()))


def cyclotomic_value(m: int, x: int) -> int:
    """Integer value ``Phi_m(x)`` via the Mobius product formula."""
    num, den = 1, 1
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            num *= x**d - 1
        elif mu == -1:
            den *= x**d - 1
    return num // den


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


def rad(n: int) -> int:
    """Product of the distinct primes dividing ``n``."""
    return math.prod(prime_factors(n)) if n > 1 else 1


def nu(p: int, k: int) -> int:
    """p-adic valuation of the nonzero integer ``k``."""
    if k == 0:
        raise ValueError("valuation of zero is infinite")
    k = abs(k)
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    fac = factorint(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=8192)
def _divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n``."""
    if n < 1:
        raise ValueError(f"divisors requires n >= 1, got {n}")
    return list(_divisors(n))


def order_from_factorization(x, one, fac: dict[int, int], group_order: int, power) -> int:
    """Order of ``x`` in a group of known order by stripping each prime.

    ``power(x, k)`` must compute ``x**k`` in the group and ``one`` is its identity.
    """
    t = group_order
    for p, e in fac.items():
        for _ in range(e):
            if power(x, t // p) == one:
                t //= p
            else:
                break
    return t


def ord_mod(q: int, e: int) -> int:
    """Multiplicative order of ``q`` modulo ``e``."""
    if e < 1:
        raise ValueError("modulus must be positive")
    if e == 1:
        return 1
    if math.gcd(q, e) != 1:
        raise ValueError(f"gcd({q}, {e}) != 1, order undefined")
    lam = carmichael(e)
    return order_from_factorization(
        q % e, 1, factorint(lam), lam, lambda a, k: pow(a, k, e)
    )


def carmichael(n: int) -> int:
    """Carmichael function: exponent of the unit group modulo ``n``."""
    result = 1
    for p, e in factorint(n).items():
        if p == 2 and e >= 3:
            lam = 2 ** (e - 2)
        else:
            lam = (p - 1) * p ** (e - 1)
        result = result * lam // math.gcd(result, lam)
    return result


def lte_valuation(p: int, a: int, k: int) -> int:
    """``nu_p(a**k - 1)`` by the lifting-the-exponent rules.

    Odd ``p`` needs ``p | a - 1``; ``p = 2`` needs ``a`` odd.
    """
    if k < 1:
        raise ValueError("exponent must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        if a % 2 == 0:
            raise ValueError("p = 2 requires odd a")
        if k % 2:
            return nu(2, a - 1)
        return nu(2, a * a - 1) + nu(2, k) - 1
    if (a - 1) % p:
        raise ValueError(f"p = {p} must divide a - 1 = {a - 1}")
    if a == 1:
        raise ValueError("a = 1 gives a**k - 1 = 0")
    return nu(p, a - 1) + nu(p, k)


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**a``; raise ``ValueError`` if ``q`` is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = smallest_divisor(q)
    a, r = 0, q
    while r % p == 0:
        r //= p
        a += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, a
