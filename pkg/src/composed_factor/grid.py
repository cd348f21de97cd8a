"""Parameter grids for cross-checking closed forms against the oracle.

The number of irreducible factors of ``f(x^n)`` depends only on ``q``, ``n`` and
the order ``e`` of ``f`` (``deg f = ord_e q`` is then forced), so one
representative per ``(q, e)`` class covers every count on a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .composed import HypothesisError, compute_s_n
from .field import FieldCtx, make_extension, make_prime_field
from .ntheory import prime_power
from .oracle import _candidate, find_irreducible_of_degree
from .poly import Poly, is_irreducible, poly_order

GRID_QS = (2, 3, 4, 5, 7, 9, 11, 13)
GRID_DEGREES = (1, 2, 3)
GRID_NMAX = 400


@lru_cache(maxsize=None)
def field_for(q: int) -> FieldCtx:
    """F_q; extensions use the first irreducible modulus in canonical order."""
    p, a = prime_power(q)
    F = make_prime_field(p)
    if a == 1:
        return F
    return make_extension(F, find_irreducible_of_degree(F, a))


@lru_cache(maxsize=None)
def class_representatives(q: int, k: int) -> tuple[tuple[int, Poly], ...]:
    """``(e, f)`` for each order ``e`` realised by a monic irreducible of degree ``k``; first f in scan order."""
    F = field_for(q)
    reps: dict[int, Poly] = {}
    for index in range(q**k):
        if index % q == 0:
            continue
        f = _candidate(F, k, index)
        if not is_irreducible(f):
            continue
        e = poly_order(f)
        reps.setdefault(e, f)
    return tuple(sorted(reps.items()))


@dataclass(frozen=True)
class Instance:
    q: int
    k: int
    e: int
    n: int
    f: Poly

    @property
    def label(self) -> str:
        return f"q={self.q} f={self.f.to_text()} n={self.n}"


def meets_hypotheses(q: int, k: int, e: int, n: int) -> bool:
    if math.gcd(n, q) != 1 or math.gcd(n, e * k) != 1:
        return False
    try:
        _, s = compute_s_n(n, q)
    except HypothesisError:
        return False
    return s == 1 or math.gcd(s, k) == 1


def instances(qs=GRID_QS, degrees=GRID_DEGREES, nmax=GRID_NMAX, hypotheses=True):
    """All ``(q, class, n)`` triples with ``n <= nmax``; optionally only those meeting the hypotheses."""
    out = []
    for q in qs:
        for k in degrees:
            for e, f in class_representatives(q, k):
                for n in range(1, nmax + 1):
                    if math.gcd(n, q) != 1:
                        continue
                    if hypotheses and not meets_hypotheses(q, k, e, n):
                        continue
                    out.append(Instance(q, k, e, n, f))
    return out


def admissible_q_primitive_mod_square(P: int, extra=lambda q: True, limit: int = 10**4) -> int:
    """Smallest prime power q that is a primitive root modulo P^2 and satisfies ``extra``."""
    from .cyclo import check_primitive_root_mod_p2

    for q in range(2, limit):
        try:
            prime_power(q)
        except ValueError:
            continue
        if q % P and check_primitive_root_mod_p2(q, P) and extra(q):
            return q
    raise ValueError("no admissible q below the search limit")
