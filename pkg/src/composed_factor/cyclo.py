"""Factorizations of Phi_e(x^n) and x^(en) - 1 built from those of Phi_e and x^e - 1."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .composed import FactorList, HypothesisError, InternalInvariantError, LabeledFactor
from .field import FieldCtx, find_element_of_order
from .ntheory import divisors, euler_phi, is_prime, ord_mod, rad
from .oracle import factor_generic
from .poly import Poly, compose_xn, cyclotomic, product, substitute_scaled


def cyclotomic_degree_profile(e: int, ctx: FieldCtx) -> tuple[int, int]:
    """``(k, count)``: Phi_e splits into ``count`` irreducibles of degree ``k = ord_e q``."""
    q = ctx.order
    if math.gcd(e, q) != 1:
        raise HypothesisError(f"gcd(e, q) = {math.gcd(e, q)} != 1")
    k = ord_mod(q, e)
    return k, euler_phi(e) // k


def _check_radical_n(n: int, q: int, ke: int) -> None:
    if n < 1:
        raise HypothesisError("n must be positive")
    if (q - 1) % rad(n):
        raise HypothesisError(f"rad(n) = {rad(n)} does not divide q - 1 = {q - 1}")
    if math.gcd(n, ke) != 1:
        raise HypothesisError(f"gcd(n, k*e) = {math.gcd(n, ke)} != 1")
    if n % 8 == 0 and q % 4 != 1:
        raise HypothesisError("8 | n requires q = 1 mod 4")


def _expand(parts: list[Poly], n: int, ctx: FieldCtx, meta_key: str) -> list[LabeledFactor]:
    """``monic(F(theta^u x^t))`` for every part F, t | m and 1 <= u <= d with gcd(u, t) = 1."""
    d = math.gcd(n, ctx.order - 1)
    m = n // d
    theta = find_element_of_order(ctx, d)
    out = []
    for i, F in enumerate(parts):
        for t in divisors(m):
            for u in range(1, d + 1):
                if math.gcd(u, t) == 1:
                    P = substitute_scaled(F, theta**u, t).monic()
                    out.append(LabeledFactor(P, t, u, 1, {meta_key: i}))
    return out


def _verify(fl: FactorList) -> FactorList:
    keys = {lf.poly.key() for lf in fl.factors}
    if len(keys) != len(fl.factors):
        raise InternalInvariantError("repeated factor in a closed-form product")
    if fl.product() != fl.input:
        raise InternalInvariantError("factors do not multiply back to the input")
    return fl


def factor_cyclotomic_composed(e: int, n: int, ctx: FieldCtx, verify: bool = True) -> FactorList:
    """Factor ``Phi_e(x^n)`` from the oracle factorization of ``Phi_e``."""
    k, _ = cyclotomic_degree_profile(e, ctx)
    _check_radical_n(n, ctx.order, k * e)
    parts = factor_generic(cyclotomic(e, ctx)).factors
    fl = FactorList(compose_xn(cyclotomic(e, ctx), n), _expand(parts, n, ctx, "i"), "closed")
    return _verify(fl) if verify else fl


def factor_binomial_composed(e: int, n: int, ctx: FieldCtx, verify: bool = True) -> FactorList:
    """Factor ``x^(en) - 1`` from the oracle factorization of ``x^e - 1``."""
    k, _ = cyclotomic_degree_profile(e, ctx)
    _check_radical_n(n, ctx.order, k * e)
    base = Poly.monomial(ctx, e) - 1
    parts = factor_generic(base).factors
    fl = FactorList(compose_xn(base, n), _expand(parts, n, ctx, "i"), "closed")
    return _verify(fl) if verify else fl


def check_primitive_root_mod_p2(q: int, P: int) -> bool:
    """Whether ``q`` generates the units modulo ``P^2`` (then Phi_{P^i} is irreducible over F_q)."""
    if P < 3 or not is_prime(P):
        raise ValueError(f"P = {P} must be an odd prime")
    if q % P == 0:
        raise ValueError(f"gcd(q, P) != 1 for q = {q}, P = {P}")
    return ord_mod(q, P * P) == P * (P - 1)


@dataclass
class TowerFactorization:
    cyclotomic: FactorList  # Phi_{P^s}(x^n)
    binomial: FactorList  # x^(P^s n) - 1


def factor_prime_power_tower(P: int, s: int, n: int, ctx: FieldCtx, verify: bool = True) -> TowerFactorization:
    """Both products for ``q`` primitive modulo ``P^2``: no oracle call, Phi_{P^i} are already irreducible."""
    q = ctx.order
    if not check_primitive_root_mod_p2(q, P):
        raise HypothesisError(f"q = {q} is not a primitive root modulo {P}^2")
    if s < 1:
        raise HypothesisError("s must be positive")
    if (q - 1) % rad(n):
        raise HypothesisError(f"rad(n) = {rad(n)} does not divide q - 1 = {q - 1}")
    if math.gcd(n, P - 1) != 1:
        raise HypothesisError(f"gcd(n, P - 1) = {math.gcd(n, P - 1)} != 1")
    x = Poly.x(ctx)
    phis = [cyclotomic(P**i, ctx) for i in range(1, s + 1)]
    top = FactorList(compose_xn(phis[-1], n), _expand([phis[-1]], n, ctx, "i"), "closed")
    linear = _expand([x - 1], n, ctx, "i")
    for lf in linear:
        lf.meta["i"] = 0
    rest = _expand(phis, n, ctx, "i")
    for lf in rest:
        lf.meta["i"] += 1
    whole = FactorList(compose_xn(Poly.monomial(ctx, P**s) - 1, n), linear + rest, "closed")
    if verify:
        _verify(top)
        _verify(whole)
    return TowerFactorization(top, whole)
