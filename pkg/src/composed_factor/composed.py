"""Closed-form factorization of f(x^n) over F_q and the matching factor counts.

Notation follows the usual conventions for composed polynomials: ``k = deg f``,
``e = ord(f)``, ``S_n = ord_{rad n}(q)``, ``s_n`` is ``S_n`` or ``2 S_n``,
``d = gcd(n, q^{s_n} - 1)``, ``m = n / d`` and ``r = n^-1 mod e``.

Two auxiliary fields carry the roots:

* the stem field ``F_q[y]/(f)`` holds ``alpha`` (``alpha = -f(0)`` when k = 1);
* ``F_{q^{s_n}}`` holds ``theta`` of order ``d``.

Since ``gcd(k, s_n) = 1``, ``f`` stays irreducible over ``F_{q^{s_n}}`` and
``G_{t,u}(x) = theta^{-uk} g_t(theta^u x^t)`` has coefficients there.  Every
factor over F_q is a Frobenius orbit product of some ``G_{t,u}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from fractions import Fraction

import numpy as np

from .field import (
    Element,
    FieldCtx,
    coerce_to_subfield,
    embed,
    find_element_of_order,
    frobenius,
    make_extension,
    VectorField,
)
from . import kernels as K
from .ntheory import divisors, euler_phi, is_prime, mobius, nu, ord_mod, prime_factors, rad
from .oracle import find_irreducible_of_degree, find_root_in_extension
from .poly import (
    Poly,
    compose_xn,
    frobenius_poly,
    gcd,
    is_irreducible,
    map_coeffs,
    poly_order,
    product,
    substitute_scaled,
)

IRREDUCIBLE, RADICAL, S2, SP, GENERAL = "IRREDUCIBLE", "RADICAL", "S2", "SP", "GENERAL"


class HypothesisError(ValueError):
    """An instance lies outside the hypotheses of the requested closed form."""

    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition


class InternalInvariantError(AssertionError):
    """A value that theory says must lie in a subfield (or match) did not."""


@dataclass(eq=False)
class LabeledFactor:
    poly: Poly
    t: int
    u: int
    l: int
    meta: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.poly.degree


@dataclass(eq=False)
class FactorList:
    input: Poly
    factors: list[LabeledFactor]
    method: str = "closed"
    case: str | None = None

    def __post_init__(self):
        self.factors.sort(key=lambda lf: lf.poly.sort_key())

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    @property
    def polys(self) -> list[Poly]:
        return [lf.poly for lf in self.factors]

    def degrees(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for lf in self.factors:
            out[lf.degree] = out.get(lf.degree, 0) + 1
        return dict(sorted(out.items()))

    def product(self) -> Poly:
        return product(self.polys, self.input.ctx)


@dataclass(eq=False)
class ComposedParams:
    f: Poly
    n: int
    q: int
    k: int
    e: int
    S_n: int
    s_n: int
    d: int
    m: int
    r: int
    case_tag: str
    base: FieldCtx
    _g: dict = field(default_factory=dict, repr=False)

    @property
    def ctx(self) -> FieldCtx:
        return self.base

    # the fields below are built on first use; counting never needs them
    @cached_property
    def stem(self) -> FieldCtx:
        return self.base if self.k == 1 else make_extension(self.base, self.f)

    @cached_property
    def alpha(self) -> Element:
        return -self.f.coeff(0) if self.k == 1 else self.stem([0, 1])

    @cached_property
    def theta_field(self) -> FieldCtx:
        return theta_field_for(self.base, self.s_n)

    @cached_property
    def theta(self) -> Element:
        return find_element_of_order(self.theta_field, self.d)


# ------------------------------------------------------------ parameters ---


def _check_base_poly(f: Poly) -> None:
    if f.degree < 1:
        raise HypothesisError("f must be nonconstant")
    if not f.is_monic():
        raise HypothesisError("f must be monic")
    if f.coeff(0).is_zero():
        raise HypothesisError("f must not be divisible by x")
    if not is_irreducible(f):
        raise HypothesisError("f must be irreducible over F_q")


def irreducibility_conditions(f: Poly, n: int) -> list[tuple[str, bool]]:
    """The three conditions for ``f(x^n)`` to stay irreducible, each with its verdict."""
    _check_base_poly(f)
    q = f.ctx.order
    if math.gcd(n, q) != 1:
        raise HypothesisError(f"gcd(n, q) = {math.gcd(n, q)} != 1")
    k, e = f.degree, poly_order(f)
    return [
        (f"rad(n) = {rad(n)} divides e = {e}", e % rad(n) == 0),
        (f"gcd(n, (q^k-1)/e) = {math.gcd(n, (q**k - 1) // e)} equals 1", math.gcd(n, (q**k - 1) // e) == 1),
        ("4 | n implies q^k = 1 mod 4", n % 4 != 0 or q**k % 4 == 1),
    ]


def check_composed_irreducible(f: Poly, n: int) -> bool:
    return all(ok for _, ok in irreducibility_conditions(f, n))


def compute_s_n(n: int, q: int) -> tuple[int, int]:
    if math.gcd(n, q) != 1:
        raise HypothesisError(f"gcd(n, q) = {math.gcd(n, q)} != 1")
    S = ord_mod(q, rad(n))
    s = 2 * S if (pow(q, S, 4) == 3 and n % 8 == 0) else S
    return S, s


def _case_tag(n, q, k, e, S, s, f, irreducible: bool) -> str:
    if irreducible:
        return IRREDUCIBLE
    if s == 1:
        return RADICAL
    if s == 2 and q % 4 == 3 and n % 8 == 0 and k % 2 == 1 and (q - 1) % rad(n) == 0:
        return S2
    if (
        S % 2 == 1
        and is_prime(S)
        and s == S
        and math.gcd(k * e, n) == 1
        and math.gcd(k, S) == 1
        and (n % 8 != 0 or q % 4 == 1)
    ):
        return SP
    return GENERAL


def derive_params(f: Poly, n: int) -> ComposedParams:
    """Validate the hypotheses and compute every derived quantity for ``f(x^n)``."""
    if n < 1:
        raise HypothesisError("n must be a positive integer")
    _check_base_poly(f)
    base = f.ctx
    q = base.order
    k = f.degree
    if math.gcd(n, q) != 1:
        raise HypothesisError(f"gcd(n, q) = {math.gcd(n, q)} != 1")
    e = poly_order(f)
    if math.gcd(n, e * k) != 1:
        raise HypothesisError(f"gcd(n, e*k) = gcd({n}, {e * k}) = {math.gcd(n, e * k)} != 1")
    S, s = compute_s_n(n, q)
    if s > 1 and math.gcd(s, k) != 1:
        raise HypothesisError(f"gcd(s_n, k) = gcd({s}, {k}) != 1")
    d = math.gcd(n, q**s - 1)
    m = n // d
    r = pow(n, -1, e) if e > 1 else 1
    r = r or e
    irreducible = check_composed_irreducible(f, n)
    tag = _case_tag(n, q, k, e, S, s, f, irreducible)

    return ComposedParams(
        f=f, n=n, q=q, k=k, e=e, S_n=S, s_n=s, d=d, m=m, r=r, case_tag=tag, base=base,
    )


@lru_cache(maxsize=64)
def theta_field_for(base: FieldCtx, s: int) -> FieldCtx:
    """F_{q^s} over ``base``: the base itself when s = 1, else the first irreducible modulus of degree s."""
    return base if s == 1 else make_extension(base, find_irreducible_of_degree(base, s))


# ------------------------------------------------------- building blocks ---


def build_g_t(params: ComposedParams, t: int) -> Poly:
    """Minimal polynomial over F_q of ``alpha^(t r)``."""
    if params.m % t:
        raise ValueError(f"t = {t} does not divide m = {params.m}")
    if t in params._g:
        return params._g[t]
    beta = params.alpha ** (t * params.r)
    stem, base = params.stem, params.base
    roots = [beta]
    for _ in range(params.k - 1):
        roots.append(frobenius(roots[-1], 1, params.q))
    x = Poly.x(stem)
    g = product([x - rt for rt in roots], stem)
    try:
        g = map_coeffs(g, base, lambda c: coerce_to_subfield(c, base))
    except Exception as exc:
        raise InternalInvariantError(f"g_{t} has coefficients outside F_q: {exc}") from exc
    params._g[t] = g
    return g


def compute_l_tu(params: ComposedParams, u: int) -> int:
    """Least divisor ``v`` of ``s_n`` with ``d / gcd(n, q^v - 1)`` dividing ``u``."""
    for v in divisors(params.s_n):
        if u % (params.d // math.gcd(params.n, params.q**v - 1)) == 0:
            return v
    raise InternalInvariantError("v = s_n always qualifies")


def _theta_pow_in_base(params: ComposedParams, u: int) -> Element:
    return coerce_to_subfield(params.theta**u, params.base)


def build_G_tu(params: ComposedParams, t: int, u: int) -> Poly:
    """``theta^{-uk} g_t(theta^u x^t)`` over ``F_{q^{s_n}}`` (monic, degree k t)."""
    if params.m % t:
        raise ValueError(f"t = {t} does not divide m = {params.m}")
    if not 1 <= u <= params.d or math.gcd(u, t) != 1:
        raise ValueError(f"need 1 <= u <= d and gcd(u, t) = 1, got u = {u}")
    E = params.theta_field
    g = build_g_t(params, t)
    g_up = g if E is params.base else map_coeffs(g, E, lambda c: embed(c, E))
    c = params.theta**u
    G = substitute_scaled(g_up, c, t)
    return G * (c ** (-params.k))


def _stride(G: Poly) -> int:
    exps = [i for i, c in enumerate(G.elements()) if not c.is_zero()]
    s = 0
    for i in exps:
        s = math.gcd(s, i)
    return max(s, 1)


def _decompress(G: Poly, t: int) -> Poly:
    return Poly.from_list(G.ctx, G.elements()[::t])


def orbit_product(G: Poly, l: int, base: FieldCtx | None = None) -> Poly:
    """``prod_{j<l} sigma^j(G)`` with coefficients coerced to the base field."""
    E = G.ctx
    base = base if base is not None else (E.base or E)
    t = _stride(G)
    H = _decompress(G, t) if t > 1 else G
    images = [H]
    for _ in range(l - 1):
        images.append(frobenius_poly(images[-1]))
    P = product(images, E)
    if isinstance(E, VectorField) and base is E.base:
        arr = P.coeffs
        if arr[:, 1:].any():
            raise InternalInvariantError("orbit product is not defined over the base field")
        P = Poly(base, K.trim(arr[:, 0].copy()))
        return compose_xn(P, t) if t > 1 else P
    try:
        P = map_coeffs(P, base, lambda c: coerce_to_subfield(c, base)) if E is not base else P
    except Exception as exc:
        raise InternalInvariantError(f"orbit product is not defined over the base field: {exc}") from exc
    return compose_xn(P, t) if t > 1 else P


def minimal_polynomial_over_base(z: Element, base: FieldCtx, degree: int) -> Poly:
    """Minimal polynomial over ``base`` of ``z``, known to have the given degree.

    Writes ``1, z, ..., z^degree`` as coordinate columns over ``base`` and reads
    the dependency of the last column off the reduced echelon form.
    """
    E = z.ctx
    if E is base:
        return Poly.from_list(base, [-z, base.one])
    if E.base is not base:
        raise ValueError("z must lie in an immediate extension of base")
    cols = np.zeros((E.rel_degree, degree + 1), np.int64)
    w = E.one
    for j in range(degree + 1):
        cols[:, j] = E.coeffs_of(w.value)
        w = w * z
    rank, pivots = K.rref(cols, base.fd)
    if rank != degree or list(pivots[:rank]) != list(range(degree)):
        raise InternalInvariantError(f"powers of z have rank {rank}, expected {degree}")
    neg = base.vneg(cols[:degree, degree])
    return Poly(base, np.append(neg, base.one_value).astype(np.int64))


def orbit_factor(params: ComposedParams, t: int, u: int, l: int) -> Poly:
    """The orbit product of ``G_{t,u}`` computed as a norm, without working over F_{q^{s_n}}[x].

    With ``mu`` the minimal polynomial of ``theta^u`` (degree l) and ``beta = alpha^(t r)``,
    the roots in ``y = x^t`` are ``beta^(q^i) / zeta`` over the conjugates ``zeta`` of
    ``theta^u``, so the product is the norm from the stem field of
    ``R(y) = sum_a mu_a beta^a y^(l-a)``.
    """
    base, stem = params.base, params.stem
    mu = minimal_polynomial_over_base(params.theta**u, base, l)
    beta = params.alpha ** (t * params.r)
    coeffs = [None] * (l + 1)
    power = stem.one
    for a, c in enumerate(mu.elements()):
        coeffs[l - a] = power * (c if stem is base else embed(c, stem))
        power = power * beta
    R = Poly.from_list(stem, coeffs)
    P = R if stem is base else orbit_product(R, params.k, base)
    P = P.monic()
    return compose_xn(P, t) if t > 1 else P


def _orbits(params: ComposedParams, t: int) -> list[list[int]]:
    """q-cyclotomic classes of ``{1 <= u <= d : gcd(u, t) = 1}`` modulo d (0 written as d)."""
    d, q = params.d, params.q
    seen = set()
    out = []
    for u in range(1, d + 1):
        if u in seen or math.gcd(u, t) != 1:
            continue
        orbit = [u]
        w = u * q % d or d
        while w != u:
            orbit.append(w)
            w = w * q % d or d
        seen.update(orbit)
        out.append(orbit)
    return out


def factor_general(params: ComposedParams) -> FactorList:
    """One factor per (t, class of u): the Frobenius orbit product of ``G_{t,u}``."""
    base = params.base
    factors = []
    for t in divisors(params.m):
        g = build_g_t(params, t)
        for orbit in _orbits(params, t):
            u = orbit[0]
            l = compute_l_tu(params, u)
            if l != len(orbit):
                raise InternalInvariantError(f"orbit of u = {u} has size {len(orbit)} but l = {l}")
            if l == 1:
                c = _theta_pow_in_base(params, u)
                P = substitute_scaled(g, c, t) * (c ** (-params.k))
            else:
                P = orbit_factor(params, t, u, l)
            factors.append(LabeledFactor(P, t, u, l, {"orbit": orbit}))
    return FactorList(compose_xn(params.f, params.n), factors, "closed", params.case_tag)


def factor_radical_case(params: ComposedParams) -> FactorList:
    """``theta^{-uk} g_t(theta^u x^t)`` for t | m, 1 <= u <= d, gcd(u, t) = 1."""
    if params.s_n != 1:
        raise HypothesisError(f"radical case needs s_n = 1, got s_n = {params.s_n}")
    factors = []
    for t in divisors(params.m):
        g = build_g_t(params, t)
        for u in range(1, params.d + 1):
            if math.gcd(u, t) != 1:
                continue
            c = _theta_pow_in_base(params, u)
            P = substitute_scaled(g, c, t) * (c ** (-params.k))
            factors.append(LabeledFactor(P, t, u, 1))
    return FactorList(compose_xn(params.f, params.n), factors, "closed", params.case_tag)


def factor_in_working_extension(params: ComposedParams) -> FactorList:
    """Same factor set, computed with one extension of degree ``k s_n`` hosting alpha and theta.

    Slower than :func:`factor_general`; kept as an independent cross-check.
    """
    base, k, s = params.base, params.k, params.s_n
    W = base if k * s == 1 else make_extension(base, find_irreducible_of_degree(base, k * s))
    alpha = find_root_in_extension(params.f, W)
    theta = find_element_of_order(W, params.d)
    x = Poly.x(W)
    factors = []
    for t in divisors(params.m):
        beta = alpha ** (t * params.r)
        for orbit in _orbits(params, t):
            u = orbit[0]
            l = len(orbit)
            c = theta ** (-u)
            # G_{t,u}(x) = prod_i (x^t - theta^-u beta^(q^(i s)))
            roots = [c * frobenius(beta, i * s, params.q) for i in range(k)]
            H = product([x - rt for rt in roots], W)
            imgs = [H]
            for _ in range(l - 1):
                imgs.append(map_coeffs(imgs[-1], W, lambda a: frobenius(a, 1, params.q)))
            P = product(imgs, W)
            P = P if W is base else map_coeffs(P, base, lambda a: coerce_to_subfield(a, base))
            factors.append(LabeledFactor(compose_xn(P, t) if t > 1 else P, t, u, l))
    return FactorList(compose_xn(params.f, params.n), factors, "closed-working-extension", params.case_tag)


# --------------------------------------------------------------- counting ---


def _conta_product(m: int, primes=None) -> Fraction:
    out = Fraction(1)
    for p in prime_factors(m) if m > 1 else []:
        if primes is None or p in primes:
            out *= 1 + Fraction(nu(p, m) * (p - 1), p)
    return out


def count_radical_case(params: ComposedParams) -> tuple[int, dict[int, int]]:
    """Total and per-degree counts when ``s_n = 1``."""
    if params.s_n != 1:
        raise HypothesisError(f"radical-case count needs s_n = 1, got s_n = {params.s_n}")
    g1 = math.gcd(params.n, params.q - 1)
    by_degree = {}
    for t in divisors(params.m):
        c = Fraction(euler_phi(t), t) * g1
        by_degree[params.k * t] = int(c)
        if c.denominator != 1:
            raise InternalInvariantError(f"non-integral count {c} for degree {params.k * t}")
    total = g1 * _conta_product(params.m)
    if total != sum(by_degree.values()):
        raise InternalInvariantError("total disagrees with the per-degree counts")
    return int(total), by_degree


def r_nt(params: ComposedParams, t: int) -> int:
    """Smallest divisor ``v`` of ``s_n`` with ``gcd(d / gcd(n, q^v - 1), t) = 1``."""
    if params.m % t:
        raise ValueError(f"t = {t} does not divide m = {params.m}")
    for v in divisors(params.s_n):
        if math.gcd(params.d // math.gcd(params.n, params.q**v - 1), t) == 1:
            return v
    raise InternalInvariantError("v = s_n always qualifies")


def lambda_omega(params: ComposedParams, t: int, s: int) -> tuple[Fraction, Fraction]:
    """``(Lambda_t(s), Omega_t(s))``: G_{t,u} over F_{q^s}, and those with field of definition exactly F_{q^s}."""
    if params.s_n % s:
        raise ValueError(f"s = {s} does not divide s_n = {params.s_n}")
    r = r_nt(params, t)
    if s % r:
        return Fraction(0), Fraction(0)
    w = Fraction(euler_phi(t), t)
    lam = w * math.gcd(params.n, params.q**s - 1)
    om = w * sum(mobius(s // v) * math.gcd(params.n, params.q**v - 1) for v in divisors(s) if v % r == 0)
    return lam, om


def m_v(params: ComposedParams, v: int) -> int:
    """Largest divisor of m coprime to ``d / gcd(n, q^v - 1)``."""
    ratio = params.d // math.gcd(params.n, params.q**v - 1)
    out = 1
    for p in prime_factors(params.m) if params.m > 1 else []:
        if ratio % p:
            out *= p ** nu(p, params.m)
    return out


def count_general_forms(params: ComposedParams) -> tuple[Fraction, Fraction]:
    n, q, s = params.n, params.q, params.s_n
    first = Fraction(0)
    for t in divisors(params.m):
        r = r_nt(params, t)
        inner = sum(math.gcd(n, q**v - 1) * euler_phi(s // v) for v in divisors(s) if v % r == 0)
        first += Fraction(euler_phi(t), t) * inner
    first /= s
    second = Fraction(0)
    for v in divisors(s):
        second += math.gcd(n, q**v - 1) * euler_phi(s // v) * _conta_product(m_v(params, v))
    second /= s
    return first, second


def count_general(params: ComposedParams) -> int:
    first, second = count_general_forms(params)
    if first != second:
        raise InternalInvariantError(f"the two general counting forms disagree: {first} vs {second}")
    if first.denominator != 1:
        raise InternalInvariantError(f"non-integral factor count {first}")
    return int(first)


def s2_l(params: ComposedParams) -> int:
    return min(nu(2, params.n // 2), nu(2, params.q + 1))


def count_s2_case(params: ComposedParams) -> Fraction:
    """Closed count for ``s_n = 2``, ``q = 3 mod 4``, ``8 | n``; the product runs over odd primes of m."""
    if params.case_tag != S2:
        raise HypothesisError(f"S2 count needs case S2, got {params.case_tag}")
    l = s2_l(params)
    if params.d != 2**l * math.gcd(params.n, params.q - 1):
        raise InternalInvariantError("d != 2^l gcd(n, q-1)")
    odd = {p for p in prime_factors(params.m) if p != 2} if params.m > 1 else set()
    head = Fraction(1, 2) + Fraction(2**l, 4) * (2 + nu(2, params.m))
    return math.gcd(params.n, params.q - 1) * head * _conta_product(params.m, odd)


def count_sp_case(params: ComposedParams) -> Fraction:
    """Two-term closed count for ``ord_{rad n}(q) = p`` an odd prime, evaluated exactly as stated.

    The value is a Fraction; it can disagree with :func:`count_general` (and
    even be non-integral) when n is divisible by the square of a prime.
    """
    if params.case_tag != SP:
        raise HypothesisError(f"SP count needs case SP, got {params.case_tag}")
    p = params.S_n
    prod = _conta_product(params.m)
    return Fraction(p - 1, p) * math.gcd(params.n, params.q - 1) * prod + Fraction(
        math.gcd(params.n, params.q**p - 1), p
    ) * prod


def sp_threshold(params: ComposedParams) -> tuple[str, int, int]:
    """``(case, T, d')``: ``G_{t,u}`` is over F_q iff ``T | u``; ``beta = theta^T`` has order d'."""
    n, q, p = params.n, params.q, params.S_n
    cyc = (q**p - 1) // (q - 1)
    if n % p or (q - 1) % p:
        return "1", math.gcd(n, cyc), math.gcd(n, q - 1)
    if nu(p, n) <= nu(p, q - 1):
        return "2.1", math.gcd(n // p, cyc // p), p * math.gcd(n // p, q - 1)
    return "2.2", math.gcd(n, cyc), math.gcd(n, q - 1)


def sp_case_structure(params: ComposedParams) -> FactorList:
    """The general factor list, each factor tagged with its branch in the odd-prime case.

    Base-branch factors are ``beta^{-vk} g_t(beta^v x^t)`` with ``u = T v``;
    the rest are p-fold orbit products.
    """
    if params.case_tag != SP:
        raise HypothesisError(f"SP structure needs case SP, got {params.case_tag}")
    case, T, dprime = sp_threshold(params)
    p = params.S_n
    beta = params.theta**T
    if beta.order() != dprime:
        raise InternalInvariantError(f"beta has order {beta.order()}, expected {dprime}")
    fl = factor_general(params)
    for lf in fl.factors:
        in_base = lf.u % T == 0
        if in_base != (lf.l == 1):
            raise InternalInvariantError(f"threshold test disagrees with l for u = {lf.u}")
        if in_base:
            if (params.q - 1) % rad(lf.t):
                raise InternalInvariantError(f"base-field factor with rad(t) not dividing q - 1 (t = {lf.t})")
            lf.meta.update(branch="base", case=case, v=lf.u // T, d_prime=dprime)
        else:
            if lf.degree != params.k * lf.t * p:
                raise InternalInvariantError("orbit factor with degree != k t p")
            lf.meta.update(branch="orbit", case=case)
    return fl


def closed_count(params: ComposedParams) -> tuple[str, Fraction]:
    """The count from the formula attached to the case tag (``formula``, ``value``)."""
    tag = params.case_tag
    if tag == IRREDUCIBLE:
        return "irreducible", Fraction(1)
    if tag == RADICAL:
        return "radical", Fraction(count_radical_case(params)[0])
    if tag == S2:
        return "s2", count_s2_case(params)
    if tag == SP:
        return "sp", count_sp_case(params)
    return "general", Fraction(count_general(params))


def factor_composed(f: Poly, n: int) -> FactorList:
    """Closed-form factorization of ``f(x^n)`` (hypotheses enforced)."""
    return factor_general(derive_params(f, n))
