"""Formula-free factorization over any field context.

Squarefree decomposition, then distinct-degree factorization, then
equal-degree splitting (Cantor-Zassenhaus in odd characteristic, the trace
map in characteristic 2).  This module knows nothing about composed
polynomials; it is the ground truth the closed forms are tested against.

Everything below works on raw coefficient arrays for speed; ``Poly`` objects
appear only at the public boundary.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fastpoly import PrimeModulus
from .field import Element, FieldCtx, PrimeField, SmallField, embed
from .poly import Poly, PolyError, derivative, is_irreducible, product


@dataclass
class Factorization:
    """Monic irreducible factors in canonical order, with multiplicities."""

    input: Poly
    lc: Element
    factors: list[Poly]
    multiplicities: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    @property
    def count(self) -> int:
        return sum(self.multiplicities)

    def degrees(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f, mult in zip(self.factors, self.multiplicities):
            out[f.degree] = out.get(f.degree, 0) + mult
        return dict(sorted(out.items()))

    def product(self) -> Poly:
        ctx = self.input.ctx
        parts = [f**mult for f, mult in zip(self.factors, self.multiplicities)]
        return product(parts, ctx) * self.lc


# ------------------------------------------------------- modular rings -----


class _GenericRing:
    """``ctx[x]/(m)`` through the context's raw polynomial primitives."""

    def __init__(self, m, ctx: FieldCtx):
        self.ctx = ctx
        lc = ctx.p_coeff(m, ctx.p_deg(m))
        self.m = ctx.p_scale(m, ctx.inv(lc))
        self.deg = ctx.p_deg(self.m)
        self.Q = ctx.order
        nnz = sum(1 for c in ctx.p_scalar_list(self.m) if not ctx.is_zero(c))
        self._spread = self.Q * nnz <= 8 * self.Q.bit_length() * max(self.deg, 1)

    def rem(self, a):
        return self.ctx.p_rem(a, self.m)

    def mul(self, a, b):
        return self.rem(self.ctx.p_mul(a, b))

    def pow(self, a, e: int):
        return self.ctx.p_powmod(a, e, self.m)

    def frobenius(self, h):
        """``h**Q``; coefficients lie in the field so only exponents move."""
        n = self.ctx.p_deg(h)
        if n < 0:
            return h
        if not self._spread:
            return self.pow(h, self.Q)
        out = np.zeros(((n * self.Q) + 1,) + h.shape[1:], np.int64)
        out[:: self.Q] = h
        return self.rem(out)


def _ring(m, ctx: FieldCtx):
    if isinstance(ctx, PrimeField):
        return PrimeModulus(m, ctx.p)
    return _GenericRing(m, ctx)


def _raw_x(ctx):
    return ctx.p_from([0, 1])


def _raw_one(ctx):
    return ctx.p_const(ctx.one_value)


def _deg(ctx, a) -> int:
    return ctx.p_deg(a)


def _exact_div(ctx, a, b):
    qt, r = ctx.p_divmod(a, b)
    assert ctx.p_deg(r) < 0, "exact division left a remainder"
    return qt


def _monic(ctx, a):
    return ctx.p_scale(a, ctx.inv(ctx.p_coeff(a, ctx.p_deg(a))))


# ------------------------------------------------------------ squarefree ---


def _pth_root(ctx, a):
    """``a(x)**(1/p)`` for ``a`` with zero derivative."""
    p = ctx.p
    coeffs = ctx.p_scalar_list(a)
    e = p ** (ctx.degree - 1)
    roots = [Element(ctx, ctx.pow(coeffs[i], e)) for i in range(0, len(coeffs), p)]
    return ctx.p_from(roots)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(g, i)`` with ``g`` squarefree, pairwise coprime and ``monic f = prod g**i``."""
    ctx = f.ctx
    out: list[tuple[Poly, int]] = []

    def rec(a, mult):
        da = derivative(Poly(ctx, a)).coeffs
        if _deg(ctx, da) < 0:
            rec(_pth_root(ctx, a), mult * ctx.p)
            return
        c = ctx.p_gcd(a, da)
        w = _exact_div(ctx, a, c)
        i = 1
        while _deg(ctx, w) > 0:
            y = ctx.p_gcd(w, c)
            fac = _exact_div(ctx, w, y)
            if _deg(ctx, fac) > 0:
                out.append((Poly(ctx, fac), i * mult))
            w = y
            c = _exact_div(ctx, c, y)
            i += 1
        if _deg(ctx, c) > 0:
            rec(_pth_root(ctx, c), mult * ctx.p)

    rec(f.monic().coeffs, 1)
    return out


# ------------------------------------------------------- distinct degree ---


def distinct_degree(g: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree ``g`` into products of same-degree irreducibles."""
    ctx = g.ctx
    r = g.monic().coeffs
    if _deg(ctx, r) <= 1:
        return [(Poly(ctx, r), 1)] if _deg(ctx, r) == 1 else []
    ring = _ring(r, ctx)
    x = ring.rem(_raw_x(ctx))
    h = x
    one = _raw_one(ctx)
    out = []
    block_size = 16 if ring.deg >= 256 else 4
    block, acc = [], one
    i = 0
    while _deg(ctx, r) >= 2 * (i + 1):
        i += 1
        h = ring.frobenius(h)
        diff = ctx.p_sub(h, x)
        block.append((i, diff))
        acc = ring.mul(acc, diff)
        if len(block) < block_size and _deg(ctx, r) >= 2 * (i + 1):
            continue
        G = ctx.p_gcd(r, acc)
        if _deg(ctx, G) > 0:
            for j, dj in block:
                gj = ctx.p_gcd(G, ctx.p_rem(dj, G))
                if _deg(ctx, gj) > 0:
                    out.append((Poly(ctx, gj), j))
                    G = _exact_div(ctx, G, gj)
                    r = _exact_div(ctx, r, gj)
                if _deg(ctx, G) <= 0:
                    break
            if 0 < _deg(ctx, r) and 2 * _deg(ctx, r) <= ring.deg:
                ring = _ring(r, ctx)
                h, x = ring.rem(h), ring.rem(_raw_x(ctx))
        block, acc = [], one
    if _deg(ctx, r) > 0:
        out.append((Poly(ctx, _monic(ctx, r)), _deg(ctx, r)))
    return out


# -------------------------------------------------------- equal degree -----


def _random_poly(ctx, n: int, rng: random.Random):
    return ctx.p_from([ctx.element_at(rng.randrange(ctx.order)) for _ in range(n)])


def _split_once(ctx, g, d: int, rng: random.Random):
    n = _deg(ctx, g)
    ring = _ring(g, ctx)
    Q = ctx.order
    while True:
        a = _random_poly(ctx, n, rng)
        if _deg(ctx, a) < 1:
            continue
        if Q % 2:
            t, acc = a, a
            for _ in range(d - 1):
                t = ring.frobenius(t)
                acc = ring.mul(acc, t)
            b = ctx.p_sub(ring.pow(acc, (Q - 1) // 2), _raw_one(ctx))
        else:
            t, acc = a, a
            for _ in range(ctx.degree * d - 1):
                t = ring.mul(t, t)
                acc = ctx.p_add(acc, t)
            b = acc
        G = ctx.p_gcd(g, b)
        if 0 < _deg(ctx, G) < n:
            return G, _exact_div(ctx, g, G)


def equal_degree(g: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split a monic squarefree product of degree-``d`` irreducibles."""
    ctx = g.ctx
    out = []
    stack = [g.monic().coeffs]
    while stack:
        a = stack.pop()
        if _deg(ctx, a) == d:
            out.append(Poly(ctx, _monic(ctx, a)))
            continue
        u, v = _split_once(ctx, a, d, rng)
        stack.extend((u, v))
    return out


# ---------------------------------------------------------------- public ---


def factor_generic(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles, sorted by degree then coefficients."""
    if f.degree < 1:
        raise PolyError("cannot factor a constant")
    rng = random.Random(seed)
    pairs: dict[tuple, list] = {}
    for g, mult in squarefree_decomposition(f):
        for part, d in distinct_degree(g):
            for fac in equal_degree(part, d, rng):
                entry = pairs.setdefault(fac.key(), [fac, 0])
                entry[1] += mult
    items = sorted(pairs.values(), key=lambda e: e[0].sort_key())
    return Factorization(f, f.lc(), [e[0] for e in items], [e[1] for e in items])


def count_factors(f: Poly) -> dict[int, int]:
    """Degree profile of the irreducible factors (with multiplicity) without splitting.

    Uses only squarefree and distinct-degree steps; the count per degree is the
    degree of each distinct-degree part divided by the factor degree.
    """
    if f.degree < 1:
        raise PolyError("cannot factor a constant")
    out: dict[int, int] = {}
    for g, mult in squarefree_decomposition(f):
        for part, d in distinct_degree(g):
            out[d] = out.get(d, 0) + mult * (part.degree // d)
    return dict(sorted(out.items()))


def _candidate(ctx: FieldCtx, deg: int, index: int) -> Poly:
    Q = ctx.order
    digits = []
    for _ in range(deg):
        index, r = divmod(index, Q)
        digits.append(r)
    if isinstance(ctx, SmallField):
        return Poly(ctx, np.array(digits + [1], np.int64))
    return Poly.from_list(ctx, [ctx.element_at(r) for r in digits] + [ctx.one])


def _ben_or(f: Poly) -> bool:
    """No irreducible factor of degree <= deg/2; gcds are batched over doubling blocks."""
    ctx = f.ctx
    n = f.degree
    ring = _ring(f.coeffs, ctx)
    x = ring.rem(_raw_x(ctx))
    h = x
    acc = _raw_one(ctx)
    check_at = 1
    for i in range(1, n // 2 + 1):
        h = ring.frobenius(h)
        acc = ring.mul(acc, ctx.p_sub(h, x))
        if i == check_at or i == n // 2:
            if _deg(ctx, ctx.p_gcd(f.coeffs, acc)) > 0:
                return False
            acc = _raw_one(ctx)
            check_at *= 2
    return True


@lru_cache(maxsize=256)
def find_irreducible_of_degree(ctx: FieldCtx, deg: int) -> Poly:
    """First monic irreducible of degree ``deg`` in canonical order (constant term fastest)."""
    if deg < 1:
        raise ValueError("degree must be positive")
    if deg == 1:
        return _candidate(ctx, 1, 0)
    index = 0
    while True:
        if index % ctx.order == 0:  # zero constant term means x divides the candidate
            index += 1
            continue
        cand = _candidate(ctx, deg, index)
        if _ben_or(cand):
            assert is_irreducible(cand)
            return cand
        index += 1


def find_root_in_extension(f: Poly, big: FieldCtx, seed: int = 0) -> Element:
    """A root of ``f`` in ``big``: minus the constant of the smallest linear factor over ``big``."""
    if f.degree < 1:
        raise PolyError("constant polynomial has no roots")
    if big.degree % (f.ctx.degree * f.degree):
        raise PolyError(f"degree {f.degree} does not divide the extension degree")
    lifted = Poly.from_list(big, [embed(c, big) for c in f.elements()])
    fac = factor_generic(lifted, seed)
    linear = [g for g in fac.factors if g.degree == 1]
    if not linear:
        raise PolyError(f"{f.to_text()} has no root in {big!r}")
    return -linear[0].coeff(0)
