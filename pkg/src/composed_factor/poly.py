"""Dense univariate polynomials over a field context.

A :class:`Poly` wraps a field context and a raw coefficient array (1-D over
prime/table fields, one row per coefficient over vector fields), lowest degree
first and trimmed.  Module-level functions implement the arithmetic that the
factorization code needs; the dunder methods are thin wrappers around them.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache

import numpy as np

from . import kernels as K
from .fastpoly import PrimeModulus
from .field import Element, FieldCtx, FieldError, PrimeField, SmallField, TableField
from .ntheory import divisors, factor_power_minus_one, factorint, order_from_factorization


class PolyError(ValueError):
    pass


class Poly:
    __slots__ = ("ctx", "coeffs", "_key")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs
        self._key = None

    # -- construction --------------------------------------------------------
    @classmethod
    def from_list(cls, ctx: FieldCtx, coeffs) -> "Poly":
        return cls(ctx, ctx.p_from(list(coeffs)))

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ctx.p_zero())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, ctx.p_const(ctx.one_value))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, ctx.p_from([0, 1]))

    @classmethod
    def monomial(cls, ctx, n: int, c=None):
        c = ctx.one_value if c is None else ctx.convert(c)
        return cls(ctx, ctx.p_from([0] * n + [Element(ctx, c)]))

    # -- basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        return self.ctx.p_deg(self.coeffs)

    def __len__(self) -> int:
        return self.degree + 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def coeff(self, i: int) -> Element:
        return Element(self.ctx, self.ctx.p_coeff(self.coeffs, i))

    def lc(self) -> Element:
        if self.is_zero():
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeff(self.degree)

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lc() == self.ctx.one

    def monic(self) -> "Poly":
        if self.is_monic():
            return self
        return Poly(self.ctx, self.ctx.p_scale(self.coeffs, self.ctx.inv(self.lc().value)))

    def weight(self) -> int:
        """Number of nonzero coefficients."""
        return sum(1 for c in self.ctx.p_scalar_list(self.coeffs) if not self.ctx.is_zero(c))

    def key(self) -> tuple:
        if self._key is None:
            self._key = self.ctx.p_key(self.coeffs)
        return self._key

    def sort_key(self) -> tuple:
        """Canonical order: degree, then coefficients from the constant term up."""
        return (self.degree, self.key())

    def elements(self) -> list[Element]:
        return [Element(self.ctx, c) for c in self.ctx.p_scalar_list(self.coeffs)]

    # -- dunder arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx is not self.ctx:
                raise FieldError("polynomials over different fields")
            return other
        if isinstance(other, (int, Element)):
            return Poly(self.ctx, self.ctx.p_const(self.ctx.convert(other) if isinstance(other, Element) else self.ctx.from_int(other)))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else sub(self, o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else sub(o, self)

    def __neg__(self):
        return Poly(self.ctx, self.ctx.p_neg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return scale(self, other)
        o = self._coerce(other)
        return o if o is NotImplemented else mul(self, o)

    __rmul__ = __mul__

    def __divmod__(self, other):
        return divrem(self, self._coerce(other))

    def __floordiv__(self, other):
        return divrem(self, self._coerce(other))[0]

    def __mod__(self, other):
        return rem(self, self._coerce(other))

    def __pow__(self, e: int):
        result = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x) -> Element:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return other.ctx is self.ctx and self.key() == other.key()
        if isinstance(other, int):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.key()))

    def __repr__(self) -> str:
        return f"Poly({self.to_text()} over {self.ctx!r})"

    def to_text(self) -> str:
        return format_poly(self)


# ------------------------------------------------------------ arithmetic ---


def _same(a: Poly, b: Poly) -> FieldCtx:
    if a.ctx is not b.ctx:
        raise FieldError("polynomials over different fields")
    return a.ctx


def add(a: Poly, b: Poly) -> Poly:
    ctx = _same(a, b)
    return Poly(ctx, ctx.p_add(a.coeffs, b.coeffs))


def sub(a: Poly, b: Poly) -> Poly:
    ctx = _same(a, b)
    return Poly(ctx, ctx.p_sub(a.coeffs, b.coeffs))


def mul(a: Poly, b: Poly) -> Poly:
    ctx = _same(a, b)
    return Poly(ctx, ctx.p_mul(a.coeffs, b.coeffs))


def scale(a: Poly, c) -> Poly:
    c = a.ctx.convert(c)
    return Poly(a.ctx, a.ctx.p_scale(a.coeffs, c))


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    ctx = _same(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    qt, r = ctx.p_divmod(a.coeffs, b.coeffs)
    return Poly(ctx, qt), Poly(ctx, r)


def rem(a: Poly, b: Poly) -> Poly:
    ctx = _same(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    return Poly(ctx, ctx.p_rem(a.coeffs, b.coeffs))


def exact_div(a: Poly, b: Poly) -> Poly:
    qt, r = divrem(a, b)
    if not r.is_zero():
        raise PolyError("division is not exact")
    return qt


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    ctx = _same(a, b)
    return Poly(ctx, ctx.p_gcd(a.coeffs, b.coeffs))


def powmod(base: Poly, e: int, m: Poly) -> Poly:
    ctx = _same(base, m)
    if e < 0:
        raise ValueError("negative exponent")
    if isinstance(ctx, PrimeField) and m.degree >= 256:
        return Poly(ctx, PrimeModulus(m.coeffs, ctx.p).pow(base.coeffs, e))
    return Poly(ctx, ctx.p_powmod(base.coeffs, e, m.coeffs))


def evaluate(f: Poly, x) -> Element:
    xv = f.ctx.convert(x)
    return Element(f.ctx, f.ctx.p_eval(f.coeffs, xv))


def derivative(f: Poly) -> Poly:
    ctx = f.ctx
    coeffs = ctx.p_scalar_list(f.coeffs)
    out = [ctx.mul(ctx.from_int(i), coeffs[i]) for i in range(1, len(coeffs))]
    return Poly(ctx, ctx.p_from([Element(ctx, c) for c in out]))


def compose_xn(f: Poly, n: int) -> Poly:
    """``f(x**n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    c = f.coeffs
    if f.is_zero():
        return f
    shape = ((len(c) - 1) * n + 1,) + c.shape[1:]
    out = np.zeros(shape, np.int64)
    out[::n] = c
    return Poly(f.ctx, out)


def substitute_scaled(f: Poly, c, t: int = 1) -> Poly:
    """``f(c * x**t)``: the coefficient of ``x**(t*i)`` is ``f_i * c**i``."""
    ctx = f.ctx
    cv = ctx.convert(c)
    coeffs = ctx.p_scalar_list(f.coeffs)
    out, power = [], ctx.one_value
    for ci in coeffs:
        out.append(ctx.mul(ci, power))
        power = ctx.mul(power, cv)
    g = Poly(ctx, ctx.p_from([Element(ctx, v) for v in out]))
    return compose_xn(g, t) if t > 1 else g


def frobenius_poly(f: Poly, steps: int = 1) -> Poly:
    """Raise every coefficient to the power ``|base|**steps`` (base = the field below)."""
    return Poly(f.ctx, f.ctx.p_frob(f.coeffs, steps))


def product(polys, ctx: FieldCtx) -> Poly:
    """Balanced product tree."""
    items = list(polys)
    if not items:
        return Poly.one(ctx)
    while len(items) > 1:
        nxt = [items[i] * items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def map_coeffs(f: Poly, target: FieldCtx, fn) -> Poly:
    """Apply ``fn`` (Element -> Element of ``target``) to every coefficient."""
    return Poly.from_list(target, [fn(c) for c in f.elements()])


# ------------------------------------------------------- irreducibility ----


def _xq_power_chain(f: Poly):
    """Yield ``x**(Q**i) mod f`` for i = 1, 2, ... with ``Q = |ctx|``."""
    ctx = f.ctx
    Q = ctx.order
    if isinstance(ctx, PrimeField):
        mod = PrimeModulus(f.coeffs, ctx.p)
        h = np.array([0, 1], np.int64) if f.degree > 1 else mod.rem(np.array([0, 1], np.int64))
        while True:
            h = mod.frobenius(h)
            yield Poly(ctx, h)
    else:
        h = Poly.x(ctx) % f
        while True:
            h = powmod(h, Q, f)
            yield h


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over the coefficient field of ``f``."""
    n = f.degree
    if n < 1:
        raise PolyError("irreducibility is undefined for constants")
    if n == 1:
        return True
    f = f.monic()
    x = Poly.x(f.ctx)
    # a root of a degree-n irreducible generates F_{Q^n}; repeated factors fail the gcd tests
    checks = {n // ell for ell in factorint(n)}
    chain = _xq_power_chain(f)
    for i in range(1, n + 1):
        h = next(chain)
        if i in checks and gcd(h - x, f).degree != 0:
            return False
    return ((h - x) % f).is_zero()


def poly_order(f: Poly) -> int:
    """Order of an irreducible ``f`` with ``f(0) != 0``: the multiplicative order of ``x`` mod ``f``."""
    if f.degree < 1:
        raise PolyError("order is undefined for constants")
    if f.coeff(0).is_zero():
        raise PolyError("x divides f; the order is undefined")
    if not is_irreducible(f):
        raise PolyError("poly_order is only defined here for irreducible polynomials")
    f = f.monic()
    if f.degree == 1:
        return (-f.coeff(0)).order()
    Q, k = f.ctx.order, f.degree
    group = Q**k - 1
    fac = factor_power_minus_one(Q, k)
    x = Poly.x(f.ctx)
    one = Poly.one(f.ctx)
    return order_from_factorization(x, one, fac, group, lambda a, e: powmod(a, e, f))


# ----------------------------------------------------------- cyclotomic ----


def cyclotomic(e: int, ctx: FieldCtx) -> Poly:
    """``Phi_e`` over ``ctx`` by exact division of ``x**e - 1`` by ``Phi_d``, ``d | e``, ``d < e``."""
    if e < 1:
        raise ValueError("e must be positive")
    if e % ctx.characteristic == 0:
        raise PolyError(f"characteristic {ctx.characteristic} divides {e}")
    return Poly.from_list(ctx, _cyclotomic_ints(e))


@lru_cache(maxsize=1024)
def _cyclotomic_ints(e: int) -> tuple[int, ...]:
    # integer coefficients; reduced into the field by the caller
    num = [-1] + [0] * (e - 1) + [1]
    for d in divisors(e)[:-1]:
        num = _int_exact_div(num, list(_cyclotomic_ints(d)))
    return tuple(num)


def _int_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] // b[-1]
        out[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a[:db]), "cyclotomic division must be exact"
    return out


# ------------------------------------------------------------ text form ----


def _format_scalar(ctx: FieldCtx, v) -> str:
    if isinstance(ctx, PrimeField):
        return str(int(v))
    parts = ctx.coeffs_of(v)
    return "[" + ",".join(_format_scalar(ctx.base, c) for c in parts) + "]"


def format_element(x: Element) -> str:
    return _format_scalar(x.ctx, x.value)


def format_poly(f: Poly) -> str:
    """Ascending comma-separated coefficients; ``0`` for the zero polynomial."""
    if f.is_zero():
        return "0"
    return ",".join(_format_scalar(f.ctx, c) for c in f.ctx.p_scalar_list(f.coeffs))


def _parse_scalar(ctx: FieldCtx, item):
    if isinstance(ctx, PrimeField):
        if isinstance(item, list):
            raise PolyError(f"expected an integer coefficient, got {item!r}")
        return int(item) % ctx.p
    if isinstance(item, int):
        return ctx.from_int(item)
    if len(item) > ctx.rel_degree:
        raise PolyError(f"coefficient {item!r} has too many entries for {ctx!r}")
    return ctx.convert([Element(ctx.base, _parse_scalar(ctx.base, c)) for c in item])


def parse_poly(text: str, ctx: FieldCtx) -> Poly:
    """Inverse of :func:`format_poly`; integers inside extension coefficients are base residues."""
    try:
        items = json.loads("[" + text.strip() + "]")
    except json.JSONDecodeError as exc:
        raise PolyError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
    if not all(isinstance(i, (int, list)) and not isinstance(i, bool) for i in items):
        raise PolyError(f"cannot parse polynomial {text!r}")
    return Poly.from_list(ctx, [Element(ctx, _parse_scalar(ctx, i)) for i in items])
