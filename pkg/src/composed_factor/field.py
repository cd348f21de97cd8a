"""Finite fields: prime fields, small table-driven extensions and vector extensions.

A field context is immutable after construction.  Three concrete kinds exist:

``PrimeField``
    ``F_p``; elements are ints in ``[0, p)``.
``TableField``
    ``F_p[z]/(m)`` with at most ``TABLE_LIMIT`` elements; an element is the
    integer ``sum(c_i * p**i)`` of its coefficient vector and arithmetic goes
    through precomputed tables.
``VectorField``
    ``B[y]/(H)`` over a prime or table field ``B``; an element is a tuple of
    ``deg H`` encoded base elements.  Polynomials over it are 2-D arrays.

Coefficient vectors are always lowest degree first, and the canonical
enumeration order of a field is the order of these integer encodings
(constant coefficient varying fastest).
"""

from __future__ import annotations

import math
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Iterator, Sequence

import numpy as np

from . import kernels as K
from .ntheory import factor_power_minus_one, factorint, is_prime, order_from_factorization, smallest_divisor

if TYPE_CHECKING:
    from .poly import Poly

TABLE_LIMIT = 1024
PRIME_LIMIT = 1 << 31


class FieldError(ValueError):
    """Invalid field construction or cross-field operation."""


class NotInSubfieldError(FieldError):
    """The element is moved by the subfield's Frobenius map."""


class FieldCtx:
    """Common interface of all field contexts."""

    p: int
    order: int
    degree: int  # over the prime field
    base: "FieldCtx | None"
    modulus: "Poly | None"

    # -- tower ---------------------------------------------------------------
    @property
    def tower(self) -> list["FieldCtx"]:
        levels = [self]
        while levels[-1].base is not None:
            levels.append(levels[-1].base)
        return levels[::-1]

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def rel_degree(self) -> int:
        """Degree over the immediate base (1 for a prime field)."""
        return 1 if self.base is None else self.degree // self.base.degree

    @cached_property
    def group_order_factorization(self) -> dict[int, int]:
        return factor_power_minus_one(self.p, self.degree)

    def is_subfield_of(self, other: "FieldCtx") -> bool:
        return any(level is self for level in other.tower)

    # -- elements ------------------------------------------------------------
    def __call__(self, value) -> "Element":
        return Element(self, self.convert(value))

    @property
    def zero(self) -> "Element":
        return Element(self, self.zero_value)

    @property
    def one(self) -> "Element":
        return Element(self, self.one_value)

    def element_at(self, index: int) -> "Element":
        """Element with the given canonical enumeration index."""
        return Element(self, self.value_at(index))

    def elements(self) -> Iterator["Element"]:
        for i in range(self.order):
            yield self.element_at(i)

    def __len__(self) -> int:
        return self.order


class SmallField(FieldCtx):
    """Shared behaviour of prime and table fields (scalars are ints)."""

    fd: tuple
    zero_value = 0
    one_value = 1

    def value_at(self, index: int) -> int:
        if not 0 <= index < self.order:
            raise IndexError(index)
        return index

    # scalar arithmetic on encoded ints ---------------------------------------
    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def key(self, a) -> int:
        return int(a)

    # polynomial arithmetic on raw 1-D arrays --------------------------------
    def p_zero(self):
        return np.zeros(0, np.int64)

    def p_const(self, c):
        return np.array([c], np.int64) if c != 0 else self.p_zero()

    def p_from(self, coeffs):
        return K.trim(np.array([self.convert(c) for c in coeffs], dtype=np.int64).reshape(-1))

    def p_deg(self, a) -> int:
        return len(a) - 1

    def p_coeff(self, a, i):
        return int(a[i]) if 0 <= i < len(a) else 0

    def p_add(self, a, b):
        n = max(len(a), len(b))
        x = np.zeros(n, np.int64)
        y = np.zeros(n, np.int64)
        x[: len(a)] = a
        y[: len(b)] = b
        return K.trim(self.vadd(x, y))

    def p_neg(self, a):
        return self.vneg(a)

    def p_sub(self, a, b):
        return self.p_add(a, self.vneg(b))

    def p_scale(self, a, c):
        if c == 0:
            return self.p_zero()
        return K.trim(self.vmul(a, np.full(len(a), c, np.int64)))

    def p_mul(self, a, b):
        if (
            self.fd[1] is False
            and min(len(a), len(b)) > 384
            and (self.p - 1) ** 2 * min(len(a), len(b)) < 1 << 40
        ):
            return K.trim(_fft_mul_mod(a, b, self.p))
        if self.fd[1] is not False and len(a) * len(b) > 250_000 and min(len(a), len(b)) > 16:
            return K.trim(self._kronecker_mul(a, b))
        return K.trim(K.poly_mul(a, b, self.fd))

    def p_divmod(self, a, b):
        return K.poly_divmod(a, b, self.fd)

    def p_rem(self, a, b):
        return K.poly_rem(a, b, self.fd)

    def p_gcd(self, a, b):
        return K.poly_gcd(a, b, self.fd)

    def p_powmod(self, a, e, m):
        return K.trim(K.poly_powmod(a, e, m, self.fd))

    def p_eval(self, a, x):
        acc = 0
        for c in a[::-1]:
            acc = self.add(self.mul(acc, x), int(c))
        return acc

    def p_frob(self, a, steps=1):
        """Apply ``c -> c**(p**...)`` coefficient-wise; identity over ``F_q`` itself."""
        return a.copy()

    def p_key(self, a) -> tuple:
        return tuple(int(c) for c in a)

    def p_scalar_list(self, a) -> list:
        return [int(c) for c in a]


class PrimeField(SmallField):
    def __init__(self, p: int):
        if p < 2 or not is_prime(p):
            div = smallest_divisor(p) if p >= 2 else p
            raise FieldError(f"{p} is not prime (divisible by {div})")
        if p >= PRIME_LIMIT:
            raise FieldError(f"p = {p} is too large; kernels need p < 2^31")
        self.p = p
        self.order = p
        self.degree = 1
        self.base = None
        self.modulus = None
        self.fd = K.prime_fd(p)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def convert(self, value) -> int:
        if isinstance(value, Element):
            return _coerce_value(value, self)
        if isinstance(value, (list, tuple)):
            if len(value) != 1:
                raise FieldError(f"GF({self.p}) elements have one coefficient")
            value = value[0]
        return int(value) % self.p

    def coeffs_of(self, a) -> list[int]:
        return [a]

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def vadd(self, x, y):
        return (x + y) % self.p

    def vneg(self, x):
        return -x % self.p

    def vmul(self, x, y):
        return x * y % self.p

    def from_int(self, n: int) -> int:
        return n % self.p


class TableField(SmallField):
    """``F_p[z]/(m)`` with full arithmetic tables."""

    def __init__(self, base: PrimeField, modulus: "Poly"):
        self.p = base.p
        self.base = base
        self.modulus = modulus
        a = modulus.degree
        self.degree = a
        self.order = self.p**a
        q, p = self.order, self.p
        digits = np.zeros((q, a), np.int64)
        idx = np.arange(q)
        for i in range(a):
            digits[:, i] = idx // p**i % p
        self._digits = digits
        weights = p ** np.arange(a, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        mod = modulus.coeffs

        def mulmod(x, y):
            return K.poly_rem(K.trim(K.poly_mul(x, y, base.fd)), mod, base.fd)

        gen, exp_vals = None, None
        fac = factorint(q - 1)
        for cand in range(2 if q > 2 else 1, q):
            c = K.trim(digits[cand].copy())
            ok = True
            for ell in fac:
                r = K.trim(K.poly_powmod(c, (q - 1) // ell, mod, base.fd))
                if len(r) == 1 and r[0] == 1:
                    ok = False
                    break
            if ok:
                gen = c
                break
        assert gen is not None, "multiplicative group must be cyclic"
        exp_vals = np.zeros(q - 1, np.int64)
        cur = np.ones(1, np.int64)
        for i in range(q - 1):
            v = np.zeros(a, np.int64)
            v[: len(cur)] = cur
            exp_vals[i] = int(v @ weights)
            cur = mulmod(cur, gen)
        log = np.zeros(q, np.int64)
        log[exp_vals] = np.arange(q - 1)
        if len(set(exp_vals.tolist())) != q - 1:
            raise FieldError(f"modulus {modulus} is not irreducible")
        lx = log[:, None] + log[None, :]
        mul = exp_vals[lx % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        neg = ((-digits) % p) @ weights
        inv = np.zeros(q, np.int64)
        inv[1:] = exp_vals[(-log[1:]) % (q - 1)]
        self._add, self._mul, self._neg, self._inv = add, mul, neg, inv
        self._weights = weights
        self.fd = (p, True, add, mul, neg, inv)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"

    def convert(self, value) -> int:
        if isinstance(value, Element):
            return _coerce_value(value, self)
        if isinstance(value, (list, tuple, np.ndarray)):
            vals = [self.base.convert(v) for v in value]
            if len(vals) > self.degree:
                raise FieldError(f"too many coefficients for {self}")
            vals += [0] * (self.degree - len(vals))
            return int(np.array(vals, np.int64) @ self._weights)
        return int(value) % self.p

    def coeffs_of(self, a) -> list[int]:
        return [int(c) for c in self._digits[a]]

    @cached_property
    def _reduction(self):
        """Row j holds the digits of z**j mod the modulus, for j < 2*degree - 1."""
        a, p = self.degree, self.p
        R = np.zeros((2 * a - 1, a), np.int64)
        m = self.modulus.coeffs
        cur = np.zeros(a, np.int64)
        cur[0] = 1
        for j in range(2 * a - 1):
            R[j] = cur
            top = cur[-1]
            cur = np.concatenate(([0], cur[:-1]))
            cur = (cur - top * m[:a]) % p
        return R

    def _kronecker_mul(self, a, b):
        # pack digits with stride 2*deg-1, one F_p product, then fold each block
        from .fastpoly import fft_mul

        deg, p = self.degree, self.p
        w = 2 * deg - 1
        n, m = len(a), len(b)
        pa = np.zeros((n, w), np.int64)
        pa[:, :deg] = self._digits[a]
        pb = np.zeros((m, w), np.int64)
        pb[:, :deg] = self._digits[b]
        prod = fft_mul(pa.reshape(-1), pb.reshape(-1), p)
        full = np.zeros((n + m) * w, np.int64)
        full[: len(prod)] = prod
        blocks = full[: (n + m - 1) * w].reshape(n + m - 1, w)
        return ((blocks @ self._reduction) % p) @ self._weights

    def add(self, a, b):
        return int(self._add[a, b])

    def sub(self, a, b):
        return int(self._add[a, self._neg[b]])

    def neg(self, a):
        return int(self._neg[a])

    def mul(self, a, b):
        return int(self._mul[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._inv[a])

    def vadd(self, x, y):
        return self._add[x, y]

    def vneg(self, x):
        return self._neg[x]

    def vmul(self, x, y):
        return self._mul[x, y]

    def from_int(self, n: int) -> int:
        return n % self.p

    def p_frob(self, a, steps=1):
        # relative to this field's own base F_p the Frobenius is c -> c**p
        out = a.copy()
        for _ in range(steps % self.degree):
            out = np.array([self.pow(int(c), self.p) for c in out], np.int64)
        return out


class VectorField(FieldCtx):
    """``base[y]/(H)`` with elements stored as coefficient tuples over ``base``."""

    def __init__(self, base: SmallField, modulus: "Poly"):
        self.p = base.p
        self.base = base
        self.modulus = modulus
        self.D = modulus.degree
        self.degree = base.degree * self.D
        self.order = base.order**self.D
        self._H = modulus.coeffs
        self.zero_value = (0,) * self.D
        self.one_value = (1,) + (0,) * (self.D - 1)

    def __repr__(self) -> str:
        return f"{self.base!r}[y]/({self.modulus.to_text()})"

    # scalar encoding: tuples; arithmetic on 1-D arrays -----------------------
    def _arr(self, a):
        out = np.zeros(self.D, np.int64)
        a = np.asarray(a, dtype=np.int64)
        out[: len(a)] = a
        return out

    def _tup(self, arr) -> tuple:
        vals = arr.tolist() if isinstance(arr, np.ndarray) else [int(c) for c in arr]
        return tuple(vals) + (0,) * (self.D - len(vals))

    def convert(self, value) -> tuple:
        if isinstance(value, Element):
            return _coerce_value(value, self)
        if isinstance(value, (list, tuple, np.ndarray)):
            if len(value) > self.D:
                raise FieldError(f"too many coefficients for {self}")
            return self._tup([self.base.convert(v) for v in value])
        return self._tup([self.base.convert(value)])

    def coeffs_of(self, a) -> list:
        return list(a)

    def value_at(self, index: int) -> tuple:
        if not 0 <= index < self.order:
            raise IndexError(index)
        qb = self.base.order
        out = []
        for _ in range(self.D):
            index, r = divmod(index, qb)
            out.append(r)
        return tuple(out)

    def key(self, a) -> tuple:
        return tuple(a)

    def is_zero(self, a) -> bool:
        return not any(a)

    def add(self, a, b):
        return self._tup(self.base.vadd(self._arr(a), self._arr(b)))

    def sub(self, a, b):
        return self._tup(self.base.vadd(self._arr(a), self.base.vneg(self._arr(b))))

    def neg(self, a):
        return self._tup(self.base.vneg(self._arr(a)))

    def mul(self, a, b):
        x, y = K.trim(self._arr(a)), K.trim(self._arr(b))
        return self._tup(self.base.p_rem(self.base.p_mul(x, y), self._H))

    def inv(self, a):
        x = K.trim(self._arr(a))
        if len(x) == 0:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = _small_xgcd(self.base, x, self._H)
        if len(g) != 1:
            raise FieldError("modulus is not irreducible (non-invertible element)")
        return self._tup(self.base.p_scale(s, self.base.inv(int(g[0]))))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        x = K.trim(self._arr(a))
        return self._tup(self.base.p_powmod(x, e, self._H))

    def from_int(self, n: int) -> tuple:
        return self._tup([self.base.from_int(n)])

    # polynomial arithmetic on raw 2-D arrays (rows are elements) -------------
    def p_zero(self):
        return np.zeros((0, self.D), np.int64)

    def p_const(self, c):
        if self.is_zero(c):
            return self.p_zero()
        return self._arr(c)[None, :]

    def p_from(self, coeffs):
        rows = [self._arr(self.convert(c)) for c in coeffs]
        arr = np.array(rows, np.int64).reshape(-1, self.D)
        return _trim2(arr)

    def p_deg(self, a) -> int:
        return a.shape[0] - 1

    def p_coeff(self, a, i):
        return self._tup(a[i]) if 0 <= i < a.shape[0] else self.zero_value

    def p_add(self, a, b):
        n = max(a.shape[0], b.shape[0])
        x = np.zeros((n, self.D), np.int64)
        y = np.zeros((n, self.D), np.int64)
        x[: a.shape[0]] = a
        y[: b.shape[0]] = b
        return _trim2(self.base.vadd(x, y))

    def p_neg(self, a):
        return self.base.vneg(a)

    def p_sub(self, a, b):
        return self.p_add(a, self.base.vneg(b))

    def p_scale(self, a, c):
        if self.is_zero(c):
            return self.p_zero()
        return _trim2(np.array([self._arr(self.mul(self._tup(r), c)) for r in a], np.int64).reshape(-1, self.D))

    def p_mul(self, a, b):
        n, m = a.shape[0], b.shape[0]
        if n == 0 or m == 0:
            return self.p_zero()
        # Kronecker substitution into one base-field product
        w = 2 * self.D - 1
        pa = np.zeros(n * w, np.int64)
        pb = np.zeros(m * w, np.int64)
        for i in range(n):
            pa[i * w : i * w + self.D] = a[i]
        for j in range(m):
            pb[j * w : j * w + self.D] = b[j]
        prod = self.base.p_mul(K.trim(pa), K.trim(pb))
        full = np.zeros((n + m) * w, np.int64)
        full[: len(prod)] = prod
        blocks = full[: (n + m - 1) * w].reshape(n + m - 1, w)
        out = np.zeros((n + m - 1, self.D), np.int64)
        for i in range(n + m - 1):
            r = self.base.p_rem(K.trim(blocks[i].copy()), self._H)
            out[i, : len(r)] = r
        return _trim2(out)

    def p_divmod(self, a, b):
        if b.shape[0] == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = b.shape[0] - 1
        r = a.copy()
        if r.shape[0] <= db:
            return self.p_zero(), r
        quot = np.zeros((r.shape[0] - db, self.D), np.int64)
        li = self.inv(self._tup(b[db]))
        for i in range(r.shape[0] - 1, db - 1, -1):
            c = self._tup(r[i])
            if self.is_zero(c):
                continue
            c = self.mul(c, li)
            quot[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = self._arr(self.sub(self._tup(r[i - db + j]), self.mul(c, self._tup(b[j]))))
        return _trim2(quot), _trim2(r[:db])

    def p_rem(self, a, b):
        return self.p_divmod(a, b)[1]

    def p_gcd(self, a, b):
        x, y = a, b
        while y.shape[0]:
            x, y = y, self.p_rem(x, y)
        if x.shape[0] == 0:
            return x
        return self.p_scale(x, self.inv(self._tup(x[-1])))

    def p_powmod(self, a, e, m):
        result = self.p_const(self.one_value)
        base = self.p_rem(a, m)
        result = self.p_rem(result, m)
        for bit in bin(e)[2:] if e else "":
            result = self.p_rem(self.p_mul(result, result), m)
            if bit == "1":
                result = self.p_rem(self.p_mul(result, base), m)
        return result

    def p_eval(self, a, x):
        acc = self.zero_value
        for i in range(a.shape[0] - 1, -1, -1):
            acc = self.add(self.mul(acc, x), self._tup(a[i]))
        return acc

    def p_frob(self, a, steps=1):
        qb = self.base.order
        e = pow(qb, steps % self.D) if self.D > 1 else 1
        return np.array([self._arr(self.pow(self._tup(r), e)) for r in a], np.int64).reshape(-1, self.D)

    def p_key(self, a) -> tuple:
        return tuple(self._tup(r) for r in a)

    def p_scalar_list(self, a) -> list:
        return [self._tup(r) for r in a]


def _trim2(a):
    nz = np.flatnonzero(a.any(axis=1)) if a.shape[0] else []
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def _fft_mul_mod(a, b, p):
    n = len(a) + len(b) - 1
    size = 1 << (n - 1).bit_length()
    fa = np.fft.rfft(a.astype(np.float64), size)
    fb = np.fft.rfft(b.astype(np.float64), size)
    out = np.rint(np.fft.irfft(fa * fb, size)[:n]).astype(np.int64)
    return out % p


def _small_xgcd(F: SmallField, a, b):
    """Extended Euclid on raw arrays: returns ``(g, s, t)`` with ``s*a + t*b = g``."""
    r0, r1 = a, b
    s0, s1 = F.p_const(1), F.p_zero()
    t0, t1 = F.p_zero(), F.p_const(1)
    while len(r1):
        qt, r = F.p_divmod(r0, r1)
        r0, r1 = r1, K.trim(r)
        s0, s1 = s1, F.p_sub(s0, F.p_mul(qt, s1))
        t0, t1 = t1, F.p_sub(t0, F.p_mul(qt, t1))
    return r0, s0, t0


# ----------------------------------------------------------------- Element ---


class Element:
    """A field element: a context plus its encoded value."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> list:
        return self.ctx.coeffs_of(self.value)

    def _other(self, other):
        if isinstance(other, Element):
            if other.ctx is self.ctx:
                return other.value
            return self.ctx.convert(other)
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Element(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Element(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Element(self.ctx, self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Element(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.ctx, self.ctx.mul(self.value, self.ctx.inv(o)))

    def __neg__(self):
        return Element(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return Element(self.ctx, self.ctx.pow(self.value, int(e)))

    def inverse(self) -> "Element":
        return Element(self.ctx, self.ctx.inv(self.value))

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return other.ctx is self.ctx and self.ctx.key(self.value) == self.ctx.key(other.value)
        if isinstance(other, int):
            return self.ctx.key(self.value) == self.ctx.key(self.ctx.from_int(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.ctx.key(self.value)))

    def __repr__(self) -> str:
        if isinstance(self.ctx, PrimeField):
            return f"{self.value}"
        return f"[{','.join(str(c) for c in _flat_repr(self))}]"

    def order(self) -> int:
        return element_order(self)


def _flat_repr(x: Element) -> list:
    return x.coeffs


def _coerce_value(x: Element, target: FieldCtx):
    if x.ctx is target:
        return x.value
    if x.ctx.is_subfield_of(target):
        return embed(x, target).value
    return coerce_to_subfield(x, target).value


# ---------------------------------------------------------------- operations ---


def make_prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def make_extension(base: FieldCtx, modulus: "Poly") -> FieldCtx:
    """Extension ``base[y]/(modulus)``; the modulus must be monic and irreducible."""
    from .oracle import factor_generic
    from .poly import is_irreducible

    if modulus.ctx is not base:
        raise FieldError("modulus must be a polynomial over the base field")
    if modulus.degree < 2:
        raise FieldError("extension modulus must have degree >= 2")
    if not modulus.is_monic():
        raise FieldError("extension modulus must be monic")
    if not is_irreducible(modulus):
        fac = factor_generic(modulus).factors[0]
        raise FieldError(f"modulus {modulus.to_text()} is reducible: divisible by {fac.to_text()}")
    if isinstance(base, PrimeField) and base.p**modulus.degree <= TABLE_LIMIT:
        return TableField(base, modulus)
    if isinstance(base, SmallField):
        return VectorField(base, modulus)
    raise FieldError("extensions are supported over prime or table fields only")


def element_order(x: Element) -> int:
    if x.is_zero():
        raise ZeroDivisionError("zero has no multiplicative order")
    ctx = x.ctx
    return order_from_factorization(
        x, ctx.one, ctx.group_order_factorization, ctx.order - 1, lambda a, k: a**k
    )


def has_exact_order(y: Element, d: int) -> bool:
    if y ** d != y.ctx.one:
        return False
    return all(y ** (d // ell) != y.ctx.one for ell in factorint(d))


@lru_cache(maxsize=256)
def find_element_of_order(ctx: FieldCtx, d: int) -> Element:
    """First ``c**((|F|-1)/d)`` of exact order ``d`` over candidates in enumeration order."""
    if d < 1 or (ctx.order - 1) % d:
        raise FieldError(f"{d} does not divide |F*| = {ctx.order - 1}")
    ex = (ctx.order - 1) // d
    for i in range(1, ctx.order):
        y = ctx.element_at(i) ** ex
        if has_exact_order(y, d):
            return y
    raise AssertionError("cyclic group must contain an element of every order dividing it")


def frobenius(x: Element, steps: int = 1, q: int | None = None) -> Element:
    """``x ** (q ** steps)``; ``q`` defaults to the order of the immediate base field."""
    if q is None:
        q = x.ctx.base.order if x.ctx.base is not None else x.ctx.order
    e = pow(q, steps, x.ctx.order - 1) if x.ctx.order > 2 else 1
    if x.is_zero():
        return x
    return x ** (e or (x.ctx.order - 1))


def embed(x: Element, target: FieldCtx) -> Element:
    """Map an element of a tower level up into ``target``."""
    if x.ctx is target:
        return x
    chain = target.tower
    if not any(level is x.ctx for level in chain):
        raise FieldError(f"{x.ctx!r} is not a level of {target!r}")
    start = next(i for i, level in enumerate(chain) if level is x.ctx)
    val = x.value
    for level in chain[start + 1 :]:
        if isinstance(level, TableField):
            val = level.convert([val])
        else:
            val = level._tup([val])
    return Element(target, val)


def coerce_to_subfield(x: Element, target: FieldCtx) -> Element:
    """Represent ``x`` in the tower level ``target``; raise if it does not lie there."""
    if x.ctx is target:
        return x
    chain = x.ctx.tower
    if not any(level is target for level in chain):
        raise FieldError(f"{target!r} is not a level of {x.ctx!r}")
    ctx, val = x.ctx, x.value
    while ctx is not target:
        coeffs = ctx.coeffs_of(val)
        if any(not ctx.base.is_zero(c) for c in coeffs[1:]):
            raise NotInSubfieldError(f"{x!r} does not lie in {target!r}")
        val = coeffs[0]
        ctx = ctx.base
    return Element(target, val)


def trace_to_base(x: Element) -> Element:
    """Sum of the conjugates of ``x`` over the immediate base field."""
    acc = x.ctx.zero
    for j in range(x.ctx.rel_degree):
        acc = acc + frobenius(x, j)
    return acc
