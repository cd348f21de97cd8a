"""Fast multiplication and modular reduction for large polynomials over F_p.

Products go through a float64 FFT when every convolution entry stays far below
2**53; larger primes split coefficients into 16-bit halves first.  Reduction
modulo a fixed dense modulus uses a precomputed reversed inverse (Barrett),
while sparse moduli go through the kernel remainder, which only touches the
modulus' nonzero terms.
"""

from __future__ import annotations

import numpy as np

from . import kernels as K

FFT_MIN = 256  # below this the kernel schoolbook product is faster
SPARSE_TERMS = 40


def _fft_conv(a, b):
    n = len(a) + len(b) - 1
    size = 1 << (n - 1).bit_length()
    fa = np.fft.rfft(a.astype(np.float64), size)
    fb = np.fft.rfft(b.astype(np.float64), size)
    return np.rint(np.fft.irfft(fa * fb, size)[:n])


def fft_mul(a, b, p: int):
    """Exact product of two F_p polynomials (no trimming)."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, np.int64)
    bound = (p - 1) ** 2 * min(len(a), len(b))
    if bound < 1 << 44:
        return _fft_conv(a, b).astype(np.int64) % p
    if p < 1 << 31:
        lo_a, hi_a = a & 0xFFFF, a >> 16
        lo_b, hi_b = b & 0xFFFF, b >> 16
        ll = _fft_conv(lo_a, lo_b).astype(np.int64) % p
        hh = _fft_conv(hi_a, hi_b).astype(np.int64) % p
        mid = (_fft_conv(lo_a + hi_a, lo_b + hi_b).astype(np.int64) - ll - hh) % p
        s16 = (1 << 16) % p
        s32 = s16 * s16 % p
        return (ll + mid * s16 % p + hh * s32 % p) % p
    return K.poly_mul(a, b, K.prime_fd(p))


def mul(a, b, p: int):
    if min(len(a), len(b)) >= FFT_MIN:
        return K.trim(fft_mul(a, b, p))
    return K.trim(K.poly_mul(a, b, K.prime_fd(p)))


def series_inverse(a, n: int, p: int):
    """``a**-1 mod x**n`` for ``a[0] != 0`` by Newton iteration."""
    inv0 = pow(int(a[0]), -1, p)
    g = np.array([inv0], np.int64)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ag = mul(a[:prec], g, p)[:prec]
        # g <- g * (2 - a g)
        corr = np.zeros(prec, np.int64)
        corr[: len(ag)] = -ag % p
        corr[0] = (corr[0] + 2) % p
        g = mul(g, K.trim(corr), p)[:prec]
        g = np.concatenate([g, np.zeros(prec - len(g), np.int64)]) if len(g) < prec else g
    out = np.zeros(n, np.int64)
    out[: len(g)] = g[:n]
    return out


class PrimeModulus:
    """Arithmetic in ``F_p[x]/(m)`` for a fixed modulus ``m``."""

    def __init__(self, m, p: int):
        m = K.trim(np.asarray(m, np.int64))
        if len(m) < 2:
            raise ValueError("modulus must have positive degree")
        lc_inv = pow(int(m[-1]), -1, p)
        self.m = m * lc_inv % p
        self.p = p
        self.fd = K.prime_fd(p)
        self.deg = len(m) - 1
        self.sparse = np.count_nonzero(self.m) <= SPARSE_TERMS or self.deg < FFT_MIN
        if not self.sparse:
            rev = self.m[::-1].copy()
            self._inv_rev = series_inverse(rev, self.deg - 1 if self.deg > 1 else 1, p)

    def rem(self, a):
        a = K.trim(np.asarray(a, np.int64))
        if len(a) <= self.deg:
            return a
        if self.sparse or len(a) > 2 * self.deg - 1:
            return K.poly_rem(a, self.m, self.fd)
        D = self.deg
        L = len(a) - D  # quotient length
        ra = a[::-1][:L]
        qr = fft_mul(ra, self._inv_rev[:L], self.p)[:L] if L >= FFT_MIN else K.poly_mul(ra, self._inv_rev[:L], self.fd)[:L]
        quot = np.zeros(L, np.int64)
        quot[: len(qr)] = qr
        quot = quot[::-1].copy()
        prod = fft_mul(K.trim(quot), self.m, self.p) if L >= FFT_MIN else K.poly_mul(K.trim(quot), self.m, self.fd)
        r = (a[:D] - prod[:D]) % self.p if len(prod) >= D else a[:D].copy()
        if len(prod) < D:
            r[: len(prod)] = (r[: len(prod)] - prod) % self.p
        return K.trim(r)

    def mul(self, a, b):
        return self.rem(mul(a, b, self.p))

    def pow(self, a, e: int):
        if e == 0:
            return np.ones(1, np.int64)
        if self.deg < FFT_MIN:
            return K.trim(K.poly_powmod(a, e, self.m, self.fd))
        base = self.rem(a)
        res = np.ones(1, np.int64)
        for bit in bin(e)[2:]:
            res = self.mul(res, res)
            if bit == "1":
                res = self.mul(res, base)
        return res

    def frobenius(self, h):
        """``h**p`` for ``h`` over F_p; spread-and-reduce when the modulus is sparse."""
        if len(h) == 0:
            return h
        if not self.sparse:
            return self.pow(h, self.p)
        spread = np.zeros((len(h) - 1) * self.p + 1, np.int64)
        spread[:: self.p] = h
        return self.rem(spread)
