"""Hot loops for dense polynomials and matrices over a small finite field.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with the same semantics.  ``COMPOSED_FACTOR_BACKEND=numpy`` (or a
missing numba install) selects the numpy path; :func:`use_backend` switches
at runtime for tests and benchmarks.

A small field is passed to the kernels as the tuple
``(p, tab, add, mul, neg, inv)``.  Prime fields use ``tab=False`` and plain
modular arithmetic; other small fields use full addition/multiplication
tables over the integer encoding of their elements.

Polynomials are 1-D ``int64`` arrays, lowest degree first, trimmed so the
last entry is nonzero (the zero polynomial is the empty array).
"""

from __future__ import annotations

import contextlib
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


_ENV = "COMPOSED_FACTOR_BACKEND"
_backend = os.environ.get(_ENV, "numba" if HAVE_NUMBA else "numpy").lower()
if _backend not in ("numba", "numpy"):
    raise ValueError(f"{_ENV} must be 'numba' or 'numpy', got {_backend!r}")
if _backend == "numba" and not HAVE_NUMBA:
    _backend = "numpy"

_EMPTY2 = np.zeros((1, 1), dtype=np.int64)
_EMPTY1 = np.zeros(1, dtype=np.int64)


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


@contextlib.contextmanager
def use_backend(name: str):
    old = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def prime_fd(p: int) -> tuple:
    return (p, False, _EMPTY2, _EMPTY2, _EMPTY1, _EMPTY1)


def trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    if n == 0 or a[n - 1] != 0:
        return a
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def exponent_bits(e: int) -> np.ndarray:
    return np.frombuffer(bin(e)[2:].encode(), dtype=np.uint8) - ord("0")


# ----------------------------------------------------------------- numba ---


@njit(cache=True)
def _nb_fmul(x, y, p, tab, mul):
    if tab:
        return mul[x, y]
    return x * y % p


@njit(cache=True)
def _nb_fsub(x, y, p, tab, add, neg):
    if tab:
        return add[x, neg[y]]
    return (x - y) % p


@njit(cache=True)
def _nb_finv(x, p, tab, inv):
    if tab:
        return inv[x]
    r, b, e = 1, x % p, p - 2
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _nb_trim_len(a, n):
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


@njit(cache=True)
def _nb_mul(a, b, p, tab, add, mul):
    n, m = a.shape[0], b.shape[0]
    if n == 0 or m == 0:
        return np.zeros(0, np.int64)
    out = np.zeros(n + m - 1, np.int64)
    if tab:
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(m):
                bj = b[j]
                if bj != 0:
                    out[i + j] = add[out[i + j], mul[ai, bj]]
        return out
    lim = (p - 1) * (p - 1)
    safe = lim == 0 or min(n, m) < (1 << 62) // lim
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(m):
            out[i + j] += ai * b[j]
        if not safe:
            for j in range(m):
                out[i + j] %= p
    for i in range(n + m - 1):
        out[i] %= p
    return out


@njit(cache=True)
def _nb_rem_inplace(r, nr, b, nz, p, tab, add, mul, neg, inv, quot):
    """Reduce r[:nr] modulo b in place; nz lists nonzero positions of b below its top.

    Writes quotient coefficients into ``quot`` when it is non-empty.  Over a
    prime field the entries are left unreduced (but nonnegative) until read,
    which is safe while nr * p**2 stays below 2**62.
    """
    db = b.shape[0] - 1
    lead_inv = _nb_finv(b[db], p, tab, inv)
    lazy = (not tab) and (p - 1) * (p - 1) < (1 << 62) // (nr + 1)
    for i in range(nr - 1, db - 1, -1):
        c = r[i]
        if lazy:
            c %= p
        if c == 0:
            r[i] = 0
            continue
        c = _nb_fmul(c, lead_inv, p, tab, mul)
        if quot.shape[0] > 0:
            quot[i - db] = c
        r[i] = 0
        base = i - db
        if lazy:
            mc = p - c
            for jj in range(nz.shape[0]):
                j = nz[jj]
                r[base + j] += mc * b[j]
        else:
            for jj in range(nz.shape[0]):
                j = nz[jj]
                r[base + j] = _nb_fsub(r[base + j], _nb_fmul(c, b[j], p, tab, mul), p, tab, add, neg)
    if lazy:
        for i in range(min(nr, db)):
            r[i] %= p
    return _nb_trim_len(r, min(nr, db))


@njit(cache=True)
def _nb_nonzero_below_top(b):
    cnt = 0
    for j in range(b.shape[0] - 1):
        if b[j] != 0:
            cnt += 1
    nz = np.empty(cnt, np.int64)
    k = 0
    for j in range(b.shape[0] - 1):
        if b[j] != 0:
            nz[k] = j
            k += 1
    return nz


@njit(cache=True)
def _nb_divmod(a, b, p, tab, add, mul, neg, inv):
    n, db = a.shape[0], b.shape[0] - 1
    if n <= db:
        return np.zeros(0, np.int64), a.copy()
    r = a.copy()
    quot = np.zeros(n - db, np.int64)
    nz = _nb_nonzero_below_top(b)
    nr = _nb_rem_inplace(r, n, b, nz, p, tab, add, mul, neg, inv, quot)
    return quot[: _nb_trim_len(quot, quot.shape[0])], r[:nr]


@njit(cache=True)
def _nb_rem(a, b, p, tab, add, mul, neg, inv):
    if a.shape[0] < b.shape[0]:
        return a.copy()
    r = a.copy()
    nz = _nb_nonzero_below_top(b)
    nr = _nb_rem_inplace(r, r.shape[0], b, nz, p, tab, add, mul, neg, inv, np.zeros(0, np.int64))
    return r[:nr]


@njit(cache=True)
def _nb_gcd(a, b, p, tab, add, mul, neg, inv):
    x = a.copy()
    y = b.copy()
    nx = _nb_trim_len(x, x.shape[0])
    ny = _nb_trim_len(y, y.shape[0])
    empty = np.zeros(0, np.int64)
    while ny > 0:
        yy = y[:ny]
        nz = _nb_nonzero_below_top(yy)
        nx = _nb_rem_inplace(x, nx, yy, nz, p, tab, add, mul, neg, inv, empty)
        x, y = y, x
        nx, ny = ny, nx
    if nx == 0:
        return np.zeros(0, np.int64)
    out = x[:nx].copy()
    li = _nb_finv(out[nx - 1], p, tab, inv)
    for i in range(nx):
        out[i] = _nb_fmul(out[i], li, p, tab, mul)
    return out


@njit(cache=True)
def _nb_powmod(a, bits, m, p, tab, add, mul, neg, inv):
    nz = _nb_nonzero_below_top(m)
    empty = np.zeros(0, np.int64)
    base = _nb_rem(a, m, p, tab, add, mul, neg, inv)
    res = np.ones(1, np.int64)
    for k in range(bits.shape[0]):
        sq = _nb_mul(res, res, p, tab, add, mul)
        nr = _nb_rem_inplace(sq, sq.shape[0], m, nz, p, tab, add, mul, neg, inv, empty)
        res = sq[:nr]
        if bits[k]:
            pr = _nb_mul(res, base, p, tab, add, mul)
            nr = _nb_rem_inplace(pr, pr.shape[0], m, nz, p, tab, add, mul, neg, inv, empty)
            res = pr[:nr]
    return res.copy()


@njit(cache=True)
def _nb_rref(M, p, tab, add, mul, neg, inv):
    rows, cols = M.shape
    pivots = np.empty(min(rows, cols), np.int64)
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                t = M[piv, j]
                M[piv, j] = M[rank, j]
                M[rank, j] = t
        li = _nb_finv(M[rank, c], p, tab, inv)
        for j in range(c, cols):
            M[rank, j] = _nb_fmul(M[rank, j], li, p, tab, mul)
        for r in range(rows):
            if r != rank:
                f = M[r, c]
                if f != 0:
                    for j in range(c, cols):
                        if M[rank, j] != 0:
                            M[r, j] = _nb_fsub(M[r, j], _nb_fmul(f, M[rank, j], p, tab, mul), p, tab, add, neg)
        pivots[rank] = c
        rank += 1
    return rank, pivots[:rank].copy()


# ----------------------------------------------------------------- numpy ---


def _np_fmul(x, y, p, tab, mul):
    return mul[x, y] if tab else x * y % p


def _np_fsub(x, y, p, tab, add, neg):
    return add[x, neg[y]] if tab else (x - y) % p


def _np_finv(x, p, tab, inv):
    return int(inv[x]) if tab else pow(int(x), p - 2, p)


def _np_mul(a, b, p, tab, add, mul):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, np.int64)
    if not tab:
        if (p - 1) ** 2 * min(len(a), len(b)) < 1 << 62:
            return np.convolve(a, b) % p
        out = np.convolve(a.astype(object), b.astype(object)) % p
        return out.astype(np.int64)
    prod = mul[a[:, None], b[None, :]]
    out = np.zeros(len(a) + len(b) - 1, np.int64)
    # accumulate anti-diagonals; each shifted row is folded in with the add table
    for i in range(len(a)):
        seg = out[i : i + len(b)]
        out[i : i + len(b)] = add[seg, prod[i]]
    return out


def _np_rem_core(a, b, p, tab, add, mul, neg, inv, want_quot):
    r = a.copy()
    db = len(b) - 1
    nz = np.flatnonzero(b[:-1])
    lead_inv = _np_finv(b[-1], p, tab, inv)
    quot = np.zeros(max(len(a) - db, 0), np.int64)
    bnz = b[nz]
    for i in range(len(a) - 1, db - 1, -1):
        c = int(r[i])
        if c == 0:
            continue
        c = int(_np_fmul(c, lead_inv, p, tab, mul))
        quot[i - db] = c
        r[i] = 0
        idx = nz + (i - db)
        r[idx] = _np_fsub(r[idx], _np_fmul(c, bnz, p, tab, mul), p, tab, add, neg)
    return trim(quot) if want_quot else None, trim(r[: min(len(r), db)])


def _np_divmod(a, b, p, tab, add, mul, neg, inv):
    if len(a) < len(b):
        return np.zeros(0, np.int64), a.copy()
    return _np_rem_core(a, b, p, tab, add, mul, neg, inv, True)


def _np_rem(a, b, p, tab, add, mul, neg, inv):
    if len(a) < len(b):
        return a.copy()
    return _np_rem_core(a, b, p, tab, add, mul, neg, inv, False)[1]


def _np_gcd(a, b, p, tab, add, mul, neg, inv):
    x, y = trim(a.copy()), trim(b.copy())
    while len(y):
        x, y = y, _np_rem(x, y, p, tab, add, mul, neg, inv)
    if len(x) == 0:
        return x
    li = _np_finv(x[-1], p, tab, inv)
    return _np_fmul(x, li, p, tab, mul).astype(np.int64)


def _np_powmod(a, bits, m, p, tab, add, mul, neg, inv):
    base = _np_rem(a, m, p, tab, add, mul, neg, inv)
    res = np.ones(1, np.int64)
    for bit in bits:
        res = _np_rem(_np_mul(res, res, p, tab, add, mul), m, p, tab, add, mul, neg, inv)
        if bit:
            res = _np_rem(_np_mul(res, base, p, tab, add, mul), m, p, tab, add, mul, neg, inv)
    return res


def _np_rref(M, p, tab, add, mul, neg, inv):
    rows, cols = M.shape
    pivots = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nzr = np.flatnonzero(M[rank:, c])
        if len(nzr) == 0:
            continue
        piv = rank + nzr[0]
        if piv != rank:
            M[[piv, rank]] = M[[rank, piv]]
        li = _np_finv(M[rank, c], p, tab, inv)
        M[rank] = _np_fmul(M[rank], li, p, tab, mul)
        f = M[:, c].copy()
        f[rank] = 0
        hit = np.flatnonzero(f)
        if len(hit):
            prod = _np_fmul(f[hit][:, None], M[rank][None, :], p, tab, mul)
            M[hit] = _np_fsub(M[hit], prod, p, tab, add, neg)
        pivots.append(c)
        rank += 1
    return rank, np.array(pivots, dtype=np.int64)


# ------------------------------------------------------------- dispatch ---

_IMPL = {
    "numba": dict(
        mul=_nb_mul, divmod=_nb_divmod, rem=_nb_rem, gcd=_nb_gcd, powmod=_nb_powmod, rref=_nb_rref
    ),
    "numpy": dict(
        mul=_np_mul, divmod=_np_divmod, rem=_np_rem, gcd=_np_gcd, powmod=_np_powmod, rref=_np_rref
    ),
}


def poly_mul(a, b, fd):
    p, tab, add, mul, _, _ = fd
    return _IMPL[_backend]["mul"](a, b, p, tab, add, mul)


def poly_divmod(a, b, fd):
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    return _IMPL[_backend]["divmod"](a, b, *fd)


def poly_rem(a, b, fd):
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    return _IMPL[_backend]["rem"](a, b, *fd)


def poly_gcd(a, b, fd):
    return _IMPL[_backend]["gcd"](a, b, *fd)


def poly_powmod(a, e: int, m, fd):
    if len(m) == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    if len(m) == 1:
        return np.zeros(0, np.int64)
    if e == 0:
        return np.ones(1, np.int64)
    return _IMPL[_backend]["powmod"](a, exponent_bits(e), m, *fd)


def rref(M, fd):
    """Row-reduce ``M`` in place; return ``(rank, pivot_columns)``."""
    return _IMPL[_backend]["rref"](M, *fd)
