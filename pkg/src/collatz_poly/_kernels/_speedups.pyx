# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_fallback``.

Trajectory values run in uint64 with an overflow guard; any N whose
trajectory would leave that range is handed to the Python fallback.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fma, fabs, sqrt

from . import _fallback

cnp.import_array()

cdef extern from *:
    ctypedef long long int128 "__int128"

ctypedef unsigned long long u64

MINUS_ONE = 0
MINUS_TWO = 1

cdef int C_MINUS_ONE = 0

# x + (x >> 1) + 1 == (3x+1)/2 stays below 2**64 for odd x under this limit
cdef u64 STD_LIMIT = 0xAAAAAAAAAAAAAAA8ULL
cdef u64 ALT_LIMIT = 0x5555555555555554ULL
cdef u64 MAX_INPUT = 0x7FFFFFFFFFFFFFFFULL

cdef enum Status:
    OK = 0
    BUDGET = 1
    OVERFLOW = 2


cdef inline int _next(u64 *x, bint alternative) noexcept nogil:
    cdef u64 v = x[0]
    if v & 1:
        if alternative:
            if v > ALT_LIMIT:
                return OVERFLOW
            x[0] = 3 * v + 1
        else:
            if v > STD_LIMIT:
                return OVERFLOW
            x[0] = v + (v >> 1) + 1
    else:
        x[0] = v >> 1
    return OK


cdef int _minus_one(u64 N, bint alternative, long long max_steps, int128 *out) noexcept nogil:
    cdef u64 x = N
    cdef int128 s = <int128>N
    cdef long long steps = 0
    cdef int sign = 1
    cdef int st
    while x != 1:
        if steps >= max_steps:
            return BUDGET
        st = _next(&x, alternative)
        if st != OK:
            return st
        sign = -sign
        if sign > 0:
            s += <int128>x
        else:
            s -= <int128>x
        steps += 1
    out[0] = s
    return OK


cdef int _minus_two(u64 N, bint alternative, long long max_steps, bint *out) noexcept nogil:
    cdef u64 x = N
    cdef int128 carry = 0
    cdef int128 d
    cdef bint ok = True
    cdef long long steps = 0
    cdef int st
    while x != 1:
        if steps >= max_steps:
            return BUDGET
        if ok:
            d = <int128>x - carry
            if d & 1:
                ok = False
            else:
                carry = d >> 1
        st = _next(&x, alternative)
        if st != OK:
            return st
        steps += 1
    out[0] = ok and carry == 1
    return OK


def minus_one_value(N, alternative=False, max_steps=10**6):
    cdef int128 s = 0
    cdef int st
    if N < 1 or N > MAX_INPUT:
        return _fallback.minus_one_value(N, alternative, max_steps)
    st = _minus_one(<u64>N, alternative, max_steps, &s)
    if st == BUDGET:
        return None
    if st == OVERFLOW:
        return _fallback.minus_one_value(N, alternative, max_steps)
    # |s| can exceed 64 bits only after an overflow hand-off, so this is safe
    if s >= 0:
        return int(<u64>s) if s <= <int128>0xFFFFFFFFFFFFFFFFULL else _fallback.minus_one_value(N, alternative, max_steps)
    if -s <= <int128>0xFFFFFFFFFFFFFFFFULL:
        return -int(<u64>(-s))
    return _fallback.minus_one_value(N, alternative, max_steps)


def minus_two_is_root(N, alternative=False, max_steps=10**6):
    cdef bint r = False
    cdef int st
    if N < 1 or N > MAX_INPUT:
        return _fallback.minus_two_is_root(N, alternative, max_steps)
    st = _minus_two(<u64>N, alternative, max_steps, &r)
    if st == BUDGET:
        return None
    if st == OVERFLOW:
        return _fallback.minus_two_is_root(N, alternative, max_steps)
    return bool(r)


def scan(start, stop, stride, predicate, alternative=False, max_steps=10**6):
    if start < 1 or stop - 1 > MAX_INPUT or stride < 1:
        return _fallback.scan(start, stop, stride, predicate, alternative, max_steps)
    cdef u64 N = start
    cdef u64 end = stop
    cdef u64 inc = stride
    cdef bint alt = alternative
    cdef long long budget = max_steps
    cdef int pred = predicate
    cdef int st
    cdef int128 s = 0
    cdef bint r = False
    hits = []
    exceeded = []
    while N < end:
        with nogil:
            # tight inner loop: run until something needs the interpreter
            while N < end:
                if pred == C_MINUS_ONE:
                    st = _minus_one(N, alt, budget, &s)
                    if st != OK or s == 0:
                        break
                else:
                    st = _minus_two(N, alt, budget, &r)
                    if st != OK or r:
                        break
                N += inc
        if N >= end:
            break
        if st == BUDGET:
            exceeded.append(N)
        elif st == OVERFLOW:
            if pred == MINUS_ONE:
                v = _fallback.minus_one_value(N, alternative, max_steps)
                hit = v == 0
            else:
                v = _fallback.minus_two_is_root(N, alternative, max_steps)
                hit = bool(v)
            if v is None:
                exceeded.append(N)
            elif hit:
                hits.append(N)
        else:
            hits.append(N)
        N += inc
    return hits, exceeded


# --- Aberth iteration --------------------------------------------------------

cdef struct dd:
    double hi
    double lo

cdef struct cdd:
    dd re
    dd im


cdef inline dd _fast_two_sum(double a, double b) noexcept nogil:
    cdef dd r
    r.hi = a + b
    r.lo = b - (r.hi - a)
    return r


cdef inline dd _dd_add(dd a, dd b) noexcept nogil:
    cdef double s = a.hi + b.hi
    cdef double bb = s - a.hi
    cdef double e = (a.hi - (s - bb)) + (b.hi - bb)
    return _fast_two_sum(s, e + (a.lo + b.lo))


cdef inline dd _dd_neg(dd a) noexcept nogil:
    a.hi = -a.hi
    a.lo = -a.lo
    return a


cdef inline dd _dd_mul_d(dd x, double y) noexcept nogil:
    cdef double p = x.hi * y
    cdef double e = fma(x.hi, y, -p)
    return _fast_two_sum(p, e + x.lo * y)


cdef inline cdd _cdd_mul(cdd x, double zr, double zi) noexcept nogil:
    cdef cdd r
    r.re = _dd_add(_dd_mul_d(x.re, zr), _dd_neg(_dd_mul_d(x.im, zi)))
    r.im = _dd_add(_dd_mul_d(x.re, zi), _dd_mul_d(x.im, zr))
    return r


cdef inline cdd _cdd_add(cdd a, cdd b) noexcept nogil:
    cdef cdd r
    r.re = _dd_add(a.re, b.re)
    r.im = _dd_add(a.im, b.im)
    return r


cdef void _horner_pd(const double *chi, const double *clo, Py_ssize_t n, bint reverse,
                     double complex z, bint compensated,
                     double complex *p, double complex *dp) noexcept nogil:
    """p and p' at z for ascending coefficients (or their reversal)."""
    cdef Py_ssize_t j, idx
    cdef double complex h, d
    cdef cdd H, D, C
    cdef double zr = z.real, zi = z.imag
    idx = 0 if reverse else n
    if not compensated:
        h = chi[idx]
        d = 0
        for j in range(n - 1, -1, -1):
            idx = n - j if reverse else j
            d = d * z + h
            h = h * z + chi[idx]
        p[0] = h
        dp[0] = d
        return
    H.re.hi = chi[idx]
    H.re.lo = clo[idx]
    H.im.hi = 0.0
    H.im.lo = 0.0
    D.re.hi = 0.0
    D.re.lo = 0.0
    D.im.hi = 0.0
    D.im.lo = 0.0
    C.im.hi = 0.0
    C.im.lo = 0.0
    for j in range(n - 1, -1, -1):
        idx = n - j if reverse else j
        D = _cdd_add(_cdd_mul(D, zr, zi), H)
        C.re.hi = chi[idx]
        C.re.lo = clo[idx]
        H = _cdd_add(_cdd_mul(H, zr, zi), C)
    p[0] = (H.re.hi + H.re.lo) + 1j * (H.im.hi + H.im.lo)
    dp[0] = (D.re.hi + D.re.lo) + 1j * (D.im.hi + D.im.lo)


cdef inline double _cabs(double complex z) noexcept nogil:
    cdef double a = fabs(z.real), b = fabs(z.imag), t
    if a < b:
        a, b = b, a
    if a == 0.0:
        return 0.0
    t = b / a
    return a * sqrt(1.0 + t * t)


cdef inline double complex _safe_div(double complex num, double complex den) noexcept nogil:
    if den != 0:
        return num / den
    if num != 0:
        return num * 1e-3 + 1e-3
    return 0


cdef double complex _newton_ratio(const double *chi, const double *clo, Py_ssize_t n,
                                  double complex z, bint compensated) noexcept nogil:
    cdef double complex p, dp, w
    if _cabs(z) > 1.0:
        w = 1.0 / z
        _horner_pd(chi, clo, n, True, w, compensated, &p, &dp)
        return _safe_div(z * p, n * p - w * dp)
    _horner_pd(chi, clo, n, False, z, compensated, &p, &dp)
    return _safe_div(p, dp)


def aberth(chi, clo, z0, double tol=1e-13, int max_iter=1000, bint compensated=False):
    cdef double[::1] hi = np.ascontiguousarray(chi, dtype=np.float64)
    cdef double[::1] lo = np.ascontiguousarray(clo, dtype=np.float64)
    zarr = np.array(z0, dtype=np.complex128)
    cdef double complex[::1] z = zarr
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t deg = hi.shape[0] - 1
    wbuf = np.zeros(n, dtype=np.complex128)
    abuf = np.ones(n, dtype=np.uint8)
    cdef double complex[::1] w = wbuf
    cdef unsigned char[::1] active = abuf
    cdef Py_ssize_t i, j, remaining
    cdef int sweeps = 0
    cdef double complex ratio, s, den
    with nogil:
        for sweeps in range(1, max_iter + 1):
            for i in range(n):
                if not active[i]:
                    continue
                ratio = _newton_ratio(&hi[0], &lo[0], deg, z[i], compensated)
                s = 0
                for j in range(n):
                    if j != i:
                        s = s + 1.0 / (z[i] - z[j])
                den = 1.0 - ratio * s
                w[i] = ratio / den if den != 0 else ratio
            remaining = 0
            for i in range(n):
                if not active[i]:
                    continue
                z[i] = z[i] - w[i]
                if _cabs(w[i]) <= tol * max(_cabs(z[i]), 1e-300):
                    active[i] = 0
                else:
                    remaining += 1
            if remaining == 0:
                break
    return zarr, sweeps
