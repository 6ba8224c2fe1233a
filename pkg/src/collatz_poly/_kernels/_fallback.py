"""Pure-Python/NumPy implementations of the hot kernels.

Used when the compiled ``_speedups`` extension is unavailable, or when
``COLLATZ_POLY_PURE=1`` is set. The compiled module mirrors these functions
one for one.
"""
import numpy as np

MINUS_ONE = 0
MINUS_TWO = 1


def minus_one_value(N, alternative=False, max_steps=10**6):
    """Alternating sum of the trajectory of N, i.e. P_N(-1); None on budget overrun."""
    x = N
    s = N
    sign = 1
    steps = 0
    while x != 1:
        if steps >= max_steps:
            return None
        if x & 1:
            x = 3 * x + 1 if alternative else (3 * x + 1) >> 1
        else:
            x >>= 1
        sign = -sign
        s += x if sign > 0 else -x
        steps += 1
    return s


def minus_two_is_root(N, alternative=False, max_steps=10**6):
    """Whether P_N(-2) == 0, via a bounded carry instead of powers of -2.

    With v_j = sum_{i>=j} a_i (-2)**(i-j) we need v_0 == 0; v_j = a_j - 2 v_(j+1)
    fixes the carry v_(j+1) = (a_j - v_j) / 2, which must be integral and end
    equal to a_n = 1. None on budget overrun.
    """
    x = N
    carry = 0
    ok = True
    steps = 0
    while x != 1:
        if steps >= max_steps:
            return None
        if ok:
            d = x - carry
            if d & 1:
                ok = False
            else:
                carry = d >> 1
        if x & 1:
            x = 3 * x + 1 if alternative else (3 * x + 1) >> 1
        else:
            x >>= 1
        steps += 1
    return ok and carry == 1


def scan(start, stop, stride, predicate, alternative=False, max_steps=10**6):
    """Test ``range(start, stop, stride)`` against a predicate.

    Returns ``(hits, exceeded)``: the N where the predicate holds and the N
    whose trajectory overran the budget, both ascending.
    """
    hits = []
    exceeded = []
    for N in range(start, stop, stride):
        if predicate == MINUS_ONE:
            v = minus_one_value(N, alternative, max_steps)
            if v is None:
                exceeded.append(N)
            elif v == 0:
                hits.append(N)
        else:
            v = minus_two_is_root(N, alternative, max_steps)
            if v is None:
                exceeded.append(N)
            elif v:
                hits.append(N)
    return hits, exceeded


# --- double-double helpers (vectorised) -------------------------------------

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


_SPLIT_BIG = 2.0**995


def _split(a):
    # pre-scale huge values by 2**-28 so SPLIT * a cannot overflow; exact
    scale = np.where(np.abs(a) > _SPLIT_BIG, 2.0**-28, 1.0)
    b = a * scale
    c = _SPLIT * b
    hi = (c - (c - b)) / scale
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    return _fast_two_sum(s, e + (al + bl))


def _dd_mul_d(xh, xl, y):
    p, e = _two_prod(xh, y)
    return _fast_two_sum(p, e + xl * y)


def _cdd_mul(x, zr, zi):
    rh, rl, ih, il = x
    ah, al = _dd_mul_d(rh, rl, zr)
    bh, bl = _dd_mul_d(ih, il, zi)
    re = _dd_add(ah, al, -bh, -bl)
    ch, cl = _dd_mul_d(rh, rl, zi)
    dh, dl = _dd_mul_d(ih, il, zr)
    im = _dd_add(ch, cl, dh, dl)
    return re[0], re[1], im[0], im[1]


def _horner_pd(chi, clo, z, compensated):
    """p(z) and p'(z) for ascending real coefficients at an array of points."""
    n = len(chi) - 1
    if not compensated:
        h = np.full(z.shape, chi[n], dtype=complex)
        d = np.zeros(z.shape, dtype=complex)
        for j in range(n - 1, -1, -1):
            d = d * z + h
            h = h * z + chi[j]
        return h, d
    zr, zi = z.real, z.imag
    zero = np.zeros(z.shape)
    h = (np.full(z.shape, chi[n]), np.full(z.shape, clo[n]), zero, zero)
    d = (zero, zero, zero, zero)
    for j in range(n - 1, -1, -1):
        dm = _cdd_mul(d, zr, zi)
        re = _dd_add(dm[0], dm[1], h[0], h[1])
        im = _dd_add(dm[2], dm[3], h[2], h[3])
        d = (re[0], re[1], im[0], im[1])
        hm = _cdd_mul(h, zr, zi)
        re = _dd_add(hm[0], hm[1], chi[j], clo[j])
        h = (re[0], re[1], hm[2], hm[3])
    return (h[0] + h[1]) + 1j * (h[2] + h[3]), (d[0] + d[1]) + 1j * (d[2] + d[3])


def newton_ratio(chi, clo, z, compensated=False):
    """p(z)/p'(z), evaluating the reversed polynomial in 1/z where |z| > 1."""
    n = len(chi) - 1
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    big = np.abs(z) > 1.0
    small = ~big
    if small.any():
        zs = z[small]
        p, dp = _horner_pd(chi, clo, zs, compensated)
        out[small] = _safe_div(p, dp)
    if big.any():
        zb = z[big]
        w = 1.0 / zb
        q, dq = _horner_pd(chi[::-1], clo[::-1], w, compensated)
        out[big] = _safe_div(zb * q, n * q - w * dq)
    return out


def _safe_div(num, den):
    out = np.zeros(num.shape, dtype=complex)
    ok = den != 0
    out[ok] = num[ok] / den[ok]
    # stationary point away from a root: nudge by the residual itself
    bad = ~ok & (num != 0)
    out[bad] = num[bad] * 1e-3 + 1e-3
    return out


def aberth(chi, clo, z0, tol=1e-13, max_iter=1000, compensated=False):
    """Aberth-Ehrlich simultaneous iteration (Jacobi ordering).

    ``chi``/``clo`` are the ascending coefficients split into high and low
    double parts (``clo`` is only read when ``compensated``). A root stops
    moving once its correction is at most ``tol`` relative to its modulus.
    Returns ``(roots, sweeps)``.
    """
    chi = np.ascontiguousarray(chi, dtype=float)
    clo = np.ascontiguousarray(clo, dtype=float)
    z = np.array(z0, dtype=complex)
    n = len(z)
    active = np.ones(n, dtype=bool)
    sweeps = 0
    for sweeps in range(1, max_iter + 1):
        idx = np.nonzero(active)[0]
        za = z[idx]
        ratio = newton_ratio(chi, clo, za, compensated)
        diff = za[:, None] - z[None, :]
        diff[np.arange(len(idx)), idx] = np.inf
        s = (1.0 / diff).sum(axis=1)
        den = 1.0 - ratio * s
        w = np.where(den != 0, ratio / np.where(den != 0, den, 1.0), ratio)
        znew = za - w
        z[idx] = znew
        done = np.abs(w) <= tol * np.maximum(np.abs(znew), 1e-300)
        active[idx[done]] = False
        if not active.any():
            break
    return z, sweeps
