"""Closed-form polynomial roots, used only as test oracles."""
import cmath
import itertools


def quadratic(b, c):
    """Roots of z**2 + b z + c."""
    d = cmath.sqrt(b * b - 4 * c)
    return [(-b + d) / 2, (-b - d) / 2]


def cubic(b, c, d):
    """Roots of z**3 + b z**2 + c z + d (Cardano)."""
    p = c - b * b / 3
    q = 2 * b**3 / 27 - b * c / 3 + d
    shift = -b / 3
    if abs(p) < 1e-300 and abs(q) < 1e-300:
        return [shift] * 3
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    u3 = -q / 2 + disc
    if abs(u3) < 1e-14:
        u3 = -q / 2 - disc
    u = u3 ** (1 / 3)
    w = complex(-0.5, 3**0.5 / 2)
    out = []
    for k in range(3):
        uk = u * w**k
        out.append(uk - p / (3 * uk) + shift)
    return out


def quartic(b, c, d, e):
    """Roots of z**4 + b z**3 + c z**2 + d z + e (Ferrari)."""
    p = c - 3 * b * b / 8
    q = b**3 / 8 - b * c / 2 + d
    r = -3 * b**4 / 256 + b * b * c / 16 - b * d / 4 + e
    shift = -b / 4
    if abs(q) < 1e-14:
        ys = []
        for s in quadratic(p, r):
            rt = cmath.sqrt(s)
            ys += [rt, -rt]
        return [y + shift for y in ys]
    # resolvent 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0, take a nonzero root
    m = max(cubic(p, p * p / 4 - r, -q * q / 8), key=abs)
    s2m = cmath.sqrt(2 * m)
    ys = []
    for s1 in (1, -1):
        inner = cmath.sqrt(-(2 * p + 2 * m + s1 * 2 * q / s2m))
        for s2 in (1, -1):
            ys.append((s1 * s2m + s2 * inner) / 2)
    return [y + shift for y in ys]


def closed_form_roots(coeffs):
    """Roots of a monic polynomial of degree 1..4 from ascending coefficients."""
    a = [complex(x) for x in coeffs]
    n = len(a) - 1
    assert a[n] == 1
    if n == 1:
        return [-a[0]]
    if n == 2:
        return quadratic(a[1], a[0])
    if n == 3:
        return cubic(a[2], a[1], a[0])
    if n == 4:
        return quartic(a[3], a[2], a[1], a[0])
    raise ValueError("degree must be 1..4")


def match_distance(xs, ys):
    """Smallest max-distance over all pairings of two equal-size root lists."""
    return min(max(abs(x - y) for x, y in zip(xs, perm)) for perm in itertools.permutations(ys))


def cofactor_det(M):
    """Laplace expansion along the first row; independent of Bareiss."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j, a in enumerate(M[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total
