"""Upper and lower bounds on the moduli of Collatz-polynomial roots.

Scalar equations (``x**(m-1) + x - 1`` and the Sun-Hsieh cubic) have proven
monotone brackets and are solved by bisection. Determinants of the
Kalantari matrices are exact integer determinants; only the final
``(k-1)``-th root is taken in floating point.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .core import ALTERNATIVE, STANDARD, Variant
from .errors import DegreeTooSmall, IndexOutOfRange, InvalidM, NotMonic
from .polynomial import CollatzPolynomial, _coeffs, build

#: Cap on the alternative-polynomial bound over every base t >= 3.
ALT_GLOBAL_CAP = 3.72444268658138218

#: Smallest base for which the closed-form upper bounds are proven.
PROVEN_MIN_T = 3


class FujiwaraMode(enum.Enum):
    HALVED = "halved"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class RmValue:
    m: int
    r: float


@lru_cache(maxsize=4096)
def _r_m(m: int) -> float:
    # f(x) = x**(m-1) + x - 1 is increasing on [1/2, 1) with f(1/2) <= 0 < f(1)
    e = m - 1
    lo, hi = 0.5, 1.0
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if mid**e + mid - 1.0 > 0.0:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    fx = x**e + x - 1.0
    dfx = e * x ** (e - 1) + 1.0
    polished = x - fx / dfx
    if lo <= polished <= hi:
        x = polished
    return x


def solve_r_m(m: int) -> RmValue:
    """Unique root of ``x**(m-1) + x - 1`` in ``[1/2, 1)``."""
    m = int(m)
    if m < 2:
        raise InvalidM(f"m must be >= 2, got {m}")
    return RmValue(m, _r_m(m))


def r_m(m: int) -> float:
    return solve_r_m(m).r


def in_proven_range(t: int) -> bool:
    return t >= PROVEN_MIN_T


def h_upper(t: int) -> float:
    """Closed-form root-modulus bound for a standard polynomial of base ``t``.

    Defined for every t >= 0; the bound is only proven for t >= 3 (see
    :func:`in_proven_range`).
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    e = t + 2
    return 2.0 / _r_m(t + 3) * (75.0 / 32.0 + 2.0**-e) ** (1.0 / e)


def alt_upper(t: int) -> float:
    """Bound for alternative polynomials; uses the fixed constant r_6 for every t."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    e = t + 2
    return 2.0 / _r_m(6) * (521.0 / 96.0 + 2.0 * 2.0**-e) ** (1.0 / e)


def lower_bound(N: int, variant: Variant = STANDARD) -> float:
    """Lower bound on the modulus of every root."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    variant = Variant.parse(variant)
    num = 2.0 if variant is STANDARD else 1.0
    # 1/N underflows gracefully to 0.0 for huge N
    return num / (3.0 * (1.0 + 1.0 / N))


def _ratio_root(num: int, den: int, i: int) -> float:
    """``|num/den| ** (1/i)`` without overflowing on huge integers."""
    num, den = abs(num), abs(den)
    if num == 0:
        return 0.0
    return math.exp((math.log(num) - math.log(den)) / i)


def fujiwara(coeffs, mode: FujiwaraMode = FujiwaraMode.HALVED) -> float:
    """Fujiwara-type bound ``max(max_i |a_(n-i)/a_n|**(1/i), const_term)``.

    ``HALVED`` uses ``|a_0/(2 a_n)|`` for the constant term; ``CLASSICAL`` uses
    ``|a_0/(2 a_n)|**(1/n)``.
    """
    a = _coeffs(coeffs)
    n = len(a) - 1
    if n < 1:
        raise DegreeTooSmall("Fujiwara bound needs degree >= 1")
    lead = a[n]
    if lead == 0:
        raise ValueError("leading coefficient is zero")
    mode = FujiwaraMode(mode)
    best = 0.0
    for i in range(1, n):
        best = max(best, _ratio_root(a[n - i], lead, i))
    if mode is FujiwaraMode.HALVED:
        const = abs(a[0]) / (2 * abs(lead))
    else:
        const = _ratio_root(a[0], 2 * lead, n)
    return max(best, float(const))


def sun_hsieh_d(a1: float, a2: float, amax: float, tol: float = 1e-12) -> float:
    """Positive root of ``x**3 + (2-a1) x**2 + (1-a1-a2) x - amax`` by bisection."""
    b, c = 2.0 - a1, 1.0 - a1 - a2

    def f(x):
        return ((x + b) * x + c) * x - amax

    lo, hi = 0.0, 1.0
    while f(hi) <= 0.0:
        lo, hi = hi, 2.0 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 4 * math.ulp(hi):
            break
    return 0.5 * (lo + hi)


def sun_hsieh(coeffs, tol: float = 1e-12) -> float:
    """Sun-Hsieh bound ``1 + d`` for a monic polynomial of degree >= 2."""
    a = _coeffs(coeffs)
    n = len(a) - 1
    if n < 2:
        raise DegreeTooSmall("Sun-Hsieh bound needs degree >= 2")
    if a[n] != 1:
        raise NotMonic("Sun-Hsieh bound is stated for monic polynomials")
    amax = max(abs(x) for x in a)
    return 1.0 + sun_hsieh_d(float(abs(a[n - 1])), float(abs(a[n - 2])), float(amax), tol)


def kalantari_matrix(coeffs, m: int, k: int) -> list[list[int]]:
    """The ``(m-1) x (m-1)`` matrix whose determinant enters ``U_m`` at index ``k``.

    Row i, column j < m-2 holds ``a_(n-1+i-j)``; the last column holds
    ``a_(n-k+1+i)``. Coefficient indices outside ``[0, n]`` read as 0.
    """
    a = _coeffs(coeffs)
    n = len(a) - 1
    if m < 2:
        raise InvalidM(f"m must be >= 2, got {m}")
    if not m <= k <= m + n - 1:
        raise IndexOutOfRange(f"k={k} outside [{m}, {m + n - 1}]")
    size = m - 1

    def coef(i):
        return a[i] if 0 <= i <= n else 0

    return [
        [coef(n - 1 + i - j) for j in range(size - 1)] + [coef(n - k + 1 + i)]
        for i in range(size)
    ]


def det_exact(M: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if A[i][i] == 0:
            for r in range(i + 1, n):
                if A[r][i] != 0:
                    A[i], A[r] = A[r], A[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = A[i][i]
        row_i = A[i]
        for r in range(i + 1, n):
            row_r = A[r]
            lead = row_r[i]
            for c in range(i + 1, n):
                row_r[c] = (row_r[c] * piv - lead * row_i[c]) // prev
            row_r[i] = 0
        prev = piv
    return sign * A[n - 1][n - 1]


def kalantari_terms(coeffs, m: int) -> list[tuple[int, int]]:
    """``(k, det)`` pairs for every k in ``[m, m+n-1]``."""
    a = _coeffs(coeffs)
    n = len(a) - 1
    return [(k, det_exact(kalantari_matrix(a, m, k))) for k in range(m, m + n)]


def kalantari_U(poly, m: int) -> float:
    """Determinantal bound ``max_k |det|**(1/(k-1)) / r_m`` for a monic polynomial."""
    a = _coeffs(poly)
    n = len(a) - 1
    if n < 1:
        raise DegreeTooSmall("U_m needs degree >= 1")
    rm = r_m(m)
    best = 0.0
    for k, d in kalantari_terms(a, m):
        best = max(best, _ratio_root(d, 1, k - 1))
    return best / rm


@dataclass
class BoundReport:
    N: int
    variant: Variant
    t: int
    degree: int
    proven_range: bool
    h_t: Optional[float]
    alt_upper: Optional[float]
    U_m_values: dict[int, float]
    fujiwara_halved: float
    fujiwara_classical: float
    sun_hsieh: Optional[float]
    lower: float
    empirical_max_modulus: Optional[float] = None
    empirical_min_modulus: Optional[float] = None
    containment: dict[str, bool] = field(default_factory=dict)

    def upper_bounds(self) -> dict[str, float]:
        out = {}
        if self.h_t is not None:
            out["h_t"] = self.h_t
        if self.alt_upper is not None:
            out["alt_upper"] = self.alt_upper
            out["alt_global_cap"] = ALT_GLOBAL_CAP
        for m, u in self.U_m_values.items():
            out[f"U_{m}"] = u
        out["fujiwara_halved"] = self.fujiwara_halved
        out["fujiwara_classical"] = self.fujiwara_classical
        if self.sun_hsieh is not None:
            out["sun_hsieh"] = self.sun_hsieh
        return out

    def theorem_violations(self) -> list[str]:
        """Failed containments among bounds that are stated as theorems.

        The two Fujiwara forms omit the classical factor 2 and are reported
        for comparison only; the closed-form bounds count only in their
        proven range of t.
        """
        skip = {"fujiwara_halved", "fujiwara_classical"}
        if not self.proven_range:
            skip |= {"h_t", "alt_upper", "alt_global_cap"}
        return [k for k, ok in self.containment.items() if not ok and k not in skip]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["N"] = str(self.N)
        d["variant"] = self.variant.value
        d["U_m_values"] = {str(m): u for m, u in self.U_m_values.items()}
        return d


def default_m_values(t: int) -> list[int]:
    return sorted({2, 3, t + 3})


def bound_report(
    N: int,
    variant: Variant = STANDARD,
    m_values: Optional[Iterable[int]] = None,
    with_roots: bool = False,
    max_steps: int = 10**6,
    rel_slack: float = 1e-9,
) -> BoundReport:
    """Every bound for ``P_N`` (or its alternative counterpart) in one record.

    With ``with_roots`` the polynomial is also solved numerically and each
    bound is checked against the empirical root moduli.
    """
    if N < 2:
        raise DegreeTooSmall("bound report needs N >= 2 (P_1 is constant)")
    variant = Variant.parse(variant)
    poly = build(N, variant, max_steps)
    a = poly.coeffs
    t = next(x.bit_length() - 1 for x in a if x & (x - 1) == 0)
    if m_values is None:
        m_values = default_m_values(t)
    report = BoundReport(
        N=N,
        variant=variant,
        t=t,
        degree=poly.degree,
        proven_range=in_proven_range(t),
        h_t=h_upper(t) if variant is STANDARD else None,
        alt_upper=alt_upper(t) if variant is ALTERNATIVE else None,
        U_m_values={m: kalantari_U(a, m) for m in sorted(set(m_values))},
        fujiwara_halved=fujiwara(a, FujiwaraMode.HALVED),
        fujiwara_classical=fujiwara(a, FujiwaraMode.CLASSICAL),
        sun_hsieh=sun_hsieh(a) if poly.degree >= 2 else None,
        lower=lower_bound(N, variant),
    )
    if with_roots:
        from .roots import find_roots

        rs = find_roots(poly)
        attach_roots(report, rs.max_modulus, rs.min_modulus, rel_slack)
    return report


def attach_roots(report: BoundReport, max_mod: float, min_mod: float, rel_slack: float = 1e-9) -> BoundReport:
    report.empirical_max_modulus = max_mod
    report.empirical_min_modulus = min_mod
    checks = {name: max_mod <= b * (1 + rel_slack) for name, b in report.upper_bounds().items()}
    checks["lower"] = min_mod >= report.lower - 1e-9
    report.containment = checks
    return report
