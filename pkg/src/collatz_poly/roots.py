"""Numerical roots of Collatz polynomials by Aberth-Ehrlich iteration."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .bounds import FujiwaraMode, fujiwara
from .errors import DegreeTooSmall, NoConvergence, VietaMismatch
from .polynomial import CollatzPolynomial, _coeffs

#: Phase of the first initial guess; irrational so guesses avoid symmetric stalls.
PHASE_OFFSET = (math.sqrt(5.0) - 1.0) / 2.0
CORRECTION_TOL = 1e-13
MAX_SWEEPS = 1000
RESIDUAL_TOL = 1e-9
COMPENSATED_DEGREE = 300
COMPENSATED_BITS = 500
_MAX_FLOAT_BITS = 1000


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    iterations: int
    converged: bool
    compensated: bool = False

    @property
    def max_modulus(self) -> float:
        return max(abs(z) for z in self.roots)

    @property
    def min_modulus(self) -> float:
        return min(abs(z) for z in self.roots)

    @property
    def degree(self) -> int:
        return len(self.roots)

    def sorted_roots(self) -> list[complex]:
        return sorted(self.roots, key=_sort_key)

    def to_dict(self) -> dict:
        order = sorted(range(len(self.roots)), key=lambda i: _sort_key(self.roots[i]))
        return {
            "roots": [[self.roots[i].real, self.roots[i].imag] for i in order],
            "residuals": [self.residuals[i] for i in order],
            "iterations": self.iterations,
            "converged": self.converged,
            "max_modulus": self.max_modulus,
            "min_modulus": self.min_modulus,
        }


def _sort_key(z: complex):
    return (round(abs(z), 12), round(cmath.phase(z), 12))


def _split_coeffs(a: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Ascending integer coefficients as (hi, lo) doubles with hi + lo ~ a."""
    bits = max(abs(x).bit_length() for x in a)
    shift = max(0, bits - _MAX_FLOAT_BITS)
    if shift:
        # a common power-of-two scale leaves the roots unchanged
        hi = np.array([float(Fraction(x, 1 << shift)) for x in a])
        if any(h == 0.0 and x != 0 for h, x in zip(hi, a)):
            raise OverflowError("coefficient range too wide for double precision")
        return hi, np.zeros_like(hi)
    hi = np.array([float(x) for x in a])
    lo = np.array([float(x - int(h)) for x, h in zip(a, hi)])
    return hi, lo


def initial_guesses(a: Sequence[int]) -> np.ndarray:
    n = len(a) - 1
    radius = fujiwara(a, FujiwaraMode.CLASSICAL)
    k = np.arange(n)
    return radius * np.exp(1j * (2.0 * np.pi * k / n + PHASE_OFFSET))


def scaled_residuals(a: Sequence[int], roots) -> list[float]:
    """``|p(z)| / sum |a_j| |z|**j`` for each root, evaluated overflow-free."""
    hi, lo = _split_coeffs(a)
    coeffs = hi + lo
    z = np.asarray(roots, dtype=complex)
    big = np.abs(z) > 1.0
    # reversed polynomial in 1/z outside the unit disc; |z|**n cancels
    w = np.where(big, 1.0 / np.where(big, z, 1.0), z)
    aw = np.abs(w)
    val = np.zeros(z.shape, dtype=complex)
    scale = np.zeros(z.shape)
    n = len(coeffs) - 1
    for j in range(n, -1, -1):
        c = np.where(big, coeffs[n - j], coeffs[j])
        val = val * w + c
        scale = scale * aw + np.abs(c)
    out = np.divide(np.abs(val), scale, out=np.zeros(z.shape), where=scale > 0)
    # a non-finite root never counts as converged
    out[~np.isfinite(z) | ~np.isfinite(out)] = np.inf
    return out.tolist()


def find_roots(
    p,
    tol: float = CORRECTION_TOL,
    max_sweeps: int = MAX_SWEEPS,
    residual_tol: float = RESIDUAL_TOL,
    compensated: Optional[bool] = None,
    backend=None,
    raise_on_failure: bool = False,
) -> RootSet:
    """All complex roots of a polynomial given by ascending coefficients.

    Guesses start equally spaced on a circle whose radius is the classical
    Fujiwara value; iteration stops once every correction is below ``tol``
    relative to its root, or after ``max_sweeps`` sweeps. The result is
    deterministic for a given polynomial and backend. ``converged`` is set
    when every scaled residual is within ``residual_tol``.
    """
    a = [int(x) for x in _coeffs(p)]
    n = len(a) - 1
    if n < 1:
        raise DegreeTooSmall("root finding needs degree >= 1")
    if a[-1] == 0:
        raise ValueError("leading coefficient is zero")
    if compensated is None:
        bits = max(abs(x).bit_length() for x in a)
        compensated = n > COMPENSATED_DEGREE or bits > COMPENSATED_BITS
    kern = _kernels if backend is None else backend
    if n == 1:
        roots = np.array([complex(-a[0] / a[1])])
        sweeps = 0
    else:
        hi, lo = _split_coeffs(a)
        roots, sweeps = kern.aberth(hi, lo, initial_guesses(a), tol, max_sweeps, compensated)
    roots = tuple(complex(z) for z in roots)
    res = scaled_residuals(a, roots)
    rs = RootSet(roots, tuple(res), int(sweeps), max(res) <= residual_tol, bool(compensated))
    if raise_on_failure and not rs.converged:
        raise NoConvergence(f"max scaled residual {max(res):.3e} after {sweeps} sweeps", rs)
    return rs


@dataclass(frozen=True)
class VietaReport:
    root_sum: complex
    expected_sum: float
    abs_product: float
    expected_abs_product: float
    sum_error: float
    product_error: float


def vieta_check(p, rs: RootSet, rel: float = 1e-8) -> VietaReport:
    """Compare the root sum and product modulus with the coefficients.

    For a monic polynomial the sum must be ``-a_(n-1)`` and the product
    modulus ``|a_0|``; raises :class:`VietaMismatch` beyond
    ``rel * degree`` and ``rel * |a_0|`` respectively.
    """
    a = _coeffs(p)
    n = len(a) - 1
    lead = a[n]
    expected_sum = -a[n - 1] / lead
    expected_prod = abs(a[0] / lead)
    root_sum = complex(sum(rs.roots))
    # product modulus via logs, immune to over/underflow
    log_prod = sum(math.log(abs(z)) for z in rs.roots)
    abs_prod = math.exp(log_prod)
    sum_err = abs(root_sum - expected_sum)
    prod_err = abs(abs_prod - expected_prod)
    report = VietaReport(root_sum, expected_sum, abs_prod, expected_prod, sum_err, prod_err)
    if sum_err > rel * n or prod_err > rel * expected_prod:
        raise VietaMismatch(sum_err, prod_err)
    return report


def has_nonreal_root(rs: RootSet, tol: float = 1e-7) -> bool:
    return any(abs(z.imag) > tol for z in rs.roots)
