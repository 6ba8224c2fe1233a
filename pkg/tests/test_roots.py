import cmath
import math
import random

import numpy as np
import pytest

from collatz_poly import _kernels
from collatz_poly._kernels import _fallback
from collatz_poly.core import ALTERNATIVE, STANDARD
from collatz_poly.errors import DegreeTooSmall, NoConvergence, VietaMismatch
from collatz_poly.polynomial import build, evaluate_exact
from collatz_poly.roots import RootSet, find_roots, has_nonreal_root, scaled_residuals, vieta_check

from oracles import closed_form_roots, match_distance


def test_linear():
    rs = find_roots(build(2))
    assert rs.roots == (-2 + 0j,)
    assert not has_nonreal_root(rs)


def test_quadratic_collatz():
    rs = find_roots(build(4))
    expected = [-1 + 1j * math.sqrt(3), -1 - 1j * math.sqrt(3)]
    assert match_distance(list(rs.roots), expected) < 1e-12
    assert all(abs(abs(z) - 2) < 1e-12 for z in rs.roots)
    assert has_nonreal_root(rs)


def test_p5_has_minus_one():
    rs = find_roots(build(5))
    assert min(abs(z + 1) for z in rs.roots) < 1e-10
    assert evaluate_exact(build(5), -1) == 0


@pytest.mark.parametrize("N", [2, 4, 5, 8, 16])
def test_closed_form_collatz(N):
    p = build(N)
    assert p.degree <= 4
    rs = find_roots(p)
    assert match_distance(list(rs.roots), closed_form_roots(p.coeffs)) <= 1e-9


@pytest.mark.parametrize("seed", range(60))
def test_closed_form_random_monic(seed):
    rng = random.Random(seed)
    deg = 2 + seed % 3
    coeffs = [rng.randint(-20, 20) for _ in range(deg)] + [1]
    if coeffs[0] == 0:
        coeffs[0] = 3
    oracle = closed_form_roots(coeffs)
    rs = find_roots(coeffs)
    assert rs.converged
    assert match_distance(list(rs.roots), oracle) <= 1e-9 * max(1, max(abs(z) for z in oracle))


def test_vieta_examples():
    for N in (5, 27):
        p = build(N)
        v = vieta_check(p, find_roots(p))
        assert abs(v.root_sum + 2) <= 1e-8 * p.degree
        assert v.abs_product == pytest.approx(N, rel=1e-8)
    v = vieta_check(build(2), find_roots(build(2)))
    assert v.root_sum == -2 and v.abs_product == 2


def test_vieta_mismatch_raises():
    p = build(5)
    rs = find_roots(p)
    bad = RootSet(tuple(z * 1.01 for z in rs.roots), rs.residuals, rs.iterations, True)
    with pytest.raises(VietaMismatch):
        vieta_check(p, bad)


def test_degree_zero_rejected():
    with pytest.raises(DegreeTooSmall):
        find_roots(build(1))


def test_no_convergence_reports_best_effort():
    p = build(27)
    rs = find_roots(p, max_sweeps=1)
    assert not rs.converged and len(rs.roots) == p.degree
    with pytest.raises(NoConvergence) as exc:
        find_roots(p, max_sweeps=1, raise_on_failure=True)
    assert exc.value.rootset is not None


@pytest.mark.parametrize("variant", [STANDARD, ALTERNATIVE])
def test_structural_invariants(variant):
    for N in range(2, 1200):
        p = build(N, variant)
        rs = find_roots(p)
        assert rs.converged, N
        assert len(rs.roots) == p.degree
        assert max(rs.residuals) <= 1e-9
        # no root on or near the nonnegative real axis
        assert all(not (abs(z.imag) <= 1e-7 and z.real >= -1e-7) for z in rs.roots)
        # closed under conjugation
        conj = [z.conjugate() for z in rs.roots]
        assert max(min(abs(c - z) for z in rs.roots) for c in conj) <= 1e-9


def test_matches_companion_matrix():
    for N in (27, 97, 703, 3711):
        p = build(N)
        ours = sorted(find_roots(p).roots, key=lambda z: (round(abs(z), 6), round(cmath.phase(z), 6)))
        ref = sorted(np.roots(p.coeffs[::-1]), key=lambda z: (round(abs(z), 6), round(cmath.phase(z), 6)))
        assert max(abs(a - b) for a, b in zip(ours, ref)) < 1e-8


def test_deterministic():
    p = build(703)
    assert find_roots(p).roots == find_roots(p).roots


def test_compensated_path_large_degree():
    # 3x+1 stopping time of 63728127 is 949, far above the compensated threshold
    p = build(63728127)
    assert p.degree > 300
    rs = find_roots(p)
    assert rs.compensated and rs.converged
    v = vieta_check(p, rs)
    assert abs(v.root_sum + 2) < 1e-8 * p.degree


def test_huge_coefficients():
    # z**2 + 2**k has roots +-i 2**(k/2); k=600 is compensated, k=1100 also rescaled
    for k in (600, 1100):
        rs = find_roots([2**k, 0, 1])
        assert rs.compensated and rs.converged
        for z in rs.roots:
            assert abs(z.real) <= 1e-12 * 2 ** (k / 2)
            assert abs(abs(z.imag) / 2 ** (k / 2) - 1) <= 1e-12


@pytest.mark.skipif("cython" not in _kernels.backends(), reason="compiled kernels not built")
def test_backends_agree():
    for N in (5, 27, 97, 871, 6171):
        p = build(N)
        a = find_roots(p, backend=_kernels.backends()["cython"])
        b = find_roots(p, backend=_fallback)
        key = lambda z: (round(abs(z), 8), round(cmath.phase(z), 8))
        assert max(abs(x - y) for x, y in zip(sorted(a.roots, key=key), sorted(b.roots, key=key))) < 1e-10
        for comp in (True,):
            a = find_roots(p, backend=_kernels.backends()["cython"], compensated=comp)
            b = find_roots(p, backend=_fallback, compensated=comp)
            assert max(abs(x - y) for x, y in zip(sorted(a.roots, key=key), sorted(b.roots, key=key))) < 1e-10


def test_rootset_json_sorted():
    d = find_roots(build(5)).to_dict()
    mods = [math.hypot(*z) for z in d["roots"]]
    assert mods == sorted(mods)
    assert d["converged"] is True and len(d["roots"]) == 4


def test_nonfinite_roots_not_converged():
    res = scaled_residuals([1, 0, 1], [complex("nan+nanj"), 1j])
    assert res[0] == math.inf and res[1] == 0.0


def test_fallback_huge_coefficients():
    # the fallback's Dekker split must not overflow near the double range limit
    rs = find_roots([2**1100, 0, 1], backend=_fallback)
    assert rs.converged
    assert all(abs(abs(z.imag) / 2**550 - 1) <= 1e-12 for z in rs.roots)
