import cmath
import json
import math
import random

import pytest
from hypothesis import given, strategies as st

from collatz_poly.core import ALTERNATIVE, STANDARD, trajectory
from collatz_poly.errors import DegreeTooSmall, VariantUnsupported
from collatz_poly.polynomial import (
    build,
    evaluate_complex,
    evaluate_exact,
    from_dict,
    from_json,
    reciprocal,
    segment_evaluate,
    to_dict,
)


def test_build_examples():
    assert build(5).coeffs == (5, 8, 4, 2, 1)
    assert build(5, ALTERNATIVE).coeffs == (5, 16, 8, 4, 2, 1)
    p1 = build(1)
    assert p1.coeffs == (1,) and p1.degree == 0


@pytest.mark.parametrize("N", list(range(3, 300)) + [27, 97, 871])
@pytest.mark.parametrize("variant", [STANDARD, ALTERNATIVE])
def test_top_coefficients(N, variant):
    a = build(N, variant).coeffs
    assert a[0] == N and a[-1] == 1
    assert a[-2] == 2 and a[-3] == 4


def test_evaluate_exact_examples():
    assert evaluate_exact(build(5), -1) == 0
    assert evaluate_exact(build(2), -2) == 0
    assert evaluate_exact(build(5), 1) == 20


def test_evaluate_complex_examples():
    p = build(5)
    assert evaluate_complex(p, 0) == 5
    assert evaluate_complex(p, 1j) == pytest.approx(2 + 6j)
    assert evaluate_complex(p, 2) == pytest.approx(69)


def test_segment_evaluate_examples():
    assert segment_evaluate(trajectory(5), 1) == pytest.approx(20)
    assert abs(segment_evaluate(trajectory(2), -2)) < 1e-12
    assert segment_evaluate(trajectory(5), 0) == pytest.approx(5)
    # the removable singularity at z = 2 is handled
    assert segment_evaluate(trajectory(5), 2) == pytest.approx(69)
    with pytest.raises(VariantUnsupported):
        segment_evaluate(trajectory(5, ALTERNATIVE), 1)


def test_segment_identity_small_range():
    rng = random.Random(7)
    for N in range(2, 10_001, 7):
        traj = trajectory(N)
        p = build(N)
        for _ in range(20):
            z = 3 * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
            direct = evaluate_complex(p, z)
            assert abs(segment_evaluate(traj, z) - direct) <= 1e-10 * (1 + abs(direct))


def test_reciprocal_examples():
    assert reciprocal(build(5)) == [1, 2, 4, 8, 5]
    assert reciprocal(build(2)) == [1, 2]
    with pytest.raises(DegreeTooSmall):
        reciprocal(build(1))
    for N in range(2, 101):
        p = build(N)
        assert reciprocal(reciprocal(p)) == list(p.coeffs)


@given(st.integers(min_value=1, max_value=10**9))
def test_parity_link_and_positivity(N):
    p = build(N)
    odd = sum(a & 1 for a in p.coeffs)
    assert (evaluate_exact(p, -1) % 2 == 0) == (odd % 2 == 0)
    for k in range(0, 4):
        assert evaluate_exact(p, k) > 0


def test_json_round_trip_unbounded():
    p = build(2**100 + 7)
    d = json.loads(p.to_json())
    assert all(isinstance(c, str) for c in d["coeffs"])
    assert from_json(p.to_json()) == p
    assert from_dict(to_dict(build(5, ALTERNATIVE))) == build(5, ALTERNATIVE)
    assert to_dict(build(5)) == {"N": "5", "variant": "standard", "coeffs": ["5", "8", "4", "2", "1"]}


def test_callable_dispatch():
    p = build(5)
    assert p(-1) == 0
    assert p(0.5) == pytest.approx(evaluate_complex(p, 0.5))
