"""The compiled and pure-Python kernels must be interchangeable."""
import pytest

from collatz_poly import _kernels
from collatz_poly._kernels import MINUS_ONE, MINUS_TWO, _fallback
from collatz_poly.polynomial import build, evaluate_exact

BACKENDS = _kernels.backends()


@pytest.fixture(params=sorted(BACKENDS))
def kern(request):
    return BACKENDS[request.param]


def test_backend_selected():
    assert _kernels.BACKEND in ("cython", "python")


def test_minus_one_value_matches_exact(kern):
    for N in list(range(1, 3000)) + [820569, 6094358, 46507804, 63728127]:
        assert kern.minus_one_value(N) == evaluate_exact(build(N), -1)


def test_minus_two_matches_exact(kern):
    for N in range(1, 5000):
        assert kern.minus_two_is_root(N) == (evaluate_exact(build(N), -2) == 0)


def test_budget(kern):
    assert kern.minus_one_value(27, False, 10) is None
    assert kern.minus_two_is_root(27, False, 10) is None
    hits, exceeded = kern.scan(25, 30, 1, MINUS_ONE, False, 20)
    assert 27 in exceeded


def test_overflow_handoff(kern):
    # trajectory values above 2**64 force the compiled path back to Python ints
    N = 2**63 - 25
    assert kern.minus_one_value(N) == evaluate_exact(build(N), -1)
    big = 2**70 + 1
    assert kern.minus_one_value(big) == evaluate_exact(build(big), -1)
    assert kern.minus_two_is_root(N) == (evaluate_exact(build(N), -2) == 0)
    for k in (80, 81):
        assert kern.minus_two_is_root(2**k) == (k % 2 == 1)


def test_alternative_variant(kern):
    from collatz_poly.core import ALTERNATIVE

    for N in range(1, 500):
        assert kern.minus_one_value(N, True) == evaluate_exact(build(N, ALTERNATIVE), -1)


def test_scan_agrees_across_backends():
    ref = _fallback.scan(1, 20001, 1, MINUS_ONE)
    for kern in BACKENDS.values():
        assert kern.scan(1, 20001, 1, MINUS_ONE) == ref
        assert kern.scan(2, 20001, 2, MINUS_ONE) == _fallback.scan(2, 20001, 2, MINUS_ONE)
        assert kern.scan(1, 20001, 1, MINUS_TWO) == _fallback.scan(1, 20001, 1, MINUS_TWO)
