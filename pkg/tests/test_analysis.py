import pytest

from collatz_poly.analysis import (
    Predicate,
    holds,
    integer_root_flags,
    iter_search,
    run_suite,
    search,
    verify_fourn,
    verify_negoneroot,
)
from collatz_poly.core import odd_preimage, step, trajectory
from collatz_poly.errors import InvalidT, NoOddPreimage, PremiseFailed
from collatz_poly.polynomial import build, evaluate_exact


def brute_hits(lo, hi, z, even_only=False):
    return [N for N in range(lo, hi + 1) if (not even_only or N % 2 == 0) and evaluate_exact(build(N), z) == 0]


def test_flags_examples():
    f = integer_root_flags(5)
    assert f.root_at_minus_one and f.m_N == 2 and f.is_preimage_of_power_of_two
    f = integer_root_flags(2)
    assert f.root_at_minus_two and f.all_segments_even and not f.root_at_minus_one
    assert integer_root_flags(820569).root_at_minus_one


@pytest.mark.parametrize("t", range(3, 42, 2))
def test_negoneroot(t):
    assert verify_negoneroot(t)


@pytest.mark.parametrize("t", [0, 1, 2, 4, 10])
def test_negoneroot_rejects(t):
    with pytest.raises(InvalidT):
        verify_negoneroot(t)


def test_negoneroot_examples():
    assert odd_preimage(8) == 5 and odd_preimage(32) == 21
    assert trajectory(21).iterates == (21, 32, 16, 8, 4, 2, 1)


def test_fourn_examples():
    assert verify_fourn(8)
    assert verify_fourn(32)
    assert odd_preimage(128) == 85


@pytest.mark.parametrize("k", [1, 3, 5, 7, 9, 11])
def test_fourn_chain(k):
    N = 2**k * 615427
    x = odd_preimage(N)
    assert evaluate_exact(build(x), -1) == 0
    assert verify_fourn(N)


def test_fourn_errors():
    with pytest.raises(NoOddPreimage):
        verify_fourn(9)
    # c^-1(2) = 1 has P_1(-1) = 1
    with pytest.raises(PremiseFailed):
        verify_fourn(2)


def test_no_full_converse():
    # 820569 has root -1 although c(820569) = 2 * 615427 is not a power of two
    f = integer_root_flags(820569)
    assert f.root_at_minus_one and not f.is_preimage_of_power_of_two
    assert step(820569) == 2 * 615427


def test_search_small():
    assert search(1, 100, Predicate.MINUS_ONE_ROOT).hits == [5, 21, 85]


@pytest.mark.parametrize("pred,z,even", [
    ("minus-one", -1, False),
    ("minus-two", -2, False),
    ("even-minus-one", -1, True),
])
def test_search_matches_brute_force(pred, z, even):
    res = search(1, 6000, pred, chunk_size=777)
    assert res.hits == brute_hits(1, 6000, z, even)
    assert not res.exceeded


def test_search_independent_of_workers():
    ref = search(1, 200_000, "minus-one", workers=1, chunk_size=9_999)
    for w in (4, 16):
        res = search(1, 200_000, "minus-one", workers=w, chunk_size=9_999)
        assert res.hits == ref.hits and res.scanned == ref.scanned


def test_iter_search_ordered():
    chunks = list(iter_search(10, 1000, "minus-two", workers=2, chunk_size=100))
    assert [c.lo for c in chunks] == sorted(c.lo for c in chunks)
    assert chunks[0].lo == 10 and chunks[-1].hi == 1000


def test_search_budget_recorded():
    res = search(20, 30, "minus-one", max_steps=50)
    assert 27 in res.exceeded


def test_search_rejects_bad_range():
    with pytest.raises(ValueError):
        search(10, 5, "minus-one")
    with pytest.raises(ValueError):
        search(0, 5, "minus-one")


def test_predicate_parse():
    assert Predicate.parse("EvenWithMinusOneRoot") is Predicate.EVEN_WITH_MINUS_ONE_ROOT
    assert Predicate.parse("minus_two") is Predicate.MINUS_TWO_ROOT
    with pytest.raises(ValueError):
        Predicate.parse("minus-three")


def test_holds():
    assert holds(Predicate.EVEN_WITH_MINUS_ONE_ROOT, 46507804)
    assert not holds(Predicate.EVEN_WITH_MINUS_ONE_ROOT, 5)


@pytest.mark.parametrize("suite,hi", [
    ("minus-two-equivalence", 20000),
    ("parity", 20000),
    ("negoneroot", 20000),
    ("powbnd", 20000),
    ("nonreal", 600),
    ("bounds-containment", 600),
    ("alt-containment", 600),
    ("proposition", 600),
])
def test_suites_clean(suite, hi):
    res = run_suite(suite, hi)
    assert res.ok, res.to_dict()
    assert res.checked > 0


def test_suite_parallel_same():
    a = run_suite("parity", 5000, workers=1)
    b = run_suite("parity", 5000, workers=3)
    assert a.to_dict() == b.to_dict()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", 10)


@pytest.mark.slow
def test_parity_and_minus_two_to_1e5():
    for name in ("minus-two-equivalence", "parity"):
        assert run_suite(name, 100_000).ok
