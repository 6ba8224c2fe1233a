"""Integer roots of Collatz polynomials: exact checks, range searches and
exhaustive verification suites."""
from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import _kernels
from .core import DEFAULT_MAX_STEPS, STANDARD, Variant, odd_preimage, trajectory
from .errors import BudgetExceeded, InvalidT, NoOddPreimage, PremiseFailed
from .polynomial import build, evaluate_exact, from_trajectory

DEFAULT_CHUNK = 250_000


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@dataclass(frozen=True)
class IntegerRootFlags:
    N: int
    root_at_minus_one: bool
    root_at_minus_two: bool
    m_N: int
    all_segments_even: bool
    is_preimage_of_power_of_two: bool


def integer_root_flags(N: int, max_steps: int = DEFAULT_MAX_STEPS) -> IntegerRootFlags:
    traj = trajectory(N, STANDARD, max_steps)
    p = from_trajectory(traj)
    return IntegerRootFlags(
        N=N,
        root_at_minus_one=evaluate_exact(p, -1) == 0,
        root_at_minus_two=evaluate_exact(p, -2) == 0,
        m_N=traj.m,
        all_segments_even=all(seg.length % 2 == 0 for seg in traj.segments),
        is_preimage_of_power_of_two=(
            N & 1 == 1 and traj.n >= 1 and not _is_power_of_two(N) and _is_power_of_two(traj.iterates[1])
        ),
    )


def verify_negoneroot(t: int, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """Check that the odd preimage of ``2**t`` has -1 as a root."""
    if t < 3 or t % 2 == 0:
        raise InvalidT(f"t must be odd and >= 3, got {t}")
    N = odd_preimage(2**t)
    p = build(N, STANDARD, max_steps)
    return evaluate_exact(p, -1) == 0


def verify_fourn(N: int, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """If the odd preimage of N has root -1, check the odd preimage of 4N does too."""
    x = odd_preimage(N)
    if x is None:
        raise NoOddPreimage(f"{N} has no odd preimage ({N} mod 3 != 2)")
    if evaluate_exact(build(x, STANDARD, max_steps), -1) != 0:
        raise PremiseFailed(f"P_{x}(-1) != 0")
    y = odd_preimage(4 * N)
    return evaluate_exact(build(y, STANDARD, max_steps), -1) == 0


class Predicate(enum.Enum):
    MINUS_ONE_ROOT = "minus-one"
    MINUS_TWO_ROOT = "minus-two"
    EVEN_WITH_MINUS_ONE_ROOT = "even-minus-one"

    @classmethod
    def parse(cls, value) -> "Predicate":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "minusoneroot": cls.MINUS_ONE_ROOT,
            "minustworoot": cls.MINUS_TWO_ROOT,
            "evenwithminusoneroot": cls.EVEN_WITH_MINUS_ONE_ROOT,
        }
        for p in cls:
            if p.value == key:
                return p
        try:
            return aliases[key.replace("-", "")]
        except KeyError:
            raise ValueError(f"unknown predicate {value!r}") from None


def holds(pred: Predicate, N: int, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """Re-check a predicate through the full polynomial."""
    p = build(N, STANDARD, max_steps)
    if pred is Predicate.MINUS_TWO_ROOT:
        return evaluate_exact(p, -2) == 0
    if pred is Predicate.EVEN_WITH_MINUS_ONE_ROOT and N % 2:
        return False
    return evaluate_exact(p, -1) == 0


@dataclass
class SearchResult:
    lo: int
    hi: int
    predicate_name: str
    hits: list[int] = field(default_factory=list)
    scanned: int = 0
    elapsed: float = 0.0
    exceeded: list[int] = field(default_factory=list)

    @property
    def range(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def summary(self) -> dict:
        return {
            "type": "summary",
            "range": [self.lo, self.hi],
            "predicate": self.predicate_name,
            "hits": len(self.hits),
            "scanned": self.scanned,
            "budget_exceeded": self.exceeded,
            "elapsed": round(self.elapsed, 3),
        }


@dataclass(frozen=True)
class ChunkResult:
    lo: int
    hi: int
    scanned: int
    hits: list[int]
    exceeded: list[int]


def _plan(lo: int, hi: int, pred: Predicate) -> tuple[int, int]:
    if pred is Predicate.EVEN_WITH_MINUS_ONE_ROOT:
        return (lo + (lo & 1), 2)
    return (lo, 1)


def _scan_chunk(args) -> ChunkResult:
    lo, hi, pred_value, max_steps = args
    pred = Predicate(pred_value)
    start, stride = _plan(lo, hi, pred)
    code = _kernels.MINUS_TWO if pred is Predicate.MINUS_TWO_ROOT else _kernels.MINUS_ONE
    hits, exceeded = _kernels.scan(start, hi + 1, stride, code, False, max_steps)
    scanned = len(range(start, hi + 1, stride))
    return ChunkResult(lo, hi, scanned, list(hits), list(exceeded))


def _chunks(lo: int, hi: int, size: int):
    a = lo
    while a <= hi:
        b = min(hi, a + size - 1)
        yield a, b
        a = b + 1


def iter_search(
    lo: int,
    hi: int,
    predicate,
    workers: int = 1,
    max_steps: int = DEFAULT_MAX_STEPS,
    chunk_size: int = DEFAULT_CHUNK,
    verify_hits: bool = True,
) -> Iterator[ChunkResult]:
    """Scan ``[lo, hi]`` chunk by chunk, yielding results in ascending order."""
    if lo < 1 or lo > hi:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    pred = Predicate.parse(predicate)
    jobs = [(a, b, pred.value, max_steps) for a, b in _chunks(lo, hi, chunk_size)]
    if workers == 1 or len(jobs) == 1:
        results = map(_scan_chunk, jobs)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_scan_chunk, jobs)
    try:
        for res in results:
            if verify_hits:
                for N in res.hits:
                    if not holds(pred, N, max_steps):
                        raise AssertionError(f"kernel hit {N} failed re-verification for {pred.value}")
            yield res
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


def search(
    lo: int,
    hi: int,
    predicate,
    workers: int = 1,
    max_steps: int = DEFAULT_MAX_STEPS,
    chunk_size: int = DEFAULT_CHUNK,
) -> SearchResult:
    """Every N in ``[lo, hi]`` satisfying the predicate, ascending.

    The result does not depend on ``workers``. Trajectories that exceed the
    budget are listed in ``exceeded`` and do not abort the scan.
    """
    pred = Predicate.parse(predicate)
    out = SearchResult(lo, hi, pred.value)
    t0 = time.perf_counter()
    for res in iter_search(lo, hi, pred, workers, max_steps, chunk_size):
        out.hits.extend(res.hits)
        out.exceeded.extend(res.exceeded)
        out.scanned += res.scanned
    out.elapsed = time.perf_counter() - t0
    return out


# --- verification suites -----------------------------------------------------


@dataclass
class VerifyResult:
    suite: str
    lo: int
    hi: int
    checked: int = 0
    violations: list[tuple[int, str]] = field(default_factory=list)
    numeric_failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.numeric_failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "range": [self.lo, self.hi],
            "checked": self.checked,
            "violations": [{"N": N, "detail": d} for N, d in self.violations],
            "numeric_failures": [{"N": N, "detail": d} for N, d in self.numeric_failures],
        }


def _suite_minus_two(N, res, max_steps):
    f = integer_root_flags(N, max_steps)
    if f.root_at_minus_two != f.all_segments_even:
        res.violations.append((N, f"P(-2)==0 is {f.root_at_minus_two}, all segments even is {f.all_segments_even}"))


def _suite_parity(N, res, max_steps):
    f = integer_root_flags(N, max_steps)
    if f.root_at_minus_one and f.m_N % 2:
        res.violations.append((N, f"P(-1)==0 but m(N)={f.m_N} is odd"))


def _suite_negoneroot(N, res, max_steps):
    traj = trajectory(N, STANDARD, max_steps)
    if N & 1 and traj.n >= 1 and not _is_power_of_two(N) and _is_power_of_two(traj.iterates[1]):
        if evaluate_exact(from_trajectory(traj), -1) != 0:
            res.violations.append((N, "odd preimage of a power of two without root -1"))
    else:
        res.checked -= 1


def _suite_powbnd(N, res, max_steps):
    traj = trajectory(N, STANDARD, max_steps)
    n = traj.n
    for j, x in enumerate(traj.iterates):
        if x > 1 << (n - j):
            res.violations.append((N, f"c^{j}(N)={x} > 2^{n - j}"))
            return


def _suite_nonreal(N, res, max_steps):
    from .roots import find_roots, has_nonreal_root

    if N < 3:
        res.checked -= 1
        return
    rs = find_roots(build(N, STANDARD, max_steps))
    if not rs.converged:
        res.numeric_failures.append((N, f"root iteration did not converge (residual {max(rs.residuals):.2e})"))
    elif not has_nonreal_root(rs):
        res.violations.append((N, "all roots real"))


def _containment(N, res, max_steps, variant):
    from .bounds import ALT_GLOBAL_CAP, h_upper, kalantari_U, lower_bound, sun_hsieh
    from .roots import find_roots

    traj = trajectory(N, variant, max_steps)
    p = from_trajectory(traj)
    rs = find_roots(p)
    if not rs.converged:
        res.numeric_failures.append((N, f"root iteration did not converge (residual {max(rs.residuals):.2e})"))
        return
    hi_mod, lo_mod = rs.max_modulus, rs.min_modulus
    t = traj.t
    if variant is STANDARD:
        uppers = {"h(t)": h_upper(t), "U_(t+3)": kalantari_U(p.coeffs, t + 3) * (1 + 1e-9)}
        if p.degree >= 2:
            uppers["sun_hsieh"] = sun_hsieh(p.coeffs)
    else:
        uppers = {"alt_cap": ALT_GLOBAL_CAP}
    for name, b in uppers.items():
        if hi_mod > b:
            res.violations.append((N, f"max |root| {hi_mod!r} > {name} {b!r}"))
    lb = lower_bound(N, variant)
    if lo_mod < lb - 1e-9:
        res.violations.append((N, f"min |root| {lo_mod!r} < lower bound {lb!r}"))


def _suite_containment(N, res, max_steps):
    _containment(N, res, max_steps, STANDARD)


def _suite_alt_containment(N, res, max_steps):
    _containment(N, res, max_steps, Variant.ALTERNATIVE)


def _suite_proposition(N, res, max_steps):
    from .bounds import h_upper, sun_hsieh

    if N < 3:
        res.checked -= 1
        return
    v = sun_hsieh(build(N, STANDARD, max_steps).coeffs)
    if not v > h_upper(3):
        res.violations.append((N, f"1 + d(N) = {v!r} <= h(3)"))


SUITES: dict[str, Callable] = {
    "nonreal": _suite_nonreal,
    "minus-two-equivalence": _suite_minus_two,
    "parity": _suite_parity,
    "negoneroot": _suite_negoneroot,
    "bounds-containment": _suite_containment,
    "alt-containment": _suite_alt_containment,
    "powbnd": _suite_powbnd,
    "proposition": _suite_proposition,
}


def _run_suite_chunk(args) -> VerifyResult:
    name, lo, hi, max_steps = args
    fn = SUITES[name]
    res = VerifyResult(name, lo, hi)
    for N in range(lo, hi + 1):
        res.checked += 1
        try:
            fn(N, res, max_steps)
        except BudgetExceeded as exc:
            res.numeric_failures.append((N, str(exc)))
    return res


def run_suite(
    name: str,
    hi: int,
    lo: int = 2,
    workers: int = 1,
    max_steps: int = DEFAULT_MAX_STEPS,
    chunk_size: Optional[int] = None,
) -> VerifyResult:
    """Run a named verification suite over ``[lo, hi]``."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if chunk_size is None:
        chunk_size = max(1000, (hi - lo + 1) // (4 * workers) + 1)
    jobs = [(name, a, b, max_steps) for a, b in _chunks(lo, hi, chunk_size)]
    if workers == 1 or len(jobs) == 1:
        parts = list(map(_run_suite_chunk, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_suite_chunk, jobs))
    out = VerifyResult(name, lo, hi)
    for part in parts:
        out.checked += part.checked
        out.violations.extend(part.violations)
        out.numeric_failures.extend(part.numeric_failures)
    return out
