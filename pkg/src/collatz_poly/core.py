"""Collatz trajectories for the standard and alternative step functions.

The standard map sends odd x to (3x+1)/2, the alternative map to 3x+1; both
halve even x. All values are Python ints, so nothing overflows.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

from .errors import BudgetExceeded, VariantUnsupported

DEFAULT_MAX_STEPS = 10**6


class Variant(enum.Enum):
    STANDARD = "standard"
    ALTERNATIVE = "alt"

    @classmethod
    def parse(cls, value) -> "Variant":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key in ("standard", "std", "s"):
            return cls.STANDARD
        if key in ("alt", "alternative", "a"):
            return cls.ALTERNATIVE
        raise ValueError(f"unknown variant {value!r}")


STANDARD = Variant.STANDARD
ALTERNATIVE = Variant.ALTERNATIVE


class Segment(NamedTuple):
    """A maximal run ``2**(length-1)*odd, ..., 2*odd, odd`` of a trajectory."""

    odd: int
    length: int

    def expand(self) -> list[int]:
        return [self.odd << (self.length - 1 - i) for i in range(self.length)]


def step(x: int, variant: Variant = STANDARD) -> int:
    if x & 1:
        return (3 * x + 1) >> 1 if variant is STANDARD else 3 * x + 1
    return x >> 1


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@dataclass(frozen=True)
class Trajectory:
    """Iterates ``N, c(N), ..., 1`` together with their summary statistics.

    ``n`` is the total stopping time, ``t`` the base (log2 of the first
    iterate, N itself included, that is a power of two) and ``m`` the number
    of odd iterates, the final 1 included.
    """

    N: int
    variant: Variant
    iterates: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.iterates) - 1

    @cached_property
    def t(self) -> int:
        return base_of(self)

    @cached_property
    def m(self) -> int:
        return sum(x & 1 for x in self.iterates)

    @cached_property
    def segments(self) -> tuple[Segment, ...]:
        return segments_of(self)

    @property
    def peak(self) -> int:
        return max(self.iterates)


def trajectory(N: int, variant: Variant = STANDARD, max_steps: int = DEFAULT_MAX_STEPS) -> Trajectory:
    """Iterate ``N`` until it reaches 1.

    Raises :class:`BudgetExceeded` if 1 is not reached within ``max_steps``
    applications of the step function.
    """
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    variant = Variant.parse(variant)
    standard = variant is STANDARD
    x = N
    out = [x]
    append = out.append
    steps = 0
    while x != 1:
        if steps >= max_steps:
            raise BudgetExceeded(N, max_steps)
        if x & 1:
            x = (3 * x + 1) >> 1 if standard else 3 * x + 1
        else:
            x >>= 1
        append(x)
        steps += 1
    return Trajectory(N, variant, tuple(out))


def base_of(traj: Trajectory) -> int:
    for x in traj.iterates:
        if _is_power_of_two(x):
            return x.bit_length() - 1
    raise AssertionError("a trajectory always ends at 1")  # pragma: no cover


def segments_of(traj: Trajectory) -> tuple[Segment, ...]:
    """Split a standard trajectory into maximal halving runs ending at odd values."""
    if traj.variant is not STANDARD:
        raise VariantUnsupported("segment decomposition is defined for the standard map only")
    segs = []
    length = 0
    for x in traj.iterates:
        length += 1
        if x & 1:
            segs.append(Segment(x, length))
            length = 0
    return tuple(segs)


def odd_preimage(N: int) -> Optional[int]:
    """The odd ``x`` with ``c(x) == N``, i.e. ``(2N-1)/3``; None if ``N % 3 != 2``."""
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    if N % 3 != 2:
        return None
    return (2 * N - 1) // 3
