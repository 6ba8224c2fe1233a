"""Collatz polynomials: the trajectory of N used as a coefficient list.

Coefficients are stored ascending, ``coeffs[j]`` being the j-th iterate, so
``coeffs[0] == N`` and ``coeffs[-1] == 1``.  Note that the determinantal
bounds index coefficients from the top (``a_(n-1)``, ``a_(n-2)``, ...).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .core import DEFAULT_MAX_STEPS, STANDARD, Trajectory, Variant, trajectory
from .errors import DegreeTooSmall, VariantUnsupported


@dataclass(frozen=True)
class CollatzPolynomial:
    N: int
    variant: Variant
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    n = degree

    def __call__(self, z):
        if isinstance(z, int):
            return evaluate_exact(self, z)
        return evaluate_complex(self, z)

    def to_json(self) -> str:
        return json.dumps(to_dict(self))


def build(N: int, variant: Variant = STANDARD, max_steps: int = DEFAULT_MAX_STEPS) -> CollatzPolynomial:
    return from_trajectory(trajectory(N, variant, max_steps))


def from_trajectory(traj: Trajectory) -> CollatzPolynomial:
    return CollatzPolynomial(traj.N, traj.variant, traj.iterates)


def _coeffs(p) -> Sequence[int]:
    return p.coeffs if isinstance(p, CollatzPolynomial) else p


def evaluate_exact(p, k: int) -> int:
    acc = 0
    for a in reversed(_coeffs(p)):
        acc = acc * k + a
    return acc


def evaluate_complex(p, z: complex) -> complex:
    z = complex(z)
    acc = 0j
    for a in reversed(_coeffs(p)):
        acc = acc * z + a
    return acc


def segment_evaluate(traj: Trajectory, z: complex) -> complex:
    """Evaluate the polynomial segment by segment.

    Each run ``2**(l-1)*N_i, ..., N_i`` contributes
    ``2**l * N_i * z**offset * (1 - (z/2)**l) / (2 - z)``; the last factor is
    summed as ``0.5 * sum((z/2)**j for j < l)`` so ``z == 2`` is harmless.
    """
    if traj.variant is not STANDARD:
        raise VariantUnsupported("segment closed form is defined for the standard map only")
    z = complex(z)
    half = z / 2
    total = 0j
    zpow = 1 + 0j
    for odd, length in traj.segments:
        geo = 0j
        for _ in range(length):
            geo = geo * half + 1
        total += (2.0**length * odd) * zpow * (0.5 * geo)
        zpow *= z**length
    return total


def reciprocal(p) -> list[int]:
    coeffs = _coeffs(p)
    if len(coeffs) < 2:
        raise DegreeTooSmall("reciprocal polynomial needs degree >= 1")
    return list(reversed(coeffs))


def to_dict(p: CollatzPolynomial) -> dict:
    return {
        "N": str(p.N),
        "variant": p.variant.value,
        "coeffs": [str(a) for a in p.coeffs],
    }


def from_dict(d: dict) -> CollatzPolynomial:
    coeffs = tuple(int(a) for a in d["coeffs"])
    return CollatzPolynomial(int(d["N"]), Variant.parse(d["variant"]), coeffs)


def from_json(text: str) -> CollatzPolynomial:
    return from_dict(json.loads(text))
