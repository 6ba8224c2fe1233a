"""Collatz polynomials: the trajectory of N read as polynomial coefficients.

Submodules: ``core`` (trajectories), ``polynomial`` (construction and
evaluation), ``bounds`` (root-modulus bounds), ``roots`` (Aberth root
finding), ``analysis`` (integer roots, witness search, verification suites)
and ``cli``.
"""
from ._kernels import BACKEND
from .core import ALTERNATIVE, STANDARD, Segment, Trajectory, Variant, base_of, odd_preimage, segments_of, step, trajectory
from .errors import *  # noqa: F401,F403
from .polynomial import CollatzPolynomial, build, evaluate_complex, evaluate_exact, reciprocal, segment_evaluate

__version__ = "0.1.0"
