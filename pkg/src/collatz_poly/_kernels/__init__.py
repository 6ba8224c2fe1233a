"""Hot kernels: compiled extension when importable, NumPy/Python otherwise.

Set ``COLLATZ_POLY_PURE=1`` before import to force the pure-Python path.
``BACKEND`` names the implementation in use.
"""
import os

from . import _fallback

if os.environ.get("COLLATZ_POLY_PURE", "").strip() not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

MINUS_ONE = _fallback.MINUS_ONE
MINUS_TWO = _fallback.MINUS_TWO

scan = _impl.scan
minus_one_value = _impl.minus_one_value
minus_two_is_root = _impl.minus_two_is_root
aberth = _impl.aberth


def backends():
    """Every importable implementation, keyed by name."""
    out = {"python": _fallback}
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        out["cython"] = _speedups
    return out
