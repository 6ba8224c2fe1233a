"""Exception hierarchy shared by every module of the package."""


class CollatzPolyError(Exception):
    """Base class for all package errors."""


class BudgetExceeded(CollatzPolyError):
    """The trajectory did not reach 1 within the iteration budget."""

    def __init__(self, N, max_steps):
        super().__init__(f"trajectory of {N} did not reach 1 within {max_steps} steps")
        self.N = N
        self.max_steps = max_steps


class VariantUnsupported(CollatzPolyError):
    pass


class DegreeTooSmall(CollatzPolyError):
    pass


class InvalidM(CollatzPolyError):
    pass


class InvalidT(CollatzPolyError):
    pass


class NotMonic(CollatzPolyError):
    pass


class IndexOutOfRange(CollatzPolyError):
    pass


class NoConvergence(CollatzPolyError):
    """Root iteration stopped before every root met the residual tolerance.

    The best-effort :class:`~collatz_poly.roots.RootSet` is attached as
    ``rootset``.
    """

    def __init__(self, message, rootset=None):
        super().__init__(message)
        self.rootset = rootset


class VietaMismatch(CollatzPolyError):
    def __init__(self, sum_error, product_error):
        super().__init__(
            f"Vieta check failed: |sum + a_(n-1)| = {sum_error:.3e}, "
            f"||prod| - N| = {product_error:.3e}"
        )
        self.sum_error = sum_error
        self.product_error = product_error


class NoOddPreimage(CollatzPolyError):
    pass


class PremiseFailed(CollatzPolyError):
    pass
