"""Exception hierarchy shared by every solver path."""


class TrinomialError(Exception):
    """Base class for all numeric failures raised by this package."""

    def __init__(self, message, *, partial=None, class_index=None):
        super().__init__(message)
        # best iterate / partial sum available when the computation gave up
        self.partial = partial
        self.class_index = class_index


class PoleError(TrinomialError, ValueError):
    """Gamma function evaluated at a nonpositive integer."""


class DivergenceError(TrinomialError):
    """Series argument lies outside the circle of convergence."""


class NonConvergenceError(TrinomialError):
    """Term or iteration cap reached before the tolerance was met."""


class OutsideRadiusError(TrinomialError):
    """|t| is too close to (or beyond) the radius of the Lagrange series."""


class ResidualError(TrinomialError):
    """A computed root fails the residual check."""


class ZeroRootError(TrinomialError):
    """The reduced equation has x = 0 as a root, so 1/x does not exist."""


class SizeMismatchError(TrinomialError, ValueError):
    """Root lists of different lengths cannot be matched."""
