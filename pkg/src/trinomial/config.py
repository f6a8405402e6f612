from dataclasses import dataclass


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and caps shared by the series, decomposition and closed forms.

    ``radius_margin`` is the fraction of the convergence radius that the
    Lagrange series refuses to enter: ``|t| < radius * (1 - radius_margin)``.
    """

    tol: float = 1e-12
    residual_tol: float = 1e-9
    max_terms: int = 100_000
    radius_margin: float = 0.02

    def __post_init__(self):
        if not (self.tol > 0 and self.residual_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not (0 < self.radius_margin < 1):
            raise ValueError("radius_margin must lie in (0, 1)")


DEFAULT_CONFIG = SolverConfig()
