"""Roots of the reduced trinomial x**N - x + t = 0.

Lagrange-inversion series, their split into hypergeometric functions,
closed forms for N = 2, 3, 5 and a Durand-Kerner oracle to check them all.
"""

from .closed_forms import (
    cubic_roots,
    quadratic_roots,
    quintic_small_root,
    reciprocal_roots,
)
from .config import SolverConfig
from .decomposition import (
    all_roots_decomposition,
    decompose,
    evaluate_decomposition,
    parity_split_cubic,
)
from .errors import (
    DivergenceError,
    NonConvergenceError,
    OutsideRadiusError,
    PoleError,
    ResidualError,
    SizeMismatchError,
    TrinomialError,
    ZeroRootError,
)
from .lagrange_series import all_roots_series, convergence_radius, series_root
from .oracle import OracleConfig, match_roots, oracle_roots
from .problem import RootSet, TrinomialProblem, residual
from .special_functions import HypergeometricSpec, SeriesResult, gamma_ratio_term, log_gamma, pfq

__all__ = [
    "DivergenceError",
    "HypergeometricSpec",
    "NonConvergenceError",
    "OracleConfig",
    "OutsideRadiusError",
    "PoleError",
    "ResidualError",
    "RootSet",
    "SeriesResult",
    "SizeMismatchError",
    "SolverConfig",
    "TrinomialError",
    "TrinomialProblem",
    "ZeroRootError",
    "all_roots_decomposition",
    "all_roots_series",
    "convergence_radius",
    "cubic_roots",
    "decompose",
    "evaluate_decomposition",
    "gamma_ratio_term",
    "log_gamma",
    "match_roots",
    "oracle_roots",
    "parity_split_cubic",
    "pfq",
    "quadratic_roots",
    "quintic_small_root",
    "reciprocal_roots",
    "residual",
    "series_root",
]
