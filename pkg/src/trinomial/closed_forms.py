"""Closed-form roots for N = 2, 3, 5 and the reciprocal trinomial."""

import cmath
import math
from dataclasses import dataclass

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import OutsideRadiusError, ResidualError, ZeroRootError
from .lagrange_series import all_roots_series, check_radius
from .oracle import oracle_roots
from .problem import RootSet, TrinomialProblem, multiplicities, reciprocal_residual
from .special_functions import HypergeometricSpec, SeriesResult, pfq

_SQRT3 = math.sqrt(3.0)
_HALF_SQRT27 = math.sqrt(27.0) / 2
CUBIC_RESIDUAL = 1e-10

QUINTIC_SPEC = HypergeometricSpec(
    ("1/5", "2/5", "3/5", "4/5"), ("1/2", "3/4", "5/4")
)


def hyp2f1_half_one_two(z: complex) -> complex:
    """2F1(1/2, 1; 2; z) in closed form, with the |z| > 1 branch.

    (2/z)(1 - sqrt(1 - z)) for |z| <= 1 and (2/z)(1 - i sqrt(z - 1)) beyond;
    1 - sqrt(1 - z) is evaluated as z / (1 + sqrt(1 - z)) to avoid cancellation.
    """
    z = complex(z)
    if z == 0:
        return 1 + 0j
    if abs(z) <= 1:
        return 2 / (1 + cmath.sqrt(1 - z))
    return 2 / z * (1 - 1j * cmath.sqrt(z - 1))


def quadratic_roots(t) -> RootSet:
    problem = TrinomialProblem(2, t)
    x1 = 1 - problem.t * hyp2f1_half_one_two(4 * problem.t)
    return RootSet.build(problem, [x1, 1 - x1], ["closed-form", "closed-form"])


@dataclass(frozen=True)
class CubicTrigState:
    theta: complex
    continued: bool


def continued_asin(w: complex) -> complex:
    """asin w = pi/2 - i Ln(w + sqrt(w**2 - 1)), principal Ln and sqrt."""
    return math.pi / 2 - 1j * cmath.log(w + cmath.sqrt(w * w - 1))


def cubic_theta(t) -> CubicTrigState:
    t = complex(t)
    w = t * _HALF_SQRT27
    if w.imag == 0 and abs(w.real) > 1:
        return CubicTrigState(continued_asin(w), True)
    return CubicTrigState(cmath.asin(w), False)


def _trig_roots(theta):
    phi = theta / 3
    s = cmath.sin(phi)
    c = cmath.cos(phi)
    return [-s / _SQRT3 - c, -s / _SQRT3 + c, 2 * s / _SQRT3]


def cubic_roots(t) -> RootSet:
    """Trigonometric roots of x**3 - x + t, continued past t = 2/sqrt(27)."""
    problem = TrinomialProblem(3, t)
    state = cubic_theta(problem.t)
    result = RootSet.build(problem, _trig_roots(state.theta), ["closed-form"] * 3)
    if result.max_residual > CUBIC_RESIDUAL:
        # conjugate branch of the continued asin; keep whichever is better
        other = RootSet.build(problem, _trig_roots(state.theta.conjugate()), ["closed-form"] * 3)
        if other.max_residual < result.max_residual:
            result = other
    return result


def quintic_small_root(t, config: SolverConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Root of x**5 - x + t that tends to t: t * 4F3(...; 3125 t**4 / 256)."""
    t = complex(t)
    z = 3125 * t**4 / 256
    if abs(z) >= 1:
        raise OutsideRadiusError(f"|3125 t^4 / 256| = {abs(z):.6g} >= 1")
    r = pfq(QUINTIC_SPEC.with_argument(z), config.tol, config.max_terms)
    x = t * r.value
    res = TrinomialProblem(5, t).residual(x)
    if res > config.residual_tol:
        raise ResidualError(f"quintic root residual {res:.3g} exceeds {config.residual_tol:g}")
    return SeriesResult(x, r.terms_used, abs(t) * r.tail_estimate, r.converged)


def reduced_roots(problem: TrinomialProblem, config: SolverConfig = DEFAULT_CONFIG) -> RootSet:
    """Roots by the most direct available method: closed form, series, oracle."""
    if problem.degree == 2:
        return quadratic_roots(problem.t)
    if problem.degree == 3:
        return cubic_roots(problem.t)
    try:
        check_radius(problem, config)
    except OutsideRadiusError:
        return oracle_roots(problem)
    return all_roots_series(problem, config)


def reciprocal_roots(N: int, a, config: SolverConfig = DEFAULT_CONFIG) -> RootSet:
    """Roots of y**N - a y**(N-1) + a = 0 as reciprocals of the reduced roots."""
    a = complex(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    base = reduced_roots(TrinomialProblem(N, 1 / a), config)
    if any(x == 0 for x in base.roots):
        raise ZeroRootError("x = 0 solves the reduced equation; y = 1/x is at infinity")
    ys = tuple(1 / x for x in base.roots)
    residuals = tuple(reciprocal_residual(N, a, y) for y in ys)
    bound = 1e-8 * max(1.0, abs(a) ** N)
    if max(residuals) > bound:
        raise ResidualError(f"reciprocal residual {max(residuals):.3g} exceeds {bound:.3g}")
    return RootSet(
        degree=N,
        t=a,
        roots=ys,
        residuals=residuals,
        provenance=base.provenance,
        multiplicity=multiplicities(ys),
        equation="reciprocal",
        terms_used=base.terms_used,
    )
