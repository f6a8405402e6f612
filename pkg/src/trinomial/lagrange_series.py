"""Lagrange-inversion series for the roots of x**N - x + t = 0.

Substituting x = omega**-1 * y turns the equation into y**N - y + t*omega = 0
whenever omega**(N-1) = 1, so every root near a root of unity is

    x = omega**-1 - t/(N-1) * sum_n (t*omega)**n * c_n,
    c_n = Gamma(N n/(N-1) + 1) / (Gamma(n + 2) Gamma(n/(N-1) + 1)).

The N-1 choices of omega give N-1 roots; the last one (the root near t)
follows from the vanishing x**(N-1) coefficient.
"""

import functools
import math

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import NonConvergenceError, OutsideRadiusError, ResidualError
from .oracle import oracle_roots
from .problem import RootSet, TrinomialProblem, residual  # noqa: F401
from .special_functions import SeriesResult, log_gamma_ratio_term, tail_bound


def unit_root(k: int, m: int) -> complex:
    """exp(2 pi i k / m), exact when it lies on an axis."""
    k %= m
    if (4 * k) % m == 0:
        return (complex(1, 0), complex(0, 1), complex(-1, 0), complex(0, -1))[4 * k // m]
    angle = 2 * math.pi * k / m
    return complex(math.cos(angle), math.sin(angle))


def branch_omega(N: int, branch: int) -> complex:
    """Root of unity for ``branch``; branch 0 is exp(2 pi i/(N-1))."""
    _check_branch(N, branch)
    return unit_root(branch + 1, N - 1)


def branch_leading(N: int, branch: int) -> complex:
    """omega**-1 for ``branch``: the value of that root at t = 0."""
    _check_branch(N, branch)
    return unit_root(-(branch + 1), N - 1)


def _check_branch(N, branch):
    if not 0 <= branch <= N - 2:
        raise ValueError(f"branch must lie in [0, {N - 2}], got {branch}")


def sum_rule_constant(N: int) -> int:
    """Sum of all roots of x**N - x + t: minus the x**(N-1) coefficient."""
    return 1 if N == 2 else 0


def convergence_radius(N: int) -> float:
    """Radius in |t| of the Lagrange series: (N-1) * N**(-N/(N-1))."""
    if N < 2:
        raise ValueError("N must be >= 2")
    return (N - 1) * N ** (-N / (N - 1))


def check_radius(problem: TrinomialProblem, config: SolverConfig) -> None:
    radius = convergence_radius(problem.degree)
    limit = radius * (1 - config.radius_margin)
    if abs(problem.t) >= limit:
        raise OutsideRadiusError(
            f"|t| = {abs(problem.t):.6g} is not below {limit:.6g} "
            f"(radius {radius:.6g} for N = {problem.degree}, "
            f"margin {config.radius_margin:g})"
        )


def _terms(N: int, s: complex, start: int):
    """Yield (t*omega)**n * c_n from n = start, in log form to dodge overflow."""
    if s == 0:
        yield 1 + 0j if start == 0 else 0j
        yield from iter(lambda: 0j, None)
    log_size = math.log(abs(s))
    phase = s / abs(s)
    rotation = phase**start
    n = start
    while True:
        yield math.exp(n * log_size + log_gamma_ratio_term(N, n)) * rotation
        rotation *= phase
        n += 1


def series_terms(problem: TrinomialProblem, branch: int, start: int, stop: int):
    """Terms (t*omega)**n * c_n for start <= n < stop, no radius check."""
    s = problem.t * branch_omega(problem.degree, branch)
    gen = _terms(problem.degree, s, start)
    return [next(gen) for _ in range(start, stop)]


def series_root(
    problem: TrinomialProblem, branch: int = 0, config: SolverConfig = DEFAULT_CONFIG
) -> SeriesResult:
    """Sum the Lagrange series for one branch."""
    N, t = problem.degree, problem.t
    lead = branch_leading(N, branch)
    check_radius(problem, config)
    scale = abs(t) / (N - 1)
    limit = abs(t) / convergence_radius(N)
    terms = _terms(N, t * branch_omega(N, branch), 0)

    total = 0j
    term = next(terms)
    used = 0
    while True:
        total += term
        used += 1
        nxt = next(terms)
        size = abs(term)
        ratio = max(abs(nxt) / size, limit) if size else limit
        tail = scale * tail_bound(size, ratio, config.max_terms - used)
        if tail <= config.tol:
            break
        if used >= config.max_terms:
            raise NonConvergenceError(
                f"Lagrange series (N={N}, branch {branch}) not converged after "
                f"{used} terms",
                partial=SeriesResult(lead - t / (N - 1) * total, used, tail, False),
            )
        term = nxt

    x = lead - t / (N - 1) * total
    res = problem.residual(x)
    if res > config.residual_tol:
        raise ResidualError(
            f"series branch {branch} residual {res:.3g} exceeds {config.residual_tol:g}"
        )
    return SeriesResult(x, used, tail, True)


@functools.lru_cache(maxsize=None)
def check_sum_rule() -> None:
    """Check the sum-rule constant against the oracle for N = 2 and 3 (once)."""
    for N in (2, 3):
        roots = oracle_roots(TrinomialProblem(N, 0.1)).roots
        if abs(sum(roots) - sum_rule_constant(N)) > 1e-9:
            raise AssertionError(f"sum rule constant wrong for N = {N}")


def all_roots_series(
    problem: TrinomialProblem, config: SolverConfig = DEFAULT_CONFIG
) -> RootSet:
    """N-1 roots from the series branches, the last from the sum rule."""
    check_sum_rule()
    N = problem.degree
    branches = [series_root(problem, j, config) for j in range(N - 1)]
    branch_roots = [r.value for r in branches]
    last = sum_rule_constant(N) - sum(branch_roots)
    result = RootSet.build(
        problem,
        branch_roots + [last],
        [f"series-branch-{j}" for j in range(N - 1)] + ["sum-rule"],
        [r.terms_used for r in branches] + [0],
    )
    if result.residuals[-1] > config.residual_tol:
        raise ResidualError(
            f"sum-rule root residual {result.residuals[-1]:.3g} exceeds "
            f"{config.residual_tol:g}"
        )
    return result
