"""Split the Lagrange series into N-1 hypergeometric functions.

Terms with n = q + m(N-1) form one residue class.  Expanding
Gamma(N n/(N-1) + 1), Gamma(n + 2) and Gamma(n/(N-1) + 1) with Gauss's
multiplication theorem (multipliers N and N-1) turns each class into

    coefficient_q * F(upper_q; lower_q; N**N / (N-1)**(N-1) * t**(N-1))

with

    upper_q = {(qN/(N-1) + 1 + k)/N : k = 0..N-1} + {1}
    lower_q = {(q + k + 2)/(N-1) : k = 0..N-2} + {q/(N-1) + 1}

after exact cancellation of parameters shared by both lists.  The coefficient
is simply the n = q term of the direct series.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import OutsideRadiusError, ResidualError, TrinomialError
from .lagrange_series import (
    branch_leading,
    branch_omega,
    check_radius,
    convergence_radius,
    sum_rule_constant,
)
from .problem import RootSet, TrinomialProblem
from .special_functions import (
    HypergeometricSpec,
    SeriesResult,
    gamma_ratio_term,
    log_gamma,
    pfq,
    tail_bound,
)


def class_parameters(N: int, q: int) -> HypergeometricSpec:
    """Cancelled parameter lists of residue class ``q``; argument left at 0."""
    if N < 2 or not 0 <= q <= N - 2:
        raise ValueError(f"need N >= 2 and 0 <= q <= N-2, got N={N}, q={q}")
    m = N - 1
    shift = Fraction(q * N, m) + 1
    upper = [(shift + k) / N for k in range(N)] + [Fraction(1)]
    lower = [Fraction(q + k + 2, m) for k in range(m)] + [Fraction(q, m) + 1]
    return HypergeometricSpec(tuple(upper), tuple(lower)).cancelled()


def argument_scale(N: int) -> Fraction:
    """N**N / (N-1)**(N-1): the class argument divided by t**(N-1)."""
    return Fraction(N**N, (N - 1) ** (N - 1))


def argument_label(N: int) -> str:
    scale = argument_scale(N)
    power = "t" if N == 2 else f"t^{N - 1}"
    text = f"{scale.numerator}{power}"
    return text if scale.denominator == 1 else f"{text}/{scale.denominator}"


@dataclass(frozen=True)
class ResidueClass:
    q: int
    coefficient: complex
    spec: HypergeometricSpec


@dataclass(frozen=True)
class DecomposedRoot:
    """One root written as ``leading + sum(c.coefficient * pFq(c.spec))``.

    ``branch`` is None for the root near t (the one the sum rule produces).
    """

    degree: int
    t: complex
    branch: object
    leading: complex
    classes: tuple


def decompose(problem: TrinomialProblem, branch=0) -> DecomposedRoot:
    N, t = problem.degree, problem.t
    z = float(argument_scale(N)) * t ** (N - 1)
    classes = []
    if branch is None:
        # summing the branches over all omega keeps only q = 0, times -(N-1)
        leading = 0j
        for q in range(N - 1):
            coefficient = t if q == 0 else 0j
            classes.append(ResidueClass(q, coefficient, class_parameters(N, q).with_argument(z)))
    else:
        leading = branch_leading(N, branch)
        s = t * branch_omega(N, branch)
        for q in range(N - 1):
            coefficient = -t / (N - 1) * s**q * gamma_ratio_term(N, q)
            classes.append(ResidueClass(q, coefficient, class_parameters(N, q).with_argument(z)))
    return DecomposedRoot(N, t, branch, leading, tuple(classes))


def evaluate_decomposition(d: DecomposedRoot, config: SolverConfig = DEFAULT_CONFIG) -> SeriesResult:
    total = d.leading
    terms = 0
    tail = 0.0
    for c in d.classes:  # ascending q keeps the sum reproducible
        if c.coefficient == 0:
            continue
        try:
            r = pfq(c.spec, config.tol, config.max_terms)
        except TrinomialError as exc:
            exc.class_index = c.q
            exc.args = (f"residue class q={c.q}: {exc}",)
            raise
        total += c.coefficient * r.value
        terms += r.terms_used
        tail += abs(c.coefficient) * r.tail_estimate
    problem = TrinomialProblem(d.degree, d.t)
    res = problem.residual(total)
    if res > config.residual_tol:
        raise ResidualError(f"decomposed root residual {res:.3g} exceeds {config.residual_tol:g}")
    return SeriesResult(total, terms, tail, True)


def all_roots_decomposition(
    problem: TrinomialProblem, config: SolverConfig = DEFAULT_CONFIG
) -> RootSet:
    """Same root set as the direct series, but summed class by class."""
    check_radius(problem, config)
    N = problem.degree
    branches = [evaluate_decomposition(decompose(problem, j), config) for j in range(N - 1)]
    values = [r.value for r in branches]
    last = sum_rule_constant(N) - sum(values)
    result = RootSet.build(
        problem,
        values + [last],
        [f"decomposition-branch-{j}" for j in range(N - 1)] + ["sum-rule"],
        [r.terms_used for r in branches] + [0],
    )
    if result.residuals[-1] > config.residual_tol:
        raise ResidualError(
            f"sum-rule root residual {result.residuals[-1]:.3g} exceeds "
            f"{config.residual_tol:g}"
        )
    return result


def multiplication_prefactor(N: int, q: int) -> float:
    """Gamma-product form of c_q obtained from the multiplication theorem.

    sqrt(N / (2 pi (N-1))) * N**(qN/(N-1)) / (N-1)**(q+1)
        * prod_k Gamma((qN/(N-1) + 1 + k)/N)
        / (Gamma(q/(N-1) + 1) * prod_k Gamma((q + k + 2)/(N-1)))

    Mathematically equal to gamma_ratio_term(N, q); used as a cross-check.
    """
    m = N - 1
    shift = Fraction(q * N, m) + 1
    lg = sum(log_gamma((shift + k) / N) for k in range(N))
    lg -= log_gamma(Fraction(q, m) + 1)
    lg -= sum(log_gamma(Fraction(q + k + 2, m)) for k in range(m))
    return (
        math.sqrt(N / (2 * math.pi * m))
        * N ** (q * N / m)
        / m ** (q + 1)
        * math.exp(lg.real)
    )


_CUBIC_RADIUS = convergence_radius(3)


def parity_split_cubic(t, config: SolverConfig = DEFAULT_CONFIG):
    """Even- and odd-n sums of the N = 3 series on the omega = -1 branch.

        E(t) = sum_n Gamma(3n+1)   t**(2n) / (Gamma(n+1)   Gamma(2n+2))
        O(t) = sum_n Gamma(3n+5/2) t**(2n) / (Gamma(n+3/2) Gamma(2n+3))

    The root near -1 is ``combine_parity(t, E, O) = -1 - t/2 E + t**2/2 O``.
    """
    t = complex(t)
    if abs(t) >= _CUBIC_RADIUS:
        raise OutsideRadiusError(f"|t| = {abs(t):.6g} >= 2/sqrt(27)")
    even = _direct_sum(t, lambda n: log_gamma(3 * n + 1) - log_gamma(n + 1) - log_gamma(2 * n + 2), config)
    odd = _direct_sum(
        t,
        lambda n: log_gamma(3 * n + 2.5) - log_gamma(n + 1.5) - log_gamma(2 * n + 3),
        config,
    )
    return even, odd


def combine_parity(t, even: SeriesResult, odd: SeriesResult) -> complex:
    t = complex(t)
    return -1 - t / 2 * even.value + t * t / 2 * odd.value


def _direct_sum(t, log_coefficient, config):
    w = t * t
    limit = abs(w) * 27 / 4
    total = 0j
    power = 1 + 0j
    term = cmath.exp(log_coefficient(0))
    n = 0
    while True:
        total += term
        used = n + 1
        power *= w
        nxt = power * cmath.exp(log_coefficient(n + 1))
        size = abs(term)
        ratio = max(abs(nxt) / size, limit) if size else limit
        tail = tail_bound(size, ratio, config.max_terms - used)
        if tail <= config.tol or used >= config.max_terms:
            return SeriesResult(total, used, tail, tail <= config.tol)
        term = nxt
        n += 1
