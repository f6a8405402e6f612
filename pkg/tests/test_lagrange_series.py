import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trinomial.config import SolverConfig
from trinomial.errors import NonConvergenceError, OutsideRadiusError
from trinomial.lagrange_series import (
    all_roots_series,
    branch_leading,
    branch_omega,
    check_sum_rule,
    convergence_radius,
    series_root,
    series_terms,
    sum_rule_constant,
    unit_root,
)
from trinomial.oracle import match_roots, oracle_roots
from trinomial.problem import TrinomialProblem, ipow, residual

# x^3 - x + 0.3 and x^5 - x + 0.1, roots from mpmath.polyroots at 40 digits
CUBIC_03 = (-1.1254187827566260842, 0.33893624159499889696, 0.78648254116162718722)
QUINTIC_01 = (
    -1.0235771425444427412,
    0.10001000500350285809,
    0.97325953524184177947,
    complex(-0.024846198850450948178, 1.00154404745224393),
    complex(-0.024846198850450948178, -1.00154404745224393),
)


def test_problem_validation():
    with pytest.raises(ValueError):
        TrinomialProblem(1, 0.1)
    assert TrinomialProblem(3, 0.5).t == complex(0.5)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 7, 16, 33])
def test_ipow_matches_builtin(n):
    x = complex(0.9, -0.4)
    assert abs(ipow(x, n) - x**n) <= 1e-14 * max(1, abs(x) ** n)


@pytest.mark.parametrize(
    "N, t, x, expected",
    [(2, 0.1875, 0.75, 0.0), (4, 0, 0, 0.0), (7, 0, 0, 0.0), (3, 0.3, 1, 0.3)],
)
def test_residual_examples(N, t, x, expected):
    assert residual(TrinomialProblem(N, t), x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "N, expected",
    [(2, 0.25), (3, 2 / math.sqrt(27)), (5, 4 * 5 ** (-5 / 4))],
)
def test_convergence_radius(N, expected):
    assert convergence_radius(N) == pytest.approx(expected, rel=1e-15)


def test_convergence_radius_pinned_digits():
    assert convergence_radius(3) == pytest.approx(0.384900179459751, abs=1e-15)
    assert convergence_radius(5) == pytest.approx(0.534992243981138, abs=1e-15)


def test_unit_roots_exact_on_axes():
    assert unit_root(1, 4) == 1j
    assert unit_root(2, 4) == -1
    assert unit_root(-1, 4) == -1j
    assert unit_root(0, 7) == 1


def test_branch_zero_is_exp_2pi_i_over_n_minus_1():
    for N in range(2, 9):
        assert abs(branch_omega(N, 0) - cmath.exp(2j * math.pi / (N - 1))) <= 1e-15
        assert abs(branch_leading(N, 0) * branch_omega(N, 0) - 1) <= 1e-15
    with pytest.raises(ValueError):
        branch_omega(4, 3)


@pytest.mark.parametrize("N", range(2, 9))
def test_t_zero_gives_exact_roots_of_unity(N):
    problem = TrinomialProblem(N, 0)
    values = [series_root(problem, j).value for j in range(N - 1)]
    assert values == [branch_leading(N, j) for j in range(N - 1)]
    for v in values:
        assert abs(ipow(v, N - 1) - 1) <= 1e-14
    # every (N-1)-st root of unity appears once
    assert match_roots(values, [unit_root(k, N - 1) for k in range(N - 1)]).max_distance <= 1e-15


def test_series_root_quadratic():
    r = series_root(TrinomialProblem(2, 0.1875), 0)
    assert r.converged
    assert abs(r.value - 0.75) <= 1e-11


def test_series_root_cubic_branch_zero_is_real_negative_root():
    r = series_root(TrinomialProblem(3, 0.3), 0)
    assert abs(r.value - CUBIC_03[0]) <= 1e-11
    assert r.terms_used <= SolverConfig().max_terms
    assert r.tail_estimate <= SolverConfig().tol


def test_series_root_outside_radius():
    with pytest.raises(OutsideRadiusError):
        series_root(TrinomialProblem(3, 0.5), 0)
    # within the 2% margin
    with pytest.raises(OutsideRadiusError):
        series_root(TrinomialProblem(2, 0.249), 0)
    series_root(TrinomialProblem(2, 0.249), 0, SolverConfig(radius_margin=0.001))


def test_series_root_term_cap():
    with pytest.raises(NonConvergenceError) as info:
        series_root(TrinomialProblem(4, 0.4), 0, SolverConfig(max_terms=5))
    assert info.value.partial.terms_used == 5


def test_all_roots_quadratic():
    rs = all_roots_series(TrinomialProblem(2, 0.1875))
    assert abs(rs.roots[0] - 0.75) <= 1e-11
    assert abs(rs.roots[1] - 0.25) <= 1e-11
    assert rs.provenance == ("series-branch-0", "sum-rule")


def test_all_roots_cubic_at_zero():
    rs = all_roots_series(TrinomialProblem(3, 0))
    assert sorted(x.real for x in rs.roots) == [-1, 0, 1]


def test_all_roots_quintic():
    rs = all_roots_series(TrinomialProblem(5, 0.1))
    assert match_roots(rs, QUINTIC_01).max_distance <= 1e-11
    assert abs(rs.roots[-1] - 0.1000100050035) <= 1e-12
    assert rs.provenance.count("sum-rule") == 1


def test_rootset_residual_invariant():
    problem = TrinomialProblem(6, complex(0.1, 0.2))
    rs = all_roots_series(problem)
    for x, r in zip(rs.roots, rs.residuals):
        assert r == problem.residual(x)
    assert rs.max_residual <= 1e-9


def test_sum_rule_constant_self_check():
    assert sum_rule_constant(2) == 1 and sum_rule_constant(3) == 0
    check_sum_rule()


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=2, max_value=8),
    st.floats(min_value=0, max_value=0.8),
    st.floats(min_value=0, max_value=2 * math.pi),
)
def test_vieta_and_oracle_agreement(N, fraction, angle):
    t = cmath.rect(fraction * convergence_radius(N), angle)
    problem = TrinomialProblem(N, t)
    rs = all_roots_series(problem)
    assert abs(sum(rs.roots) - sum_rule_constant(N)) <= 1e-9
    product = 1
    for x in rs.roots:
        product *= x
    assert abs(product - (-1) ** N * t) <= 1e-9
    assert match_roots(rs, oracle_roots(problem)).max_distance <= 1e-8


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 8])
def test_terms_grow_beyond_radius(N):
    t = 1.05 * convergence_radius(N)
    sizes = [abs(x) for x in series_terms(TrinomialProblem(N, t), 0, 200, 221)]
    assert all(b >= a for a, b in zip(sizes, sizes[1:]))


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 8])
def test_terms_decay_inside_radius(N):
    t = 0.95 * convergence_radius(N)
    sizes = [abs(x) for x in series_terms(TrinomialProblem(N, t), 0, 200, 221)]
    assert all(b < a for a, b in zip(sizes, sizes[1:]))


def test_series_terms_survive_large_n():
    # c_n alone overflows a double here; the product with t**n does not
    terms = series_terms(TrinomialProblem(2, 0.24), 0, 2000, 2002)
    assert all(math.isfinite(abs(x)) and 0 < abs(x) < 1 for x in terms)
