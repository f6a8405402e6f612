import cmath
import math
import random
from fractions import Fraction as F

import pytest

from trinomial.decomposition import (
    all_roots_decomposition,
    argument_label,
    class_parameters,
    combine_parity,
    decompose,
    evaluate_decomposition,
    multiplication_prefactor,
    parity_split_cubic,
)
from trinomial.errors import DivergenceError, OutsideRadiusError
from trinomial.lagrange_series import branch_leading, branch_omega, convergence_radius, series_root
from trinomial.oracle import match_roots, oracle_roots
from trinomial.problem import TrinomialProblem
from trinomial.special_functions import HypergeometricSpec, gamma_ratio_term, pfq_terms

CUBIC_03_REAL = -1.1254187827566260842


def test_quadratic_single_class():
    d = decompose(TrinomialProblem(2, 0.1), 0)
    assert d.leading == 1
    (c,) = d.classes
    assert (c.spec.upper, c.spec.lower) == ((F(1, 2), 1), (2,))
    assert c.spec.argument == pytest.approx(0.4)
    assert c.coefficient == pytest.approx(-0.1)
    assert argument_label(2) == "4t"


def test_cubic_classes_match_hypergeometric_pair():
    t = 0.2
    d = decompose(TrinomialProblem(3, t), 0)  # omega = -1
    assert d.leading == -1
    q0, q1 = d.classes
    z = 27 * t * t / 4
    assert q0.spec.with_argument(z) == HypergeometricSpec(("1/3", "2/3"), ("3/2",), z)
    assert q1.spec.with_argument(z) == HypergeometricSpec(("5/6", "7/6", 1), ("3/2", 2), z)
    assert abs(q0.spec.argument - z) <= 1e-15
    assert q0.coefficient == pytest.approx(-t / 2, rel=1e-14)
    assert q1.coefficient == pytest.approx(3 * t * t / 8, rel=1e-14)


def test_quintic_small_root_recovers_4f3():
    t = 0.3
    d = decompose(TrinomialProblem(5, t), None)
    q0 = d.classes[0]
    assert q0.spec.upper == (F(1, 5), F(2, 5), F(3, 5), F(4, 5))
    assert q0.spec.lower == (F(1, 2), F(3, 4), F(5, 4))
    assert q0.spec.argument == pytest.approx(3125 * t**4 / 256, rel=1e-15)
    assert q0.coefficient == t
    assert d.leading == 0
    assert all(c.coefficient == 0 for c in d.classes[1:])


@pytest.mark.parametrize("N", range(2, 11))
def test_class_structure(N):
    problem = TrinomialProblem(N, 0.01 + 0.02j)
    for branch in list(range(N - 1)) + [None]:
        d = decompose(problem, branch)
        assert len(d.classes) == N - 1
        for c in d.classes:
            assert c.spec.p <= N + 1 and c.spec.q <= N
            if branch is not None:
                omega = branch_omega(N, branch)
                expected = (problem.t * omega / (N - 1)) ** (N - 1) * N**N
                assert abs(c.spec.argument - expected) <= 1e-13 * abs(expected)
            for b in c.spec.lower:
                assert b.denominator <= N * (N - 1)


@pytest.mark.parametrize("N", range(2, 7))
def test_coefficient_identity_term_level(N):
    t = complex(0.11, -0.07) * convergence_radius(N)
    problem = TrinomialProblem(N, t)
    for branch in range(N - 1):
        omega = branch_omega(N, branch)
        d = decompose(problem, branch)
        for c in d.classes:
            expanded = pfq_terms(c.spec, 11)
            for m in range(11):
                n = c.q + m * (N - 1)
                direct = -t / (N - 1) * (t * omega) ** n * gamma_ratio_term(N, n)
                assert abs(c.coefficient * expanded[m] - direct) <= 1e-10 * abs(direct)


@pytest.mark.parametrize("N", range(2, 9))
def test_printed_gamma_product_prefactor(N):
    for q in range(N - 1):
        assert multiplication_prefactor(N, q) == pytest.approx(gamma_ratio_term(N, q), rel=1e-12)


@pytest.mark.parametrize("N", range(2, 7))
def test_decomposition_matches_direct_series(N):
    rng = random.Random(N)
    for _ in range(20):
        t = cmath.rect(rng.uniform(0, 0.5) * convergence_radius(N), rng.uniform(0, 2 * math.pi))
        problem = TrinomialProblem(N, t)
        for branch in range(N - 1):
            a = evaluate_decomposition(decompose(problem, branch)).value
            b = series_root(problem, branch).value
            assert abs(a - b) <= 1e-9


def test_evaluate_examples():
    assert abs(evaluate_decomposition(decompose(TrinomialProblem(2, 0.1875), 0)).value - 0.75) <= 1e-12
    r = evaluate_decomposition(decompose(TrinomialProblem(3, 0.3), 0))
    assert abs(r.value - series_root(TrinomialProblem(3, 0.3), 0).value) <= 1e-10
    assert abs(r.value - CUBIC_03_REAL) <= 1e-11
    for N in (2, 4, 7):
        for j in range(N - 1):
            assert evaluate_decomposition(decompose(TrinomialProblem(N, 0), j)).value == branch_leading(N, j)


def test_small_root_branch_is_the_sum_rule_root():
    for N in (2, 3, 4, 5, 6):
        problem = TrinomialProblem(N, 0.3 * convergence_radius(N))
        small = evaluate_decomposition(decompose(problem, None)).value
        assert abs(small - problem.t) <= 2 * abs(problem.t) ** 2 + 1e-15
        assert problem.residual(small) <= 1e-12


def test_errors_are_annotated_with_class():
    d = decompose(TrinomialProblem(3, 0.5), 0)
    with pytest.raises(DivergenceError) as info:
        evaluate_decomposition(d)
    assert info.value.class_index == 0
    assert "q=0" in str(info.value)


def test_all_roots_decomposition_vs_oracle():
    for N in range(2, 9):
        problem = TrinomialProblem(N, 0.6 * convergence_radius(N) * cmath.exp(0.4j))
        rs = all_roots_decomposition(problem)
        assert match_roots(rs, oracle_roots(problem)).max_distance <= 1e-9


def test_class_parameters_rejects_bad_q():
    with pytest.raises(ValueError):
        class_parameters(4, 3)


# ---------------------------------------------------------------- parity split

def test_parity_split_at_zero():
    even, odd = parity_split_cubic(0)
    assert even.value == pytest.approx(1, abs=1e-14)
    assert odd.value == pytest.approx(0.75, abs=1e-14)
    assert combine_parity(0, even, odd) == -1


def test_parity_split_root():
    even, odd = parity_split_cubic(0.3)
    assert even.converged and odd.converged
    assert abs(combine_parity(0.3, even, odd) - CUBIC_03_REAL) <= 1e-11


@pytest.mark.parametrize("t", [0.1, -0.2, 0.35, complex(0.1, 0.2)])
def test_parity_split_matches_series_and_trig(t):
    even, odd = parity_split_cubic(t)
    x = combine_parity(t, even, odd)
    assert abs(x - series_root(TrinomialProblem(3, t), 0).value) <= 1e-10
    phi = cmath.asin(t * math.sqrt(27) / 2) / 3
    trig = -cmath.sin(phi) / math.sqrt(3) - cmath.cos(phi)
    assert abs(x - trig) <= 1e-10


def test_parity_split_outside_radius():
    with pytest.raises(OutsideRadiusError):
        parity_split_cubic(0.39)
