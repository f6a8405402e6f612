"""Series-free ground truth: Durand-Kerner iteration and root matching."""

from dataclasses import dataclass

from .errors import NonConvergenceError, SizeMismatchError
from .problem import RootSet, TrinomialProblem

# certificate every oracle root must meet
ORACLE_RESIDUAL = 1e-10
_SEED = complex(0.4, 0.9)


@dataclass(frozen=True)
class OracleConfig:
    max_iterations: int = 500
    tolerance: float = 1e-13
    start_radius_factor: float = 1.0

    def __post_init__(self):
        if self.tolerance <= 0 or self.max_iterations < 1:
            raise ValueError("need tolerance > 0 and max_iterations >= 1")


def oracle_roots(problem: TrinomialProblem, cfg: OracleConfig = OracleConfig()) -> RootSet:
    """All roots of x**N - x + t by simultaneous (Gauss-Seidel) Durand-Kerner."""
    N, t = problem.degree, problem.t
    scale = cfg.start_radius_factor * max(1.0, abs(t) ** (1.0 / N))
    z = [scale * _SEED**k for k in range(N)]
    step = float("inf")
    for _ in range(cfg.max_iterations):
        step = 0.0
        for i in range(N):
            xi = z[i]
            denom = 1 + 0j
            for j in range(N):
                if j != i:
                    denom *= xi - z[j]
            delta = problem.evaluate(xi) / denom
            z[i] = xi - delta
            step = max(step, abs(delta))
        if step < cfg.tolerance:
            break
    else:
        best = RootSet.build(problem, z, ["oracle"] * N)
        raise NonConvergenceError(
            f"Durand-Kerner: step {step:.3g} after {cfg.max_iterations} iterations, "
            f"max residual {best.max_residual:.3g}",
            partial=best,
        )
    result = RootSet.build(problem, z, ["oracle"] * N)
    if result.max_residual > ORACLE_RESIDUAL:
        raise NonConvergenceError(
            f"Durand-Kerner converged to residual {result.max_residual:.3g}",
            partial=result,
        )
    return result


@dataclass(frozen=True)
class RootMatching:
    pairs: tuple  # (index_a, index_b, distance), sorted by index_a
    max_distance: float


def _roots(x):
    return list(x.roots) if isinstance(x, RootSet) else [complex(r) for r in x]


def _perfect_matching(dist, limit):
    """Kuhn's augmenting paths on edges with dist <= limit; None if imperfect."""
    n = len(dist)
    owner = [-1] * n  # owner[b] = a

    def augment(a, seen):
        for b in range(n):
            if dist[a][b] <= limit and not seen[b]:
                seen[b] = True
                if owner[b] < 0 or augment(owner[b], seen):
                    owner[b] = a
                    return True
        return False

    for a in range(n):
        if not augment(a, [False] * n):
            return None
    return owner


def match_roots(a, b) -> RootMatching:
    """Pair two root lists so that the largest pair distance is minimal.

    Exact bottleneck assignment: binary search over candidate distances with a
    bipartite perfect-matching test.
    """
    xa, xb = _roots(a), _roots(b)
    if len(xa) != len(xb):
        raise SizeMismatchError(f"cannot match {len(xa)} roots with {len(xb)}")
    if not xa:
        return RootMatching((), 0.0)
    dist = [[abs(x - y) for y in xb] for x in xa]
    candidates = sorted({d for row in dist for d in row})
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect_matching(dist, candidates[mid]) is None:
            lo = mid + 1
        else:
            hi = mid
    owner = _perfect_matching(dist, candidates[lo])
    pairs = sorted((ia, ib, dist[ia][ib]) for ib, ia in enumerate(owner))
    return RootMatching(tuple(pairs), max(d for _, _, d in pairs))
