"""The reduced trinomial ``x**N - x + t = 0`` and containers for its roots."""

from dataclasses import dataclass, field

# roots closer than this are reported as one root of higher multiplicity
MULTIPLICITY_TOL = 1e-7


def ipow(x: complex, n: int) -> complex:
    """x**n for n >= 0 by binary exponentiation."""
    result = 1 + 0j
    base = complex(x)
    while n:
        if n & 1:
            result *= base
        base *= base
        n >>= 1
    return result


@dataclass(frozen=True)
class TrinomialProblem:
    degree: int
    t: complex = 0j

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 2:
            raise ValueError(f"degree must be an integer >= 2, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "t", complex(self.t))

    def evaluate(self, x: complex) -> complex:
        return ipow(x, self.degree) - x + self.t

    def residual(self, x: complex) -> float:
        return abs(self.evaluate(x))


def residual(problem: TrinomialProblem, x: complex) -> float:
    """|x**N - x + t|."""
    return problem.residual(x)


def reciprocal_residual(degree: int, a: complex, y: complex) -> float:
    """|y**N - a*y**(N-1) + a|."""
    return abs(ipow(y, degree) - a * ipow(y, degree - 1) + a)


def multiplicities(roots, tol=MULTIPLICITY_TOL):
    return tuple(sum(1 for other in roots if abs(other - x) <= tol) for x in roots)


@dataclass(frozen=True)
class RootSet:
    """All N roots of one problem, with residuals and where each root came from.

    ``equation`` is ``"reduced"`` for ``x**N - x + t`` or ``"reciprocal"`` for
    ``y**N - a*y**(N-1) + a``; in the latter case ``t`` holds ``a``.
    """

    degree: int
    t: complex
    roots: tuple
    residuals: tuple
    provenance: tuple
    multiplicity: tuple = field(default=())
    equation: str = "reduced"
    terms_used: tuple = field(default=())

    @classmethod
    def build(cls, problem: TrinomialProblem, roots, provenance, terms_used=None):
        roots = tuple(complex(x) for x in roots)
        provenance = tuple(provenance)
        if len(roots) != problem.degree or len(provenance) != problem.degree:
            raise ValueError(
                f"expected {problem.degree} roots, got {len(roots)}"
            )
        return cls(
            degree=problem.degree,
            t=problem.t,
            roots=roots,
            residuals=tuple(problem.residual(x) for x in roots),
            provenance=provenance,
            multiplicity=multiplicities(roots),
            terms_used=tuple(terms_used) if terms_used else (0,) * len(roots),
        )

    @property
    def problem(self) -> TrinomialProblem:
        if self.equation != "reduced":
            raise ValueError("reciprocal root sets have no reduced problem")
        return TrinomialProblem(self.degree, self.t)

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)
