"""Complex log-gamma and a generalized hypergeometric series evaluator."""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergenceError, NonConvergenceError, PoleError

_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_LOG_PI = math.log(math.pi)

# B_2k / (2k (2k-1)), k = 1..9
_STIRLING = (
    1 / 12,
    -1 / 360,
    1 / 1260,
    -1 / 1680,
    1 / 1188,
    -691 / 360360,
    1 / 156,
    -3617 / 122400,
    43867 / 244188,
)
# Stirling's series is used once Re(z) reaches this; truncation error < 1e-20
_STIRLING_MIN = 15.0


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _stirling(z: complex) -> complex:
    w = 1 / z
    w2 = w * w
    acc = 0j
    for c in reversed(_STIRLING):
        acc = acc * w2 + c
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + acc * w


def _sinpi(z: complex) -> complex:
    # reduce the real part first so sin(pi*x) stays accurate
    x = math.fmod(z.real, 2.0)
    y = math.pi * z.imag
    return complex(
        math.sin(math.pi * x) * math.cosh(y), math.cos(math.pi * x) * math.sinh(y)
    )


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    Upward recurrence to Re(z) >= 15 followed by Stirling's series; the
    reflection formula covers Re(z) < 0.5.  The recurrence subtracts principal
    logs one factor at a time, which keeps the result on the branch that is
    continuous off the negative real axis.
    """
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"log_gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        # 2*pi*i correction keeps the branch continuous across Re(z) = 0.5
        shift = math.copysign(2 * math.pi, z.imag) * math.floor(0.5 * z.real + 0.25)
        return complex(_LOG_PI, shift) - cmath.log(_sinpi(z)) - log_gamma(1 - z)
    if z == 1 or z == 2:
        return 0j
    acc = 0j
    while z.real < _STIRLING_MIN:
        acc += cmath.log(z)
        z += 1
    return _stirling(z) - acc


def gamma(z) -> complex:
    return cmath.exp(log_gamma(z))


def log_gamma_ratio_term(N: int, n: int) -> float:
    """log of gamma_ratio_term(N, n); finite for any n, unlike the ratio itself."""
    if N < 2 or n < 0:
        raise ValueError("need N >= 2 and n >= 0")
    if n == 0:
        return 0.0
    m = N - 1
    lg = (
        log_gamma(Fraction(N * n, m) + 1)
        - log_gamma(n + 2)
        - log_gamma(Fraction(n, m) + 1)
    )
    return lg.real


def gamma_ratio_term(N: int, n: int) -> float:
    """Gamma(N n/(N-1) + 1) / (Gamma(n + 2) Gamma(n/(N-1) + 1)).

    The n-th coefficient of the Lagrange series for the trinomial root.  It
    grows like (N**(N/(N-1)) / (N-1))**n and overflows a double near n = 500
    for N = 2; callers summing long series should use log_gamma_ratio_term.
    """
    return math.exp(log_gamma_ratio_term(N, n))


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**6)
    return Fraction(x)


def _format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of pFq(upper; lower; argument).

    Parameters are exact rationals kept in ascending order, so two specs with
    the same parameter multisets compare equal.
    """

    upper: tuple
    lower: tuple
    argument: complex = 0j

    def __post_init__(self):
        upper = tuple(sorted(_rational(a) for a in self.upper))
        lower = tuple(sorted(_rational(b) for b in self.lower))
        for b in lower:
            if b <= 0 and b.denominator == 1:
                raise PoleError(f"lower parameter {b} is a nonpositive integer")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "argument", complex(self.argument))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def with_argument(self, z) -> "HypergeometricSpec":
        return HypergeometricSpec(self.upper, self.lower, z)

    def cancelled(self) -> "HypergeometricSpec":
        """Drop parameters that appear in both lists, one pair at a time."""
        lower = list(self.lower)
        upper = []
        for a in self.upper:
            if a in lower:
                lower.remove(a)
            else:
                upper.append(a)
        return HypergeometricSpec(tuple(upper), tuple(lower), self.argument)

    def terminating_degree(self):
        """Index of the last nonzero term if some upper parameter is -m, else None."""
        degrees = [-a for a in self.upper if a <= 0 and a.denominator == 1]
        return int(min(degrees)) if degrees else None

    def label(self, argument: str = "z") -> str:
        up = ", ".join(_format_rational(a) for a in self.upper)
        lo = ", ".join(_format_rational(b) for b in self.lower)
        prefix = f"{self.p}".translate(_SUBSCRIPTS) + "F" + f"{self.q}".translate(_SUBSCRIPTS)
        return f"{prefix}({up}; {lo}; {argument})"


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_estimate: float
    converged: bool


def tail_bound(last_term: float, ratio: float, remaining: int) -> float:
    """Geometric bound on what is left of a series after ``last_term``.

    Falls back to ``last_term * remaining`` when the terms are not decaying.
    """
    if ratio < 1:
        return last_term * ratio / (1 - ratio)
    return last_term * max(remaining, 1)


def pfq_terms(spec: HypergeometricSpec, count: int):
    """First ``count`` terms of the pFq series by the term-ratio recurrence."""
    upper = [float(a) for a in spec.upper]
    lower = [float(b) for b in spec.lower]
    z = spec.argument
    term = 1 + 0j
    out = []
    for k in range(count):
        out.append(term)
        term = term * _ratio(upper, lower, k) * z / (k + 1)
    return out


def _ratio(upper, lower, k):
    num = 1.0
    for a in upper:
        num *= a + k
    den = 1.0
    for b in lower:
        den *= b + k
    return num / den


def pfq(spec: HypergeometricSpec, tol: float = 1e-12, max_terms: int = 100_000) -> SeriesResult:
    """Sum the generalized hypergeometric series of ``spec``.

    Stops when the geometric tail bound drops to ``tol`` (absolute); a
    terminating series is summed through its last term.  For p = q + 1 the observed term
    ratio is floored at |z|, its limit, so a ratio still climbing towards |z|
    cannot fake an early stop.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = spec.argument
    p, q = spec.p, spec.q
    last = spec.terminating_degree()
    if z == 0:
        return SeriesResult(1 + 0j, 1, 0.0, True)
    if last is None:
        if p > q + 1:
            raise DivergenceError(f"{spec.label()} diverges for every z != 0")
        if p == q + 1:
            excess = sum(spec.lower) - sum(spec.upper)
            if abs(z) > 1 or (abs(z) == 1 and excess <= 0):
                raise DivergenceError(
                    f"{spec.label()} needs |z| < 1, got |z| = {abs(z):.6g}"
                )
    limit = abs(z) if p == q + 1 else 0.0

    upper = [float(a) for a in spec.upper]
    lower = [float(b) for b in spec.lower]
    total = 0j
    term = 1 + 0j
    k = 0
    while True:
        total += term
        used = k + 1
        if last is not None and k == last:
            return SeriesResult(total, used, 0.0, True)
        nxt = term * _ratio(upper, lower, k) * z / (k + 1)
        if last is None:
            size = abs(term)
            ratio = max(abs(nxt) / size, limit) if size else limit
            tail = tail_bound(size, ratio, max_terms - used)
            if tail <= tol:
                return SeriesResult(total, used, tail, True)
        else:
            # polynomial: no geometric tail to trust, sum every term
            tail = abs(nxt) * (last - k)
        if used >= max_terms:
            partial = SeriesResult(total, used, tail, False)
            raise NonConvergenceError(
                f"{spec.label()} not converged after {used} terms "
                f"(tail {tail:.3g} > {tol:.3g})",
                partial=partial,
            )
        term = nxt
        k += 1
