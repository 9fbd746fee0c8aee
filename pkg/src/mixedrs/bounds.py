"""Upper bounds on code parameters and the optimality classification.

All quantities are exact rationals (:class:`fractions.Fraction`); the
optimality thresholds sit right next to integers, where floating point
would misclassify.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .construction import CodeSpec, min_distance

DIMENSION_OPTIMAL = "dimension_optimal"
DISTANCE_OPTIMAL_ONLY = "distance_optimal_only"
NEITHER = "neither"
SUPERDENSE_REGIME = "superdense_regime"

SINGLETON_LINE = "singleton_line"
BLOCK_ACHIEVABLE = "block_achievable"
QUANTUM_BOUND = "quantum_bound"


def _check_nd(n: int, d: int):
    if n < 1 or not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")


def singleton_bound(n: int, d: int) -> int:
    """Largest k with d <= n - k + 1."""
    _check_nd(n, d)
    return n - d + 1


def block_error_bound(n: int, d: int, n1: int, n2: int) -> int:
    """Largest k when each extension coordinate is a block of two base symbols."""
    _check_nd(n, d)
    if n1 < 0 or n2 < 0 or n1 + n2 != n:
        raise ValueError(f"need n1 + n2 = n, got {n1} + {n2} != {n}")
    if n2 >= d - 1:
        return 2 * (n2 - (d - 1)) + n1
    return n - d + 1


def _check_nc(n: int, c: int):
    if n < 1 or not 0 <= c <= n:
        raise ValueError(f"need n >= 1 and 0 <= c <= n, got n={n}, c={c}")


def quantum_bound(n: int, d: int, c: int) -> Fraction:
    """Upper bound (n - d + 1)(1 + c/n) on k."""
    _check_nc(n, c)
    return (n - d + 1) * (1 + Fraction(c, n))


def quantum_bound_d(n: int, k: int, c: int) -> Fraction:
    """Upper bound n + 1 - k n / (n + c) on d."""
    _check_nc(n, c)
    return n + 1 - Fraction(k * n, n + c)


def feasible_t_interval(n: int, k: int, d: int, c: int) -> tuple[Fraction, Fraction] | None:
    """Set of t in [0, 1] satisfying the three linear constraints, or None.

    Constraints: k <= (n-d+1)(1+t);  -c <= (n-2d+2) t;  k-c <= (n-d+1) - t(d-1).
    Each is ``a*t >= b`` for some a, b and cuts [0, 1] to a sub-interval.
    """
    _check_nc(n, c)
    lo, hi = Fraction(0), Fraction(1)
    for a, b in (
        (n - d + 1, k - (n - d + 1)),
        (n - 2 * d + 2, -c),
        (-(d - 1), (k - c) - (n - d + 1)),
    ):
        if a > 0:
            lo = max(lo, Fraction(b, a))
        elif a < 0:
            hi = min(hi, Fraction(b, a))
        elif b > 0:
            return None
    if lo > hi:
        return None
    return lo, hi


def quantum_feasible(n: int, k: int, d: int, c: int) -> bool:
    return feasible_t_interval(n, k, d, c) is not None


def gamma_delta(n: int, k: int, d: int, c: int) -> tuple[Fraction, Fraction]:
    """Slack of k below the quantum bound and of d below its distance form."""
    return quantum_bound(n, d, c) - k, quantum_bound_d(n, k, c) - d


def classify_gamma_delta(n: int, k: int, d: int, c: int) -> str:
    """Optimality class from the slacks alone (requires n > c)."""
    _, delta = gamma_delta(n, k, d, c)
    if delta < Fraction(n, n + c):
        return DIMENSION_OPTIMAL
    if delta < 1:
        return DISTANCE_OPTIMAL_ONLY
    return NEITHER


def entangled_distance(n: int, k: int, c: int) -> int:
    """Distance ceil((n-k+1+c)/2) of the construction when n1 < k-1."""
    return -(-(n - k + 1 + c) // 2)


def classify_thresholds(n: int, k: int, d: int, c: int) -> str:
    """Optimality class from closed-form thresholds on k (requires n > c).

    When d is the entanglement-regime distance ceil((n-k+1+c)/2) the
    thresholds depend on the parity of n-k+1+c; when d = n-k+1 they reduce
    to k*c < n (dimension) and k*c < n+c (distance).
    """
    if n <= c:
        raise ValueError("threshold classification needs n > c")
    if d == entangled_distance(n, k, c):
        if (n - k + 1 + c) % 2 == 1:
            dist_ok = k > n + c - Fraction(2 * (n + c), n - c)
            dim_ok = k > n + c - Fraction(2 * n, n - c)
        else:
            dist_ok = k > Fraction((n + c) * (n - c - 1), n - c)
            dim_ok = k > n + c - 1
    elif d == n - k + 1:
        dist_ok = k * c < n + c
        dim_ok = k * c < n
    else:
        raise ValueError(f"no closed form for d={d} at n={n}, k={k}, c={c}")
    if dim_ok:
        return DIMENSION_OPTIMAL
    if dist_ok:
        return DISTANCE_OPTIMAL_ONLY
    return NEITHER


def classify_parameters(n: int, k: int, d: int, c: int) -> str:
    if c == n:
        return SUPERDENSE_REGIME
    direct = classify_gamma_delta(n, k, d, c)
    if d in (entangled_distance(n, k, c), n - k + 1):
        closed = classify_thresholds(n, k, d, c)
        assert direct == closed, f"classification routes disagree at {(n, k, d, c)}: {direct} vs {closed}"
    return direct


def classify_optimality(spec: CodeSpec) -> str:
    return classify_parameters(spec.n, spec.k, min_distance(spec), spec.c)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    k: int
    d: int
    c: int
    singleton_k: int
    block_k: int
    quantum_k: Fraction
    quantum_d: Fraction
    gamma: Fraction
    delta: Fraction
    t_star: Fraction
    optimality: str


def bounds_report(n: int, k: int, d: int, c: int, n1: int | None = None, n2: int | None = None) -> BoundsReport:
    if n2 is None:
        n2 = c
    if n1 is None:
        n1 = n - n2
    gamma, delta = gamma_delta(n, k, d, c)
    return BoundsReport(
        n=n,
        k=k,
        d=d,
        c=c,
        singleton_k=singleton_bound(n, d),
        block_k=block_error_bound(n, d, n1, n2),
        quantum_k=quantum_bound(n, d, c),
        quantum_d=quantum_bound_d(n, k, c),
        gamma=gamma,
        delta=delta,
        t_star=Fraction(c, n),
        optimality=classify_parameters(n, k, d, c),
    )


def report_for_spec(spec: CodeSpec) -> BoundsReport:
    return bounds_report(spec.n, spec.k, min_distance(spec), spec.c, spec.n1, spec.n2)


# -- asymptotic rate / distance tradeoff ------------------------------------------

@dataclass(frozen=True)
class TradeoffPoint:
    delta_norm: Fraction
    rate: Fraction
    series: str
    e: Fraction


def block_achievable_rate(delta: Fraction, e: Fraction) -> Fraction:
    """Asymptotic rate of the construction with a fraction e of extension points."""
    return max(Fraction(0), 1 - delta, 1 + e - 2 * delta)


def tradeoff_curve(e, resolution: int = 100) -> list[TradeoffPoint]:
    """Singleton line, achievable rate and quantum bound on a grid of d/n values."""
    e = Fraction(e)
    if not 0 <= e <= 1:
        raise ValueError(f"entanglement fraction e={e} outside [0, 1]")
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    points = []
    for i in range(resolution + 1):
        delta = Fraction(i, resolution)
        points.append(TradeoffPoint(delta, 1 - delta, SINGLETON_LINE, e))
        points.append(TradeoffPoint(delta, block_achievable_rate(delta, e), BLOCK_ACHIEVABLE, e))
        points.append(TradeoffPoint(delta, (1 - delta) * (1 + e), QUANTUM_BOUND, e))
    return points
