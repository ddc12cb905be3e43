"""Exact distribution math for the row-coverage process.

The model: an n x p matrix whose entries are nonzero independently with
probability theta.  A row is covered once it holds at least one nonzero
entry, and the cover time T is the smallest column count at which every
row is covered.  Rows evolve independently, so T is the maximum of n
i.i.d. geometric(theta) variables and everything here follows from

    P(T <= p) = (1 - (1-theta)^p)^n,
    E[T]      = sum_{t >= 0} [1 - (1 - (1-theta)^t)^n].

Two further expectations are exposed for comparison.  The phase sum walks
the process one newly-covered-row phase at a time; a single column can
cover several rows at once, so it upper-bounds E[T].  The classic harmonic
sum n * H_n is the theta -> degenerate coupon-collector reference where
each column covers exactly one uniformly random row.

All quantities are evaluated in a form that survives extreme parameters:
(1-theta)^k goes through exp(k * log1p(-theta)), complements of the form
1 - (1-theta)^k go through expm1, and when (1-theta)^n underflows the
binomial inner sums switch to log space.  Functions are pure and raise
DomainError on invalid input.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "SparsityModel",
    "CoverTimeSummary",
    "classic_harmonic_sum",
    "phase_sum_raw",
    "phase_sum_expectation",
    "exact_expected_cover_time",
    "inclusion_exclusion_expectation",
    "coverage_probability",
    "cover_time_pmf",
    "coverage_threshold",
]

# Below this value of n * log1p(-theta) the linear-space binomial recurrence
# would multiply through a subnormal (1-theta)^n; switch to log space there.
_UNDERFLOW_LOG = -700.0

# Inclusion-exclusion alternates terms of size ~2^n, so for large n the
# cancellation destroys every significant digit.  Cap where doubles still
# leave ~7 digits (2^30 / 2^53).
_INCLUSION_EXCLUSION_MAX_N = 30


def _checked_int(value: object, name: str, minimum: int) -> int:
    try:
        result = operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {value!r}") from None
    if result < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {result}")
    return result


@dataclass(frozen=True, slots=True)
class SparsityModel:
    """An n-row Bernoulli sparsity pattern with entry density theta.

    n must be a positive integer and theta must lie in (0, 1].  theta = 1
    is the dense limit: every entry is nonzero and one column covers all
    rows.
    """

    n: int
    theta: float

    def __post_init__(self) -> None:
        n = _checked_int(self.n, "n", 1)
        theta = float(self.theta)
        if not math.isfinite(theta) or not 0.0 < theta <= 1.0:
            raise DomainError(f"theta must lie in (0, 1], got {theta!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "theta", theta)


@dataclass(frozen=True, slots=True)
class CoverTimeSummary:
    """Expected cover time computed three ways.

    exact_expectation is the truncated tail sum with truncation error at
    most truncation_error_bound; phase_sum is the phase-decomposition upper
    bound; classic_reference is n * H_n, the one-row-per-column baseline.
    """

    exact_expectation: float
    phase_sum: float
    classic_reference: float
    truncation_error_bound: float

    def __post_init__(self) -> None:
        for name in ("exact_expectation", "phase_sum", "classic_reference"):
            value = getattr(self, name)
            if not value >= 1.0:
                raise DomainError(f"{name} must be >= 1, got {value!r}")
        if not self.truncation_error_bound >= 0.0:
            raise DomainError(
                f"truncation_error_bound must be >= 0, got {self.truncation_error_bound!r}"
            )


def _complement_power(theta: float, k: int, log_q: float) -> float:
    # 1 - (1-theta)^k; k = 1 is exactly theta, larger k keep relative
    # precision through expm1 even when (1-theta)^k is close to 1.
    if k == 1:
        return theta
    return -math.expm1(k * log_q)


def classic_harmonic_sum(n: int) -> float:
    """n * H_n as the sum over k < n of 1 / (1 - k/n).

    Each term is evaluated as n / (n - k), which is the same ratio with the
    integer cancellation done exactly, so small n come out bit-clean
    (classic_harmonic_sum(3) == 5.5).
    """
    n = _checked_int(n, "n", 1)
    return math.fsum(n / (n - k) for k in range(n))


def _inner_complement_linear(n: int, k: int, theta: float) -> float:
    # 1 - sum_{r=0}^{k} C(k,r) theta^r (1-theta)^(n-r), built by the ratio
    # recurrence term_{r+1} = term_r * (k-r)/(r+1) * theta/(1-theta).
    # Requires (1-theta)^n representable; the caller checks that.
    q = 1.0 - theta
    ratio = theta / q
    term = q**n
    terms = [term]
    for r in range(k):
        term *= (k - r) / (r + 1) * ratio
        terms.append(term)
    return 1.0 - math.fsum(terms)


def _inner_complement_log(n: int, k: int, theta: float) -> float:
    # Same sum with each term computed as exp(log C(k,r) + r log theta
    # + (n-r) log(1-theta)), combined by logsumexp; complement via expm1.
    log_theta = math.log(theta)
    log_q = math.log1p(-theta)
    logs = [
        math.lgamma(k + 1)
        - math.lgamma(r + 1)
        - math.lgamma(k - r + 1)
        + r * log_theta
        + (n - r) * log_q
        for r in range(k + 1)
    ]
    peak = max(logs)
    if peak == -math.inf:
        return 1.0
    log_sum = peak + math.log(math.fsum(math.exp(v - peak) for v in logs))
    return -math.expm1(log_sum)


def phase_sum_raw(model: SparsityModel) -> float:
    """Phase-decomposition expectation in its unreduced binomial form.

    For each phase k (k rows already covered) the expected number of
    columns spent is 1 / (1 - P[no new row covered]), with the no-progress
    probability written as sum_{r=0}^{k} C(k,r) theta^r (1-theta)^(n-r).
    The sum over k = 0 .. n-1 of those waits is returned.
    """
    n, theta = model.n, model.theta
    if theta == 1.0:
        return float(n)
    inner = (
        _inner_complement_log
        if n * math.log1p(-theta) < _UNDERFLOW_LOG
        else _inner_complement_linear
    )
    return math.fsum(1.0 / inner(n, k, theta) for k in range(n))


def phase_sum_expectation(model: SparsityModel) -> float:
    """Collapsed form of phase_sum_raw: sum_{k=1}^{n} 1 / (1 - (1-theta)^k).

    The binomial inner sum in phase_sum_raw telescopes to (1-theta)^(n-k),
    so both functions compute the same number; this one in O(n) stable
    operations.
    """
    n, theta = model.n, model.theta
    if theta == 1.0:
        return float(n)
    log_q = math.log1p(-theta)
    return math.fsum(1.0 / _complement_power(theta, k, log_q) for k in range(1, n + 1))


def exact_expected_cover_time(model: SparsityModel, tol: float = 1e-10) -> CoverTimeSummary:
    """E[T] by the truncated tail sum, bundled with its reference values.

    The tail sum_{t > T} [1 - (1 - (1-theta)^t)^n] is at most
    n (1-theta)^(T+1) / theta, so the horizon is grown until that bound
    drops to tol; the bound actually achieved is reported in
    truncation_error_bound.
    """
    tol = float(tol)
    if not tol > 0.0 or not math.isfinite(tol):
        raise DomainError(f"tol must be a positive finite float, got {tol!r}")
    n, theta = model.n, model.theta
    phase = phase_sum_expectation(model)
    classic = classic_harmonic_sum(n)
    if theta == 1.0:
        return CoverTimeSummary(1.0, phase, classic, 0.0)

    log_q = math.log1p(-theta)
    target = math.log(tol) + math.log(theta) - math.log(n)
    horizon = max(0, math.ceil(target / log_q) - 1)

    def tail_bound(t: int) -> float:
        return n * math.exp((t + 1) * log_q) / theta

    while tail_bound(horizon) > tol:
        horizon += 1

    summands = []
    for t in range(horizon + 1):
        q_t = math.exp(t * log_q)
        if q_t >= 1.0:
            summands.append(1.0)
        else:
            summands.append(-math.expm1(n * math.log1p(-q_t)))
    return CoverTimeSummary(math.fsum(summands), phase, classic, tail_bound(horizon))


def inclusion_exclusion_expectation(model: SparsityModel) -> float:
    """E[T] as sum_{k=1}^{n} (-1)^(k+1) C(n,k) / (1 - (1-theta)^k).

    The alternating terms reach size ~2^n before cancelling, so this is a
    cross-check for small n only; n beyond 30 is refused rather than
    returning digits that are mostly cancellation noise.
    """
    n, theta = model.n, model.theta
    if n > _INCLUSION_EXCLUSION_MAX_N:
        raise DomainError(
            f"inclusion-exclusion loses all precision for n = {n} > "
            f"{_INCLUSION_EXCLUSION_MAX_N}; use exact_expected_cover_time"
        )
    if theta == 1.0:
        return 1.0
    log_q = math.log1p(-theta)
    terms = []
    sign = 1.0
    for k in range(1, n + 1):
        terms.append(sign * math.comb(n, k) / _complement_power(theta, k, log_q))
        sign = -sign
    return math.fsum(terms)


def coverage_probability(model: SparsityModel, p: int) -> float:
    """P(every row covered within p columns) = (1 - (1-theta)^p)^n."""
    p = _checked_int(p, "p", 0)
    n, theta = model.n, model.theta
    if p == 0:
        return 0.0
    if theta == 1.0:
        return 1.0
    q_p = math.exp(p * math.log1p(-theta))
    return math.exp(n * math.log1p(-q_p))


def cover_time_pmf(model: SparsityModel, t: int) -> float:
    """P(T = t) as the difference of consecutive coverage probabilities."""
    t = _checked_int(t, "t", 1)
    return coverage_probability(model, t) - coverage_probability(model, t - 1)


def coverage_threshold(model: SparsityModel, delta: float) -> int:
    """Smallest p with coverage_probability(model, p) >= 1 - delta.

    The closed form p* = ceil(log(1 - (1-delta)^(1/n)) / log(1-theta)) is
    taken as a candidate and then nudged by direct evaluation, so the
    returned p* satisfies the defining inequalities even when the float
    candidate lands one off.
    """
    delta = float(delta)
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta!r}")
    n, theta = model.n, model.theta
    if theta == 1.0:
        return 1
    # 1 - (1-delta)^(1/n) without cancellation: -expm1(log1p(-delta)/n).
    per_row_tail = -math.expm1(math.log1p(-delta) / n)
    candidate = max(1, math.ceil(math.log(per_row_tail) / math.log1p(-theta)))
    threshold = 1.0 - delta
    while coverage_probability(model, candidate) < threshold:
        candidate += 1
    while candidate > 1 and coverage_probability(model, candidate - 1) >= threshold:
        candidate -= 1
    return candidate
