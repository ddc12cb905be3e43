"""Seeded Monte Carlo verification of the closed-form coverage quantities.

Estimators here sample the same Bernoulli row-sparsity process the
coverage module describes analytically: cover times, coverage
probabilities at fixed column counts, and whole phase curves over a range
of p.  Every estimate carries a 95% confidence interval (Wilson score for
proportions, normal approximation for means) and the seed that produced
it.

Reproducibility contract: each trial's stream is a pure function of
(seed, trial index) and each sweep point's sub-seed of (seed, p), via the
stream-derivation scheme in _streams.  Identical (model, trials, seed)
therefore give bit-identical estimates no matter how trials are chunked
or parallelized.

Only the sparsity indicator pattern is sampled here; coverage does not
depend on the nonzero values themselves.  Value sampling belongs to the
omf module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _streams
from .coverage import SparsityModel, coverage_probability
from .errors import DomainError

__all__ = [
    "Z95",
    "MonteCarloEstimate",
    "PhasePoint",
    "PhaseCurve",
    "sample_cover_time",
    "sample_indicator_pattern",
    "estimate_expected_cover_time",
    "estimate_coverage_probability",
    "phase_sweep",
]

# Two-sided 95% standard-normal quantile, pinned so intervals are
# bit-reproducible without a scipy dependency.
Z95 = 1.959963984540054


@dataclass(frozen=True, slots=True)
class MonteCarloEstimate:
    """A mean with its 95% confidence interval and provenance.

    seed is the exact seed the estimator consumed, so any estimate can be
    reproduced from its own fields.
    """

    mean: float
    std_error: float
    ci_low: float
    ci_high: float
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not self.std_error >= 0.0:
            raise DomainError(f"std_error must be >= 0, got {self.std_error!r}")
        if not self.ci_low <= self.mean <= self.ci_high:
            raise DomainError(
                f"confidence interval [{self.ci_low!r}, {self.ci_high!r}] "
                f"does not contain mean {self.mean!r}"
            )


@dataclass(frozen=True, slots=True)
class PhasePoint:
    """One sweep point: column count, empirical estimate, closed form."""

    p: int
    empirical: MonteCarloEstimate
    analytic: float


@dataclass(frozen=True, slots=True)
class PhaseCurve:
    """Coverage probability versus column count for one model."""

    model: SparsityModel
    points: tuple[PhasePoint, ...]

    def __post_init__(self) -> None:
        for before, after in zip(self.points, self.points[1:]):
            if after.p <= before.p:
                raise DomainError("sweep points must be strictly increasing in p")
            if after.analytic < before.analytic:
                raise DomainError("analytic coverage must be nondecreasing in p")


def sample_cover_time(
    model: SparsityModel,
    stream: np.random.Generator,
    *,
    column_process: bool = False,
) -> int:
    """One cover time: columns until every row has seen a nonzero entry.

    The default samples each row's first-success column directly (the
    cover time is the max of n geometric(theta) variables) in O(n).  With
    column_process=True the column-by-column process is simulated
    literally as a model-fidelity cross-check; the two draw from different
    stream positions but identical distributions.
    """
    n, theta = model.n, model.theta
    if not column_process:
        return int(stream.geometric(theta, size=n).max())
    covered = np.zeros(n, dtype=bool)
    columns = 0
    while not covered.all():
        covered |= stream.random(n) < theta
        columns += 1
    return columns


def sample_indicator_pattern(model: SparsityModel, p: int, seed: int) -> np.ndarray:
    """The n x p Boolean sparsity pattern for (model, p, seed).

    This is the package-wide pattern law: the omf module's sparse matrices
    place their nonzeros at exactly these positions for the same inputs.
    """
    if p < 0:
        raise DomainError(f"p must be >= 0, got {p}")
    seed = _streams.checked_seed(seed)
    stream = _streams.spawn_generator(seed, _streams.PATTERN)
    return stream.random((model.n, p)) < model.theta


def _normal_interval(mean: float, std_error: float) -> tuple[float, float]:
    return mean - Z95 * std_error, mean + Z95 * std_error


def _wilson_interval(hits: int, trials: int) -> tuple[float, float]:
    # Wilson score interval; stays inside [0, 1] and behaves at 0/1 hits.
    # Clamped to contain the point estimate, which it does mathematically
    # but not always by the last ulp.
    phat = hits / trials
    z_sq = Z95 * Z95
    denom = 1.0 + z_sq / trials
    center = (phat + z_sq / (2.0 * trials)) / denom
    half = Z95 * math.sqrt(
        phat * (1.0 - phat) / trials + z_sq / (4.0 * trials * trials)
    ) / denom
    low = max(0.0, min(center - half, phat))
    high = min(1.0, max(center + half, phat))
    return low, high


def estimate_expected_cover_time(
    model: SparsityModel, trials: int, seed: int
) -> MonteCarloEstimate:
    """Sample mean of `trials` independent cover times with a normal CI."""
    if trials < 2:
        raise DomainError(f"trials must be >= 2 for a confidence interval, got {trials}")
    seed = _streams.checked_seed(seed)
    values = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        stream = _streams.spawn_generator(seed, _streams.COVER_TRIAL, t)
        values[t] = sample_cover_time(model, stream)
    mean = float(values.mean())
    std_error = float(values.std(ddof=1)) / math.sqrt(trials)
    ci_low, ci_high = _normal_interval(mean, std_error)
    return MonteCarloEstimate(mean, std_error, ci_low, ci_high, trials, seed)


def estimate_coverage_probability(
    model: SparsityModel, p: int, trials: int, seed: int
) -> MonteCarloEstimate:
    """Fraction of n x p patterns with no all-zero row, with a Wilson CI."""
    if p < 0:
        raise DomainError(f"p must be >= 0, got {p}")
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    seed = _streams.checked_seed(seed)
    n, theta = model.n, model.theta
    hits = 0
    for t in range(trials):
        stream = _streams.spawn_generator(seed, _streams.COVERAGE_TRIAL, t)
        pattern = stream.random((n, p)) < theta
        if bool(pattern.any(axis=1).all()):
            hits += 1
    mean = hits / trials
    std_error = math.sqrt(mean * (1.0 - mean) / trials)
    ci_low, ci_high = _wilson_interval(hits, trials)
    return MonteCarloEstimate(mean, std_error, ci_low, ci_high, trials, seed)


def phase_sweep(
    model: SparsityModel, p_min: int, p_max: int, trials: int, seed: int
) -> PhaseCurve:
    """Empirical and analytic coverage for every p in [p_min, p_max].

    Each point runs estimate_coverage_probability under the sub-seed
    derived from (seed, p), so individual points can be reproduced in
    isolation and inserting or removing grid points never shifts the
    others.
    """
    if p_min < 0:
        raise DomainError(f"p_min must be >= 0, got {p_min}")
    if p_max < p_min:
        raise DomainError(f"range is inverted: p_min = {p_min}, p_max = {p_max}")
    seed = _streams.checked_seed(seed)
    points = []
    for p in range(p_min, p_max + 1):
        sub_seed = _streams.derive_seed(seed, _streams.SWEEP_POINT, p)
        empirical = estimate_coverage_probability(model, p, trials, sub_seed)
        points.append(PhasePoint(p, empirical, coverage_probability(model, p)))
    return PhaseCurve(model, tuple(points))
