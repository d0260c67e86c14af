"""One-sided confidence contours for empirical distribution functions.

The stock policy never runs short exactly when the empirical CDF of the n
delivery times, shifted up by the relative initial stock ``epsilon`` and
capped at 1, stays above the demand CDF on the whole horizon.  For a
continuous demand CDF that event has a distribution-free probability, the
classical Birnbaum-Tingey closed form

    P(n, eps) = 1 - eps * sum_{j=0}^{floor(n(1-eps))}
                C(n,j) * (1 - eps - j/n)**(n-j) * (eps + j/n)**(j-1)

This module evaluates the closed form in log space, inverts it in eps by
bisection, provides the empirical-CDF helpers, and carries a brute-force
Monte Carlo oracle against which the closed form is validated.
"""

from __future__ import annotations

import bisect
import math
import operator
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from ._streams import chunk_sizes, substream

__all__ = [
    "ContourQuery",
    "SamplePath",
    "OracleEstimate",
    "p_of_epsilon",
    "epsilon_of_p",
    "empirical_cdf",
    "upper_contour",
    "mc_oracle_p",
]

# Relative slack applied to n*(1-eps) before flooring: eps values coming out
# of bisection can sit a few ulps below a breakpoint of the summation index.
_FLOOR_RTOL = 1e-12

# Bisection bracket and stopping width for epsilon_of_p.
_BRACKET_LO = 1e-12
_WIDTH_TOL = 1e-10
_MAX_BISECT = 200


def _check_count(n: object, name: str = "n") -> int:
    try:
        value = operator.index(n)
    except TypeError:
        raise ValueError(f"{name} must be a positive integer, got {n!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value}")
    return value


@dataclass(frozen=True)
class ContourQuery:
    """Sample size and band width of a one-sided contour evaluation."""

    n: int
    epsilon: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", _check_count(self.n))
        eps = float(self.epsilon)
        if not (0.0 < eps <= 1.0) or math.isnan(eps):
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon!r}")
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class SamplePath:
    """Delivery times sorted ascending on [0, horizon].

    The sentinels t_0 = 0 and t_{n+1} = +inf are implied, never stored.
    """

    times: tuple[float, ...]
    horizon: float

    def __post_init__(self) -> None:
        times = tuple(float(t) for t in self.times)
        horizon = float(self.horizon)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "horizon", horizon)
        if not times:
            raise ValueError("a sample path needs at least one delivery time")
        if not horizon > 0.0:
            raise ValueError(f"horizon must be positive, got {horizon!r}")
        prev = 0.0
        for t in times:
            if not (0.0 <= t <= horizon):
                raise ValueError(f"delivery time {t!r} outside [0, {horizon}]")
            if t < prev:
                raise ValueError("delivery times must be sorted ascending")
            prev = t

    @property
    def n(self) -> int:
        return len(self.times)


class OracleEstimate(NamedTuple):
    """Monte Carlo probability estimate with its binomial standard error."""

    probability: float
    std_error: float
    trials: int
    successes: int


def p_of_epsilon(n: int, epsilon: float) -> float:
    """Probability that the eps-shifted empirical CDF of n draws majorizes
    the true (continuous) CDF everywhere.

    Each summand is evaluated as exp of a log-space product, with the
    leading eps factor folded in, so that n up to 1e4 stays accurate to
    at least 10 significant digits.  A summand whose (1 - eps - j/n) base
    lands on or below zero is exactly zero because its exponent n - j >= 1.
    """
    q = ContourQuery(n, epsilon)
    n, eps = q.n, q.epsilon
    if eps == 1.0:
        return 1.0
    m = min(int(math.floor(n * (1.0 - eps) * (1.0 + _FLOOR_RTOL))), n - 1)
    j = np.arange(m + 1, dtype=float)
    shortfall = 1.0 - eps - j / n
    cover = eps + j / n
    log_comb = gammaln(n + 1.0) - gammaln(j + 1.0) - gammaln(n - j + 1.0)
    with np.errstate(divide="ignore"):
        log_terms = (
            math.log(eps)
            + log_comb
            + (n - j) * np.log(np.maximum(shortfall, 0.0))
            + (j - 1.0) * np.log(cover)
        )
    terms = np.where(shortfall > 0.0, np.exp(log_terms), 0.0)
    p = 1.0 - math.fsum(terms.tolist())
    # Guards sub-ulp rounding excursions only; the sum itself lies in [0, 1].
    return min(1.0, max(0.0, p))


def epsilon_of_p(n: int, p: float) -> float:
    """Band width eps such that p_of_epsilon(n, eps) = p.

    P(n, .) is continuous and increasing on (0, 1] with limits 0 and 1, so
    plain bisection converges unconditionally; no derivative is needed.
    """
    n = _check_count(n)
    p = float(p)
    if not (0.0 < p < 1.0) or math.isnan(p):
        raise ValueError(f"p must lie strictly inside (0, 1), got {p!r}")
    lo, hi = _BRACKET_LO, 1.0
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if p_of_epsilon(n, mid) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < _WIDTH_TOL:
            break
    return 0.5 * (lo + hi)


def empirical_cdf(path: SamplePath, t: float) -> float:
    """Fraction of delivery times <= t; exactly 1 from the horizon onward."""
    if t >= path.horizon:
        return 1.0
    return bisect.bisect_right(path.times, t) / path.n


def upper_contour(path: SamplePath, epsilon: float, t: float) -> float:
    """Empirical CDF shifted up by epsilon and capped at 1."""
    eps = float(epsilon)
    if not (0.0 < eps <= 1.0) or math.isnan(eps):
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon!r}")
    return min(empirical_cdf(path, t) + eps, 1.0)


def mc_oracle_p(n: int, epsilon: float, trials: int, seed: int = 0) -> OracleEstimate:
    """Brute-force estimate of p_of_epsilon from sorted uniform samples.

    Draws `trials` sets of n independent uniforms and counts the sets whose
    k-th order statistic u_(k) satisfies u_(k) - (k-1)/n <= eps for every k.
    The supremum of F - Z over t is attained at left limits of the jump
    points of Z, which reduces the whole-contour comparison to that
    per-order-statistic check.

    Deterministic for fixed (n, epsilon, trials, seed) regardless of how
    chunks would be scheduled: each chunk draws from its own keyed stream.
    """
    q = ContourQuery(n, epsilon)
    trials = _check_count(trials, "trials")
    offsets = np.arange(q.n, dtype=float) / q.n
    successes = 0
    for index, size in enumerate(chunk_sizes(trials)):
        u = substream(seed, index).random((size, q.n))
        u.sort(axis=1)
        successes += int(np.all(u - offsets <= q.epsilon, axis=1).sum())
    probability = successes / trials
    std_error = math.sqrt(probability * (1.0 - probability) / trials)
    return OracleEstimate(probability, std_error, trials, successes)
