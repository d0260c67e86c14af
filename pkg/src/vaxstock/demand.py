"""Cumulative demand curves for a single-wave vaccination campaign.

Uptake is modeled by the four-parameter sigmoid

    S(t) = a * arctan(b * (t - c)) / pi + d

fitted to a normalized cumulative series by least squares.  Downstream
code uses the truncated normalization G(t) = (S(t) - S(1)) / (S(T) - S(1)),
which is an exact CDF on [1, T]: G(1) = 0, G(T) = 1, strictly increasing.
Delivery times are sampled from G by inverse transform, so the sampling
distribution and the shortage-check demand curve are the same object by
construction.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import ConvergenceError, DataError, DegenerateSeriesError

__all__ = [
    "CumulativeSeries",
    "SigmoidParams",
    "FitReport",
    "normalize",
    "repair_monotonicity",
    "eval_sigmoid",
    "fit_sigmoid",
    "demand_fraction",
    "sample_delivery_time",
]

# Four free parameters need a handful of points to pin down; below this the
# simplex happily fits noise.
_MIN_FIT_POINTS = 8
_MAX_ITERATIONS = 2000


@dataclass(frozen=True)
class CumulativeSeries:
    """Cumulative uptake fractions on an increasing day axis starting at 1.

    Only the day axis is validated here.  Range properties of the values
    (non-negative, non-decreasing, ending at 1) are postconditions of
    `normalize` for pipeline data; fitted or synthetic series may step a
    little outside [0, 1] and remain legitimate fitting inputs.
    """

    days: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        try:
            days = tuple(operator.index(d) for d in self.days)
        except TypeError:
            raise DataError("days must be integers") from None
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "days", days)
        object.__setattr__(self, "values", values)
        if not days:
            raise DataError("series is empty")
        if len(days) != len(values):
            raise DataError("days and values differ in length")
        if days[0] != 1:
            raise DataError(f"day axis must start at 1, got {days[0]}")
        if any(b <= a for a, b in zip(days, days[1:])):
            raise DataError("days must be strictly increasing")
        if not all(math.isfinite(v) for v in values):
            raise DataError("series values must be finite")

    @property
    def horizon(self) -> int:
        return self.days[-1]

    def __len__(self) -> int:
        return len(self.days)


@dataclass(frozen=True)
class SigmoidParams:
    """a: vertical stretch, b: horizontal stretch (1/day), c: inflection
    day, d: vertical shift.  a > 0 and b > 0 keep S strictly increasing."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise ValueError(f"parameter {name} must be finite, got {value!r}")
        if self.a <= 0.0:
            raise ValueError(f"a must be positive, got {self.a}")
        if self.b <= 0.0:
            raise ValueError(f"b must be positive, got {self.b}")


@dataclass(frozen=True)
class FitReport:
    params: SigmoidParams
    sse: float
    rmse: float
    iterations: int


def repair_monotonicity(
    raw: Sequence[tuple[int, float]],
) -> tuple[list[tuple[int, float]], int]:
    """Running maximum over counts in day order.

    Cumulative counts cannot decrease; a dip is a reporting error.  Returns
    the repaired series and how many points had to be raised.
    """
    if not raw:
        raise DataError("series is empty")
    repaired: list[tuple[int, float]] = []
    corrected = 0
    peak = -math.inf
    for day, count in raw:
        count = float(count)
        if count < peak:
            count = peak
            corrected += 1
        else:
            peak = count
        repaired.append((day, count))
    return repaired, corrected


def normalize(raw: Sequence[tuple[int, float]]) -> CumulativeSeries:
    """Divide a monotone cumulative count series by its final total.

    Rejects non-monotone input (run repair_monotonicity first) and a zero
    final total.  The last fraction is 1.0 exactly.
    """
    if not raw:
        raise DataError("series is empty")
    days = tuple(day for day, _ in raw)
    counts = [float(count) for _, count in raw]
    for count in counts:
        if not math.isfinite(count) or count < 0.0:
            raise DataError(f"counts must be finite and non-negative, got {count!r}")
    if any(b < a for a, b in zip(counts, counts[1:])):
        raise DataError(
            "cumulative counts decrease; run repair_monotonicity before normalize"
        )
    total = counts[-1]
    if total <= 0.0:
        raise DataError("final cumulative count is zero; nothing to normalize")
    return CumulativeSeries(days, tuple(c / total for c in counts))


def eval_sigmoid(params: SigmoidParams, t):
    """S(t) = a * arctan(b * (t - c)) / pi + d, elementwise over arrays."""
    tt = np.asarray(t, dtype=float)
    out = params.a * np.arctan(params.b * (tt - params.c)) / math.pi + params.d
    if out.ndim == 0:
        return float(out)
    return out


def fit_sigmoid(
    series: CumulativeSeries,
    on_iteration: Callable[[float], None] | None = None,
) -> FitReport:
    """Least-squares fit of the arctan sigmoid to a cumulative series.

    Positivity of a and b is enforced by optimizing their logarithms with a
    derivative-free simplex search from a deterministic initialization: the
    inflection starts at the steepest observed rise, the shift at the series
    value there, and the horizontal stretch matches that slope through
    S'(c) = a*b/pi.  `on_iteration`, when given, receives the best objective
    value after each iteration (the trace never increases).

    Raises DegenerateSeriesError when the series carries no rising signal
    and ConvergenceError when the iteration cap is exhausted.
    """
    if len(series) < _MIN_FIT_POINTS:
        raise DataError(
            f"need at least {_MIN_FIT_POINTS} points to fit 4 parameters,"
            f" got {len(series)}"
        )
    days = np.asarray(series.days, dtype=float)
    y = np.asarray(series.values, dtype=float)
    if np.all(y == y[0]):
        raise DegenerateSeriesError("all series values are equal")

    rises = np.diff(y)
    steps = np.diff(days)
    slopes = rises / steps
    k = int(np.argmax(slopes))
    if slopes[k] <= 0.0:
        raise DegenerateSeriesError("series never increases")
    c0 = 0.5 * (days[k] + days[k + 1])
    d0 = float(np.interp(c0, days, y))
    a0 = 1.0
    b0 = math.pi * float(slopes[k]) / a0

    def objective(theta: np.ndarray) -> float:
        a, b, c, d = math.exp(theta[0]), math.exp(theta[1]), theta[2], theta[3]
        residuals = a * np.arctan(b * (days - c)) / math.pi + d - y
        return float(residuals @ residuals)

    callback = None
    if on_iteration is not None:
        callback = lambda xk: on_iteration(objective(xk))  # noqa: E731

    theta0 = np.array([math.log(a0), math.log(b0), c0, d0])
    result = minimize(
        objective,
        theta0,
        method="Nelder-Mead",
        callback=callback,
        options={
            "xatol": 1e-8,
            "fatol": 1e-12,
            "maxiter": _MAX_ITERATIONS,
            "maxfev": 4 * _MAX_ITERATIONS,
        },
    )
    if not result.success:
        raise ConvergenceError(
            f"sigmoid fit did not converge within {_MAX_ITERATIONS} iterations:"
            f" {result.message}"
        )
    params = SigmoidParams(
        math.exp(result.x[0]), math.exp(result.x[1]), result.x[2], result.x[3]
    )
    sse = float(result.fun)
    return FitReport(params, sse, math.sqrt(sse / len(series)), int(result.nit))


def _span(params: SigmoidParams, horizon: float) -> tuple[float, float]:
    horizon = float(horizon)
    if not horizon > 1.0:
        raise ValueError(f"horizon must exceed day 1, got {horizon!r}")
    s1 = eval_sigmoid(params, 1.0)
    sT = eval_sigmoid(params, horizon)
    if not sT > s1:
        raise ValueError("sigmoid is not increasing across [1, horizon]")
    return s1, sT


def demand_fraction(params: SigmoidParams, horizon: float, t):
    """G(t) = (S(t) - S(1)) / (S(T) - S(1)): the demand CDF on [1, T]."""
    s1, sT = _span(params, horizon)
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 1.0) or np.any(tt > float(horizon)):
        raise ValueError("t must lie within [1, horizon]")
    out = (params.a * np.arctan(params.b * (tt - params.c)) / math.pi
           + params.d - s1) / (sT - s1)
    if out.ndim == 0:
        return float(out)
    return out


def sample_delivery_time(params: SigmoidParams, horizon: float, u):
    """Inverse transform of demand_fraction: t with G(t) = u.

    With u' = S(1) + u*(S(T) - S(1)), returns t = c + tan(pi*(u'-d)/a)/b.
    u' lies strictly between S(1) and S(T), both inside the arctan range
    (d - a/2, d + a/2), so the tangent argument stays inside (-pi/2, pi/2);
    the result is clipped to [1, horizon] against ulp-level overshoot of
    the round trip.
    """
    s1, sT = _span(params, horizon)
    uu = np.asarray(u, dtype=float)
    if np.any(uu <= 0.0) or np.any(uu >= 1.0):
        raise ValueError("u must lie strictly inside (0, 1)")
    u_prime = s1 + uu * (sT - s1)
    x = math.pi * (u_prime - params.d) / params.a
    if np.any(np.abs(x) >= 0.5 * math.pi):
        raise ValueError("quantile falls outside the sigmoid's range")
    out = np.clip(params.c + np.tan(x) / params.b, 1.0, float(horizon))
    if out.ndim == 0:
        return float(out)
    return out
