"""Monte Carlo verification of stock policies against a fitted demand curve.

Scenarios are sets of n delivery times drawn from the fitted demand
distribution by inverse transform.  Each scenario is checked for shortage
with the same left-limit reduction the policy module uses; the success
ratio estimates the non-shortage probability.  Sweeps over the lot size
reuse one scenario set (common random numbers), which makes the resulting
probability column monotone by construction instead of up to noise.

Trials are drawn in fixed-size chunks, each from its own counter-keyed
stream, so results are bitwise deterministic regardless of how the chunks
would be scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._streams import chunk_sizes, substream
from .contour import SamplePath
from .demand import SigmoidParams, demand_fraction, sample_delivery_time
from .errors import DataError
from .policy import Policy

__all__ = [
    "SimulationConfig",
    "SimulationReport",
    "SweepRow",
    "generate_scenario",
    "estimate_probability",
    "sweep",
]

_FEAS_RTOL = 1e-9
# rng.random can land on 0.0 exactly; the inverse transform needs u > 0.
_U_FLOOR = 2.0**-53


@dataclass(frozen=True)
class SimulationConfig:
    """trials and seed fix the scenario set exactly; day_rounding switches
    from continuous delivery times to whole-day arrival."""

    trials: int = 10_000
    seed: int = 42
    day_rounding: bool = False

    def __post_init__(self) -> None:
        if int(self.trials) < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "day_rounding", bool(self.day_rounding))


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    non_shortage_count: int
    probability: float
    std_error: float


@dataclass(frozen=True)
class SweepRow:
    lot: float
    initial_stock: float
    probability: float
    std_error: float


def _binomial_se(p: float, trials: int) -> float:
    return math.sqrt(p * (1.0 - p) / trials)


def generate_scenario(
    n: int,
    params: SigmoidParams,
    horizon: float,
    rng: np.random.Generator,
    day_rounding: bool = False,
) -> SamplePath:
    """One scenario: n delivery times drawn from the demand distribution,
    sorted ascending.

    With day_rounding, each time is rounded up to the next whole day (a
    delivery "on day k" becomes available on day k, never earlier), capped
    at the horizon.
    """
    u = np.maximum(rng.random(int(n)), _U_FLOOR)
    times = np.asarray(sample_delivery_time(params, horizon, u))
    if day_rounding:
        times = np.minimum(np.ceil(times), float(horizon))
    times.sort()
    return SamplePath(tuple(times.tolist()), float(horizon))


def _sorted_demand(
    params: SigmoidParams,
    horizon: float,
    n: int,
    size: int,
    rng: np.random.Generator,
    day_rounding: bool,
) -> np.ndarray:
    """Demand fractions the k-th delivery must beat, one row per scenario.

    Continuous mode evaluates G at the sorted times themselves (left
    limits).  Day-rounded mode evaluates G at the day boundary before the
    arrival day: a delivery rounded up to day d serves demand from day d
    onward, so the stock held before it only has to cover demand through
    day d-1 (zero before day 1).
    """
    u = np.maximum(rng.random((size, int(n))), _U_FLOOR)
    t = np.asarray(sample_delivery_time(params, horizon, u))
    t.sort(axis=1)
    if not day_rounding:
        return demand_fraction(params, horizon, t)
    prev_day = np.ceil(t) - 1.0
    return np.where(
        prev_day < 1.0,
        0.0,
        demand_fraction(params, horizon, np.maximum(prev_day, 1.0)),
    )


def estimate_probability(
    policy: Policy,
    params: SigmoidParams,
    horizon: float,
    cfg: SimulationConfig,
    total_demand: float | None = None,
) -> SimulationReport:
    """Fraction of simulated scenarios in which the policy never runs short.

    Deterministic for a fixed config: trial i depends only on (seed, i).
    """
    D = policy.total_demand if total_demand is None else float(total_demand)
    if not D > 0.0:
        raise ValueError(f"total demand must be positive, got {D!r}")
    n = policy.n_deliveries
    M = policy.initial_stock
    lot = policy.lot
    if D > (M + n * lot) * (1.0 + _FEAS_RTOL):
        raise DataError(
            "demand at the horizon exceeds initial stock plus total deliveries"
        )
    ladder = M + lot * np.arange(n)
    successes = 0
    for index, size in enumerate(chunk_sizes(cfg.trials)):
        g = _sorted_demand(
            params, horizon, n, size, substream(cfg.seed, index), cfg.day_rounding
        )
        successes += int(np.all(ladder >= D * g, axis=1).sum())
    probability = successes / cfg.trials
    return SimulationReport(
        trials=cfg.trials,
        non_shortage_count=successes,
        probability=probability,
        std_error=_binomial_se(probability, cfg.trials),
    )


def _lot_grid(lot_range: tuple[float, float, float]) -> list[float]:
    low, high, step = (float(x) for x in lot_range)
    if not low > 0.0:
        raise ValueError(f"lot range must start above 0, got {low!r}")
    if not step > 0.0:
        raise ValueError(f"lot step must be positive, got {step!r}")
    if high < low:
        raise ValueError(f"lot range is empty: [{low}, {high}]")
    # Relative slack so a span that is an exact multiple of the step keeps
    # its endpoint (19.999... steps means 20).
    count = int(math.floor((high - low) / step * (1.0 + 1e-9) + 1e-9)) + 1
    return [low + i * step for i in range(count)]


def sweep(
    base: Policy,
    params: SigmoidParams,
    horizon: float,
    cfg: SimulationConfig,
    lot_range: tuple[float, float, float],
) -> list[SweepRow]:
    """Estimate the non-shortage probability across a grid of lot sizes.

    The initial stock stays at base.initial_stock and the total demand at
    base.total_demand; only the delivered lot varies.  Every row is scored
    against the same scenario set, and the per-scenario indicator is
    monotone in the lot, so the probability column is exactly
    non-decreasing.  A lot too small to cover demand even with all n
    deliveries scores 0 (shortage is certain at the horizon), it is not an
    error.
    """
    lots = _lot_grid(lot_range)
    n = base.n_deliveries
    M = base.initial_stock
    D = base.total_demand
    blocks = [
        _sorted_demand(
            params, horizon, n, size, substream(cfg.seed, index), cfg.day_rounding
        )
        for index, size in enumerate(chunk_sizes(cfg.trials))
    ]
    demand_at = D * (blocks[0] if len(blocks) == 1 else np.concatenate(blocks))
    offsets = np.arange(n)
    rows = []
    for lot in lots:
        if M + n * lot >= D * (1.0 - _FEAS_RTOL):
            hits = int(np.all(M + lot * offsets >= demand_at, axis=1).sum())
        else:
            hits = 0
        probability = hits / cfg.trials
        rows.append(
            SweepRow(
                lot=lot,
                initial_stock=M,
                probability=probability,
                std_error=_binomial_se(probability, cfg.trials),
            )
        )
    assert all(
        later.probability >= earlier.probability
        for earlier, later in zip(rows, rows[1:])
    ), "shared scenarios make the sweep monotone in lot"
    return rows
