"""Initial-stock policy: sizing, purchase rule, availability, shortage check.

A campaign must dispense total demand D over horizon T.  It starts with an
initial stock M = epsilon * D and receives n equal lots of D/n at random
times.  The policy chooses the smallest epsilon for which the probability
of never running short reaches the target p; that probability is exactly
the one-sided contour coverage P(n, epsilon) from the contour module, for
any continuous demand curve.
"""

from __future__ import annotations

import bisect
import math
import operator
from dataclasses import dataclass
from typing import Callable

from .contour import SamplePath, epsilon_of_p
from .errors import DataError

__all__ = [
    "PolicySpec",
    "Policy",
    "plan",
    "purchase_quantity",
    "available_multi_period",
    "available_single_period",
    "non_shortage",
]

# n*(D/n) can land an ulp away from D; cross-field identities and the
# horizon feasibility check carry this slack.
_REL_TOL = 1e-9


def _check_positive_int(value: object, name: str) -> int:
    try:
        out = operator.index(value)
    except TypeError:
        raise ValueError(f"{name} must be a positive integer, got {value!r}") from None
    if out < 1:
        raise ValueError(f"{name} must be a positive integer, got {out}")
    return out


@dataclass(frozen=True)
class PolicySpec:
    """Problem statement: n equal deliveries must cover total demand D over
    the horizon with non-shortage probability at least target_probability.

    The horizon does not enter the sizing computation (the contour coverage
    is distribution-free); it is carried through for the simulation stage
    and may be left unset.
    """

    n_deliveries: int
    target_probability: float
    total_demand: float = 1.0
    horizon: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "n_deliveries", _check_positive_int(self.n_deliveries, "n_deliveries")
        )
        p = float(self.target_probability)
        if not (0.0 < p < 1.0) or math.isnan(p):
            raise ValueError(
                f"target_probability must lie strictly inside (0, 1), got {p!r}"
            )
        object.__setattr__(self, "target_probability", p)
        demand = float(self.total_demand)
        if not demand > 0.0 or math.isinf(demand):
            raise ValueError(f"total_demand must be positive, got {demand!r}")
        object.__setattr__(self, "total_demand", demand)
        if self.horizon is not None:
            horizon = float(self.horizon)
            if not horizon > 0.0:
                raise ValueError(f"horizon must be positive, got {horizon!r}")
            object.__setattr__(self, "horizon", horizon)


@dataclass(frozen=True)
class Policy:
    """Sized policy: initial_stock = epsilon * total_demand, lot = D/n."""

    n_deliveries: int
    total_demand: float
    epsilon: float
    initial_stock: float
    lot: float

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "n_deliveries", _check_positive_int(self.n_deliveries, "n_deliveries")
        )
        demand = float(self.total_demand)
        epsilon = float(self.epsilon)
        stock = float(self.initial_stock)
        lot = float(self.lot)
        for name, value in (
            ("total_demand", demand),
            ("epsilon", epsilon),
            ("initial_stock", stock),
            ("lot", lot),
        ):
            object.__setattr__(self, name, value)
        if not demand > 0.0 or math.isinf(demand):
            raise ValueError(f"total_demand must be positive, got {demand!r}")
        if not (0.0 < epsilon <= 1.0) or math.isnan(epsilon):
            raise ValueError(f"epsilon must lie in (0, 1], got {epsilon!r}")
        if not math.isclose(stock, epsilon * demand, rel_tol=_REL_TOL):
            raise ValueError("initial_stock must equal epsilon * total_demand")
        if not math.isclose(lot * self.n_deliveries, demand, rel_tol=_REL_TOL):
            raise ValueError("lot must equal total_demand / n_deliveries")


def plan(spec: PolicySpec) -> Policy:
    """Minimal policy for the requested target: epsilon solves P(n, epsilon) = p."""
    epsilon = epsilon_of_p(spec.n_deliveries, spec.target_probability)
    return Policy(
        n_deliveries=spec.n_deliveries,
        total_demand=spec.total_demand,
        epsilon=epsilon,
        initial_stock=epsilon * spec.total_demand,
        lot=spec.total_demand / spec.n_deliveries,
    )


def purchase_quantity(n: int, k: int, M: float, D: float) -> float:
    """Quantity actually bought at the k-th delivery (1-based).

    min{D/n, max{0, D - M - (k-1)D/n}}: a full lot while cumulative supply
    still trails D, then the remainder once, then nothing.  Equivalent to
    the case-by-case rule it compresses.
    """
    n = _check_positive_int(n, "n")
    k = _check_positive_int(k, "k")
    if k > n:
        raise ValueError(f"delivery index k={k} exceeds n={n}")
    M = float(M)
    D = float(D)
    if M < 0.0:
        raise ValueError(f"initial stock must be non-negative, got {M!r}")
    if not D > 0.0:
        raise ValueError(f"total demand must be positive, got {D!r}")
    lot = D / n
    return min(lot, max(0.0, D - M - (k - 1) * lot))


def _deliveries_by(path: SamplePath, n: int, t: float) -> int:
    if path.n != n:
        raise ValueError(f"path has {path.n} delivery times, expected {n}")
    return bisect.bisect_right(path.times, float(t))


def available_multi_period(
    M: float, D: float, n: int, path: SamplePath, t: float
) -> float:
    """W(n,t): stock on hand at time t when every delivery carries a full
    lot D/n regardless of need."""
    k = _deliveries_by(path, n, t)
    return float(M) + k * (float(D) / n)


def available_single_period(
    M: float, D: float, n: int, path: SamplePath, t: float
) -> float:
    """X(n,t): stock on hand when each delivery carries only its purchase
    quantity; equals min(W(n,t), max(M, D))."""
    k = _deliveries_by(path, n, t)
    bought = sum(purchase_quantity(n, j, M, D) for j in range(1, k + 1))
    return float(M) + bought


def non_shortage(
    path: SamplePath, M: float, D: float, demand: Callable[[float], float]
) -> bool:
    """True iff available stock covers cumulative demand at every instant.

    W jumps up only at delivery times and the demand curve is continuous
    non-decreasing, so inf(W - F) over [0, T] is attained at left limits of
    the delivery times: the whole-horizon condition reduces to the n checks
    M + (k-1)*D/n >= F(t_k) over the sorted times.  Demand that exceeds
    M + D at the horizon is rejected as infeasible rather than counted as
    one more shortage.
    """
    M = float(M)
    D = float(D)
    if M < 0.0:
        raise ValueError(f"initial stock must be non-negative, got {M!r}")
    if not D > 0.0:
        raise ValueError(f"total demand must be positive, got {D!r}")
    demand_at_horizon = float(demand(path.horizon))
    if demand_at_horizon > (M + D) * (1.0 + _REL_TOL):
        raise DataError(
            "demand at the horizon exceeds initial stock plus total deliveries"
        )
    lot = D / path.n
    return all(
        M + k * lot >= float(demand(t)) for k, t in enumerate(path.times)
    )
