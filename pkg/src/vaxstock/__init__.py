"""Initial-stock sizing and Monte Carlo verification for single-wave
vaccination campaigns.

`plan` sizes the minimal initial stock for a prescribed non-shortage
probability via a distribution-free one-sided contour bound; `fit_sigmoid`
turns a country's cumulative vaccination series into a demand curve; the
simulate module verifies a sized policy against that curve by Monte Carlo.
"""

from .contour import (
    ContourQuery,
    OracleEstimate,
    SamplePath,
    empirical_cdf,
    epsilon_of_p,
    mc_oracle_p,
    p_of_epsilon,
    upper_contour,
)
from .demand import (
    CumulativeSeries,
    FitReport,
    SigmoidParams,
    demand_fraction,
    eval_sigmoid,
    fit_sigmoid,
    normalize,
    repair_monotonicity,
    sample_delivery_time,
)
from .errors import ConvergenceError, DataError, DegenerateSeriesError
from .ingest import RawSeries, load_csv, regularize
from .policy import (
    Policy,
    PolicySpec,
    available_multi_period,
    available_single_period,
    non_shortage,
    plan,
    purchase_quantity,
)
from .simulate import (
    SimulationConfig,
    SimulationReport,
    SweepRow,
    estimate_probability,
    generate_scenario,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ContourQuery",
    "SamplePath",
    "OracleEstimate",
    "p_of_epsilon",
    "epsilon_of_p",
    "empirical_cdf",
    "upper_contour",
    "mc_oracle_p",
    "CumulativeSeries",
    "SigmoidParams",
    "FitReport",
    "normalize",
    "repair_monotonicity",
    "eval_sigmoid",
    "fit_sigmoid",
    "demand_fraction",
    "sample_delivery_time",
    "PolicySpec",
    "Policy",
    "plan",
    "purchase_quantity",
    "available_multi_period",
    "available_single_period",
    "non_shortage",
    "SimulationConfig",
    "SimulationReport",
    "SweepRow",
    "generate_scenario",
    "estimate_probability",
    "sweep",
    "DataError",
    "DegenerateSeriesError",
    "ConvergenceError",
]
