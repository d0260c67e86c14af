"""Request and response models of the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class EpsilonRequest(BaseModel):
    n: int = Field(ge=1, description="number of deliveries")
    p: float = Field(gt=0.0, lt=1.0, description="target non-shortage probability")


class EpsilonResponse(BaseModel):
    n: int
    p: float
    epsilon: float
    round_trip_p: float


class SeriesPayload(BaseModel):
    """Raw cumulative counts on integer days starting at 1."""

    days: list[int]
    counts: list[float]
    repair: bool = True


class ParamsModel(BaseModel):
    a: float = Field(gt=0.0)
    b: float = Field(gt=0.0)
    c: float
    d: float


class FitResponse(BaseModel):
    params: ParamsModel
    horizon: int
    points: int
    corrected_points: int
    sse: float
    rmse: float
    iterations: int


class PlanRequest(BaseModel):
    n_deliveries: int = Field(ge=1)
    target_probability: float = Field(gt=0.0, lt=1.0)
    total_demand: float = Field(default=1.0, gt=0.0)
    horizon: float | None = None


class PolicyModel(BaseModel):
    n_deliveries: int = Field(ge=1)
    total_demand: float = Field(gt=0.0)
    epsilon: float
    initial_stock: float
    lot: float


class PlanResponse(PolicyModel):
    target_probability: float
    horizon: float | None
    schedule: list[float]


class SimulateRequest(BaseModel):
    policy: PolicyModel
    params: ParamsModel
    horizon: float = Field(gt=1.0)
    trials: int = Field(default=10_000, ge=1)
    seed: int = 42
    day_rounding: bool = False


class SimulateResponse(BaseModel):
    trials: int
    non_shortage_count: int
    probability: float
    std_error: float


class SweepRequest(SimulateRequest):
    lot_low: float = Field(gt=0.0)
    lot_high: float
    lot_step: float = Field(gt=0.0)


class SweepRowModel(BaseModel):
    lot: float
    initial_stock: float
    probability: float
    std_error: float


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]
