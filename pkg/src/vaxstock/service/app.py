"""FastAPI application exposing the sizing, fitting, and simulation core.

Run locally with `uvicorn vaxstock.service:app`.  Domain errors map to
HTTP 422 with a structured body; the payloads mirror the CLI's JSON
outputs field for field.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..contour import epsilon_of_p, p_of_epsilon
from ..demand import SigmoidParams, fit_sigmoid, normalize, repair_monotonicity
from ..errors import ConvergenceError, DataError
from ..policy import Policy, PolicySpec, purchase_quantity
from ..policy import plan as plan_policy
from ..simulate import SimulationConfig, estimate_probability
from ..simulate import sweep as sweep_lots
from .schemas import (
    EpsilonRequest,
    EpsilonResponse,
    FitResponse,
    ParamsModel,
    PlanRequest,
    PlanResponse,
    SeriesPayload,
    SimulateRequest,
    SimulateResponse,
    SweepRequest,
    SweepResponse,
    SweepRowModel,
)


def create_app() -> FastAPI:
    app = FastAPI(title="vaxstock", version=__version__)

    def _unprocessable(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    app.add_exception_handler(DataError, _unprocessable)
    app.add_exception_handler(ValueError, _unprocessable)
    app.add_exception_handler(ConvergenceError, _unprocessable)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/epsilon", response_model=EpsilonResponse)
    def epsilon(req: EpsilonRequest) -> EpsilonResponse:
        eps = epsilon_of_p(req.n, req.p)
        return EpsilonResponse(
            n=req.n, p=req.p, epsilon=eps, round_trip_p=p_of_epsilon(req.n, eps)
        )

    @app.post("/fit", response_model=FitResponse)
    def fit(req: SeriesPayload) -> FitResponse:
        raw = list(zip(req.days, req.counts, strict=True))
        corrected = 0
        if req.repair:
            raw, corrected = repair_monotonicity(raw)
        series = normalize(raw)
        report = fit_sigmoid(series)
        p = report.params
        return FitResponse(
            params=ParamsModel(a=p.a, b=p.b, c=p.c, d=p.d),
            horizon=series.horizon,
            points=len(series),
            corrected_points=corrected,
            sse=report.sse,
            rmse=report.rmse,
            iterations=report.iterations,
        )

    @app.post("/plan", response_model=PlanResponse)
    def plan(req: PlanRequest) -> PlanResponse:
        spec = PolicySpec(
            req.n_deliveries, req.target_probability, req.total_demand, req.horizon
        )
        policy = plan_policy(spec)
        schedule = [
            purchase_quantity(
                policy.n_deliveries, k, policy.initial_stock, policy.total_demand
            )
            for k in range(1, policy.n_deliveries + 1)
        ]
        return PlanResponse(
            n_deliveries=policy.n_deliveries,
            total_demand=policy.total_demand,
            epsilon=policy.epsilon,
            initial_stock=policy.initial_stock,
            lot=policy.lot,
            target_probability=req.target_probability,
            horizon=req.horizon,
            schedule=schedule,
        )

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        policy = Policy(**req.policy.model_dump())
        params = SigmoidParams(**req.params.model_dump())
        cfg = SimulationConfig(req.trials, req.seed, req.day_rounding)
        report = estimate_probability(policy, params, req.horizon, cfg)
        return SimulateResponse(
            trials=report.trials,
            non_shortage_count=report.non_shortage_count,
            probability=report.probability,
            std_error=report.std_error,
        )

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest) -> SweepResponse:
        policy = Policy(**req.policy.model_dump())
        params = SigmoidParams(**req.params.model_dump())
        cfg = SimulationConfig(req.trials, req.seed, req.day_rounding)
        rows = sweep_lots(
            policy,
            params,
            req.horizon,
            cfg,
            (req.lot_low, req.lot_high, req.lot_step),
        )
        return SweepResponse(
            rows=[
                SweepRowModel(
                    lot=row.lot,
                    initial_stock=row.initial_stock,
                    probability=row.probability,
                    std_error=row.std_error,
                )
                for row in rows
            ]
        )

    return app


app = create_app()
