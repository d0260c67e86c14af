"""Acceptance gate: the eight shipping criteria, one test line each.

Every test pins reference values and tolerances directly; a red line here
means the artifact does not meet its contract.  The suite is self
contained and runs standalone:

    pytest tests/test_acceptance.py -v
"""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from vaxstock import (
    CumulativeSeries,
    Policy,
    SamplePath,
    SigmoidParams,
    SimulationConfig,
    available_single_period,
    epsilon_of_p,
    estimate_probability,
    eval_sigmoid,
    fit_sigmoid,
    load_csv,
    mc_oracle_p,
    non_shortage,
    normalize,
    p_of_epsilon,
    purchase_quantity,
    regularize,
    repair_monotonicity,
    sample_delivery_time,
    demand_fraction,
    sweep,
)
from vaxstock.cli import main

# relative initial stock at p = 0.9, by number of deliveries
RELATIVE_STOCK_TABLE = {
    5: 0.4470,
    8: 0.3583,
    10: 0.3226,
    20: 0.23155,
    40: 0.16547,
    50: 0.14840,
}

NINE_CASE_GRID = [(5, 0.4470), (8, 0.3583), (10, 0.3226)]


def test_a1_relative_stock_reference_values():
    for n, target in RELATIVE_STOCK_TABLE.items():
        assert epsilon_of_p(n, 0.9) == pytest.approx(target, abs=5e-4), f"n={n}"


def test_a2_analytic_identity_and_round_trip():
    for eps in np.linspace(0.1, 0.9, 9):
        assert abs(p_of_epsilon(1, float(eps)) - float(eps)) <= 1e-12
    for n in range(1, 61):
        for p in (0.5, 0.9, 0.95, 0.99, 0.999):
            eps = epsilon_of_p(n, p)
            assert abs(p_of_epsilon(n, eps) - p) <= 1e-8, (n, p)


def test_a3_oracle_agrees_with_closed_form():
    trials = 1_000_000
    for n in (1, 2, 5, 10, 20, 50):
        for eps in np.linspace(0.1, 0.9, 9):
            eps = float(eps)
            exact = p_of_epsilon(n, eps)
            estimate = mc_oracle_p(n, eps, trials, seed=42)
            se = math.sqrt(exact * (1.0 - exact) / trials)
            if se == 0.0:
                assert estimate.probability == exact, (n, eps)
            else:
                z = abs(estimate.probability - exact) / se
                assert z <= 4.0, (n, eps, z)


def test_a4_simulation_is_distribution_free(param_family):
    trials = 100_000
    for i, params in enumerate(param_family):
        for n, eps in NINE_CASE_GRID:
            exact = p_of_epsilon(n, eps)
            policy = Policy(n, 1.0, eps, eps, 1.0 / n)
            report = estimate_probability(
                policy, params, 300.0, SimulationConfig(trials, seed=42 + i)
            )
            se = math.sqrt(exact * (1.0 - exact) / trials)
            z = abs(report.probability - exact) / se
            assert z <= 4.0, (i, n, eps, z)


def test_a5_day_rounded_trend_with_own_fit(data_dir):
    raw = load_csv(data_dir / "countries" / "denmark_daily.csv", "Denmark")
    repaired, _ = repair_monotonicity(regularize(raw))
    series = normalize(repaired)
    params = fit_sigmoid(series).params
    horizon = float(series.horizon)

    policy = Policy(5, 1.0, 0.447, 0.447, 0.2)
    report = estimate_probability(
        policy, params, horizon, SimulationConfig(10_000, seed=42, day_rounding=True)
    )
    assert 0.885 <= report.probability <= 0.925

    base10 = Policy(10, 1.0, 0.3226, 0.3226, 0.1)
    rows = sweep(
        base10,
        params,
        horizon,
        SimulationConfig(10_000, seed=42, day_rounding=True),
        (0.088, 0.108, 0.001),
    )
    assert len(rows) == 21
    probs = [row.probability for row in rows]
    assert probs == sorted(probs)


def test_a6_purchase_rule_properties(pinned_params):
    rng = np.random.default_rng(0)

    def case_rule(n, k, M, D):
        lot = D / n
        remaining = D - M - (k - 1) * lot
        if remaining >= lot:
            return lot
        return remaining if remaining > 0.0 else 0.0

    for _ in range(10_000):
        n = int(rng.integers(1, 61))
        D = float(rng.uniform(0.1, 1e6))
        M = float(rng.uniform(0.0, 2.5)) * D
        quantities = [purchase_quantity(n, k, M, D) for k in range(1, n + 1)]
        assert math.fsum(quantities) == pytest.approx(
            D - min(M, D), rel=1e-9, abs=1e-9
        )
        k = int(rng.integers(1, n + 1))
        assert purchase_quantity(n, k, M, D) == case_rule(n, k, M, D)

    demand = lambda t: demand_fraction(pinned_params, 300.0, t)  # noqa: E731
    for _ in range(1_000):
        n = int(rng.integers(1, 13))
        M = float(rng.uniform(0.0, 0.7))
        u = np.maximum(rng.random(n), 2.0**-53)
        times = np.sort(np.atleast_1d(sample_delivery_time(pinned_params, 300.0, u)))
        path = SamplePath(tuple(times.tolist()), 300.0)
        via_w = non_shortage(path, M, 1.0, demand)
        # X is flat between deliveries, so its left limit at the k-th
        # delivery equals its value at the (k-1)-th; demand never exceeds
        # D here, which is what makes the two formulations agree
        prev = (0.0,) + path.times[:-1]
        via_x = all(
            available_single_period(M, 1.0, n, path, s) >= demand(t)
            for s, t in zip(prev, path.times)
        )
        assert via_w == via_x


def test_a7_fit_recovery(pinned_params, make_exact_series):
    series = make_exact_series(pinned_params)
    report = fit_sigmoid(series)
    for name in ("a", "b", "c", "d"):
        truth = getattr(pinned_params, name)
        assert abs(getattr(report.params, name) - truth) / abs(truth) < 0.01, name
    assert report.sse < 1e-10

    rng = np.random.default_rng(7)
    noisy = CumulativeSeries(
        series.days,
        tuple(v + float(e) for v, e in zip(series.values, rng.uniform(-0.01, 0.01, 300))),
    )
    noisy_report = fit_sigmoid(noisy)
    for name in ("a", "b", "c", "d"):
        truth = getattr(pinned_params, name)
        assert abs(getattr(noisy_report.params, name) - truth) / abs(truth) < 0.05, name


def test_a8_pipeline_end_to_end(data_dir, tmp_path):
    def run(argv):
        return main([str(a) for a in argv])

    fit_out = tmp_path / "fit.json"
    plan_out = tmp_path / "plan.json"
    sim_out = tmp_path / "sim.json"

    assert run(
        [
            "fit", "--csv", data_dir / "fixtures" / "france_sample.csv",
            "--country", "France", "--json-out", fit_out,
        ]
    ) == 0
    fit_doc = json.loads(fit_out.read_text())
    assert fit_doc["corrected_points"] > 0  # the fixture plants a decrease
    assert fit_doc["params"]["a"] > 0 and fit_doc["params"]["b"] > 0

    assert run(
        ["plan", "--n", 5, "--p", 0.9, "--fit", fit_out, "--json-out", plan_out]
    ) == 0
    plan_doc = json.loads(plan_out.read_text())
    assert plan_doc["initial_stock"] == pytest.approx(0.4470, abs=5e-4)
    assert len(plan_doc["schedule"]) == 5

    assert run(
        [
            "simulate", "--plan", plan_out, "--fit", fit_out,
            "--trials", 2000, "--day-rounding", "--json-out", sim_out,
        ]
    ) == 0
    sim_doc = json.loads(sim_out.read_text())
    assert sim_doc["schema_version"] == 1
    assert 0.0 <= sim_doc["probability"] <= 1.0
    assert sim_doc["trials"] == 2000
    assert (tmp_path / "sim.manifest.json").exists()
