#!/usr/bin/env python3
"""Regenerate the bundled demo data under data/.

The bundled series are synthetic stand-ins for per-country cumulative
vaccination extracts: plausible sigmoid shapes with seeded noise, written
in the OWID-style CSV layout the ingest module reads.  The nine-case
configuration is then produced by this package's own fit and plan stages,
so everything under data/ is reproducible from this one script.
"""

from __future__ import annotations

import csv
import datetime as dt
from pathlib import Path

import numpy as np

from vaxstock import (
    PolicySpec,
    SigmoidParams,
    eval_sigmoid,
    fit_sigmoid,
    load_csv,
    normalize,
    plan,
    regularize,
    repair_monotonicity,
)
from vaxstock.manifest import SCHEMA_VERSION, dump_json

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
HORIZON = 300
SEED = 20211231

# shape, final cumulative doses, first reporting date
COUNTRIES = {
    "Denmark": (SigmoidParams(1.10, 0.045, 160.0, 0.50), 4_200_000, dt.date(2020, 12, 27)),
    "Hungary": (SigmoidParams(1.25, 0.035, 140.0, 0.48), 5_500_000, dt.date(2020, 12, 26)),
    "Mexico": (SigmoidParams(0.95, 0.022, 185.0, 0.55), 60_000_000, dt.date(2020, 12, 24)),
}


def synthetic_counts(params: SigmoidParams, total: int, rng) -> np.ndarray:
    """Noisy cumulative counts on days 1..HORIZON ending exactly at total."""
    days = np.arange(1, HORIZON + 1, dtype=float)
    s = np.asarray(eval_sigmoid(params, days))
    shape = (s - s[0]) / (s[-1] - s[0])
    increments = np.diff(shape, prepend=0.0)
    noise = np.maximum(1.0 + 0.2 * rng.standard_normal(HORIZON), 0.0)
    counts = np.cumsum(increments * noise)
    counts *= total / counts[-1]
    return np.round(counts).astype(np.int64)


def write_daily_csv(path: Path, country: str, start: dt.date, counts: np.ndarray, rng) -> None:
    """Full daily series with a few calendar gaps and empty cells."""
    drop = rng.random(len(counts)) < 0.03
    blank = rng.random(len(counts)) < 0.02
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["location", "date", "total_vaccinations"])
        for i, count in enumerate(counts):
            first_or_last = i == 0 or i == len(counts) - 1
            if drop[i] and not first_or_last:
                continue
            value = "" if (blank[i] and not first_or_last) else str(int(count))
            writer.writerow([country, (start + dt.timedelta(days=i)).isoformat(), value])


def write_fixture_csv(
    path: Path, country: str, start: dt.date, counts: np.ndarray, rng, dip: bool
) -> None:
    """Sparse 40-ish row sample spanning the whole curve, for ingest tests.

    Mixes in a second location's rows (selection must filter them out),
    leaves a couple of value cells empty, and, when dip is set, lowers one
    cumulative value to plant a monotonicity violation.
    """
    picks = sorted(rng.choice(len(counts), size=38, replace=False).tolist())
    picks[0], picks[-1] = 0, len(counts) - 1
    rows = []
    for j, i in enumerate(picks):
        value = str(int(counts[i]))
        if j in (7, 19):
            value = ""
        if dip and j == 15:
            value = str(max(int(counts[picks[10]]) - 1, 0))
        rows.append([country, (start + dt.timedelta(days=i)).isoformat(), value])
    # foreign rows interleaved by date so the file is not single-location
    for offset, count in ((3, 12_000), (40, 95_000), (90, 390_000)):
        rows.append(["Norway", (start + dt.timedelta(days=offset)).isoformat(), str(count)])
    rows.sort(key=lambda r: (r[1], r[0]))
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["location", "date", "total_vaccinations"])
        writer.writerows(rows)


def main() -> None:
    (DATA / "countries").mkdir(parents=True, exist_ok=True)
    (DATA / "fixtures").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)

    for country, (params, total, start) in COUNTRIES.items():
        counts = synthetic_counts(params, total, rng)
        write_daily_csv(DATA / "countries" / f"{country.lower()}_daily.csv", country, start, counts, rng)
        write_fixture_csv(
            DATA / "fixtures" / f"{country.lower()}_sample.csv",
            country, start, counts, rng, dip=False,
        )

    # France-style fixture: same pipeline must survive a reported decrease
    france_params = SigmoidParams(1.05, 0.030, 170.0, 0.52)
    counts = synthetic_counts(france_params, 48_000_000, rng)
    write_fixture_csv(
        DATA / "fixtures" / "france_sample.csv",
        "France", dt.date(2020, 12, 27), counts, rng, dip=True,
    )

    fits = {}
    cases = []
    for country in COUNTRIES:
        raw = load_csv(DATA / "countries" / f"{country.lower()}_daily.csv", country)
        repaired, corrected = repair_monotonicity(regularize(raw))
        series = normalize(repaired)
        report = fit_sigmoid(series)
        p = report.params
        fits[country] = {
            "params": {"a": p.a, "b": p.b, "c": p.c, "d": p.d},
            "horizon": series.horizon,
            "points": len(series),
            "corrected_points": corrected,
            "sse": report.sse,
            "rmse": report.rmse,
            "iterations": report.iterations,
        }
        for n in (5, 8, 10):
            policy = plan(PolicySpec(n, 0.9, 1.0, float(series.horizon)))
            cases.append(
                {
                    "country": country,
                    "n_deliveries": n,
                    "target_probability": 0.9,
                    "epsilon": policy.epsilon,
                    "initial_stock": policy.initial_stock,
                    "lot": policy.lot,
                }
            )
    dump_json(
        {"schema_version": SCHEMA_VERSION, "fits": fits, "cases": cases},
        DATA / "nine_cases.json",
    )
    print(f"wrote {DATA}")


if __name__ == "__main__":
    main()
