"""Shared fixtures: bundled data paths and canonical parameter sets."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from vaxstock import CumulativeSeries, SigmoidParams, eval_sigmoid

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return REPO_ROOT / "data"


@pytest.fixture(scope="session")
def pinned_params() -> SigmoidParams:
    """The reference parameter set used across fit and sampling tests."""
    return SigmoidParams(1.1, 0.05, 150.0, 0.5)


@pytest.fixture(scope="session")
def param_family(pinned_params) -> list[SigmoidParams]:
    """Three dissimilar demand shapes; results that claim to be
    distribution-free must hold on every one of them."""
    return [
        pinned_params,
        SigmoidParams(0.9, 0.02, 120.0, 0.55),
        SigmoidParams(1.4, 0.08, 200.0, 0.45),
    ]


@pytest.fixture(scope="session")
def make_exact_series():
    """Factory: CumulativeSeries evaluated exactly from sigmoid params."""

    def build(params: SigmoidParams, horizon: int = 300) -> CumulativeSeries:
        days = tuple(range(1, horizon + 1))
        values = tuple(float(eval_sigmoid(params, d)) for d in days)
        return CumulativeSeries(days, values)

    return build


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
