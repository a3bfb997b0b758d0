"""Shared fixtures."""

from pathlib import Path

import numpy as np
import pytest

from src.geometry import EuclideanChart, HyperbolicHalfSpace, StereographicSphere

PROJECT_ROOT = Path(__file__).parent.parent


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


@pytest.fixture
def project_root() -> Path:
    return PROJECT_ROOT


@pytest.fixture(params=["euclidean", "hyperbolic", "hyperbolic_theorem2", "sphere"])
def chart3(request):
    """One three-dimensional chart of each kind used by the suites."""
    return {
        "euclidean": EuclideanChart(3),
        "hyperbolic": HyperbolicHalfSpace(3, kappa=-1.0),
        "hyperbolic_theorem2": HyperbolicHalfSpace(3, kappa=-0.8),
        "sphere": StereographicSphere(3, kappa=1.0),
    }[request.param]
