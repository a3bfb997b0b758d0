import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.immersions import (
    CLIFFORD_TORUS_PERIOD,
    clifford_torus,
    flat_hyperplane,
    immersion_from_descriptor,
    second_fundamental_trace,
    umbilic_hyperbolic,
)

CATALOG = [
    umbilic_hyperbolic(3, -0.8),
    umbilic_hyperbolic(4, -0.5),
    umbilic_hyperbolic(2, -1.0),
    flat_hyperplane(3),
    clifford_torus(),
]


@pytest.mark.parametrize("imm", CATALOG, ids=lambda imm: f"{imm.kind}-{imm.m}")
def test_structure_equations(imm, rng):
    for x in imm.chart.sample_points(rng, 3):
        defects = imm.defects(x)
        assert defects["isometry"] <= 1e-12
        assert defects["weingarten"] <= 1e-6
        assert defects["gauss"] <= 1e-8
        assert defects["mean_curvature_variation"] <= 1e-8


@pytest.mark.parametrize("imm", CATALOG, ids=lambda imm: f"{imm.kind}-{imm.m}")
def test_tension_field(imm, rng):
    for x in imm.chart.sample_points(rng, 3):
        assert_allclose(imm.second_fundamental_trace_fd(x), second_fundamental_trace(imm, x), atol=1e-6)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_umbilic_mean_curvature(m, rng):
    imm = umbilic_hyperbolic(m, -4.0 / (m + 2))
    x = imm.chart.sample_points(rng, 1)[0]
    assert imm.mean_curvature(x) == pytest.approx(math.sqrt((m - 2) / (m + 2)), abs=1e-12)
    assert imm.chart.curvature == pytest.approx(-4.0 / (m + 2))
    assert imm.umbilicity_defect(x) <= 1e-15


def test_theorem2_dimension_three_constants():
    imm = umbilic_hyperbolic(3, -0.8)
    assert imm.mean_curvature(np.array([0.0, 0.0, 1.0])) == pytest.approx(0.4472135955, abs=1e-10)


def test_clifford_torus_is_minimal():
    imm = clifford_torus()
    x = np.array([0.3, 1.1])
    assert_allclose(imm.principal_curvatures(x), [1.0, -1.0])
    assert imm.mean_curvature(x) == 0.0
    assert np.linalg.norm(imm.position(x)) == pytest.approx(1.0)
    shifted = x + np.array([CLIFFORD_TORUS_PERIOD, 0.0])
    assert_allclose(imm.position(shifted), imm.position(x), atol=1e-14)


def test_adapted_frame_round_trip(rng):
    imm = umbilic_hyperbolic(3, -0.5)
    x = imm.chart.sample_points(rng, 1)[0]
    components = rng.normal(size=4)
    assert_allclose(imm.to_adapted(x, imm.from_adapted(x, components)), components, atol=1e-12)


def test_ambient_rescaling(rng):
    imm = umbilic_hyperbolic(3, -0.8)
    scaled = imm.with_ambient_scale(2.0)
    x = imm.chart.sample_points(rng, 1)[0]
    assert scaled.c == pytest.approx(-0.25)
    assert scaled.mean_curvature(x) == pytest.approx(imm.mean_curvature(x) / 2.0)
    assert scaled.isometry_defect(x) <= 1e-12
    assert scaled.gauss_defect(x) <= 1e-8
    with pytest.raises(ValueError):
        imm.with_ambient_scale(-1.0)


@pytest.mark.parametrize("imm", CATALOG, ids=lambda imm: f"{imm.kind}-{imm.m}")
def test_descriptor_round_trip(imm):
    rebuilt = immersion_from_descriptor(imm.to_descriptor())
    assert rebuilt == imm


def test_invalid_immersions():
    with pytest.raises(ValueError):
        umbilic_hyperbolic(3, 0.5)
    with pytest.raises(ValueError):
        umbilic_hyperbolic(1, -0.5)
    with pytest.raises(ValueError):
        flat_hyperplane(1)
    with pytest.raises(ValueError):
        immersion_from_descriptor({"kind": "umbilic_hyperbolic", "m": 3})
    with pytest.raises(ValueError):
        immersion_from_descriptor({"kind": "catenoid", "m": 2})
