import numpy as np
import pytest

from src.config import SUITE_NAMES, get_suite_defaults
from src.suites import SUITES, CheckRecord, SuiteConfigError, SuiteResult, convergence_order, run_suite


def test_every_suite_is_registered():
    assert list(SUITES) == SUITE_NAMES
    for name in SUITE_NAMES:
        assert get_suite_defaults(name)["seed"] == 7


def test_clifford_suite_is_exact():
    result = run_suite("clifford", {"m": 6})
    assert result.passed
    assert result.max_residual == 0.0
    assert {check.name for check in result.checks} == {
        "m=6/anticommutator",
        "m=6/skew_hermitian",
        "m=6/dim_spinor",
    }


def test_clifford_suite_all_dimensions():
    result = run_suite("clifford")
    assert result.passed
    assert len(result.checks) == 3 * 8


def test_same_seed_same_report():
    config = {"m": 3, "samples": 4, "seed": 5}
    first = run_suite("vphi-triple", config)
    second = run_suite("vphi-triple", config)
    assert first.to_json() == second.to_json()
    assert first == second


def test_seed_changes_samples():
    first = run_suite("vphi-triple", {"m": 3, "samples": 3, "seed": 1})
    second = run_suite("vphi-triple", {"m": 3, "samples": 3, "seed": 2})
    assert [c.residual for c in first.checks] != [c.residual for c in second.checks]


def test_workers_keep_order():
    serial = run_suite("connection", {"samples": 6, "workers": 1})
    threaded = run_suite("connection", {"samples": 6, "workers": 3})
    assert [c.to_dict() for c in serial.checks] == [c.to_dict() for c in threaded.checks]


def test_connection_suite_covers_every_chart_kind():
    result = run_suite("connection", {"m": 3, "samples": 3})
    assert result.passed, [c.name for c in result.failed_checks]
    kinds = {check.name.split("/")[1].split("(")[0] for check in result.checks}
    assert kinds == {"euclidean", "flat_torus", "hyperbolic_halfspace", "sphere_stereographic"}


def test_theorem2_suite():
    result = run_suite("theorem2", {"m": 3, "samples": 6, "seed": 7})
    assert result.passed, [c.name for c in result.failed_checks]
    assert result.steps == [1e-4]
    names = {check.name for check in result.checks}
    assert {"m=3/normalization", "m=3/dirac", "m=3/harmonic", "m=3/negative_control/detectable"} <= names


def test_rescaling_suite_checks_scaling_laws():
    result = run_suite("rescaling", {"samples": 2, "scales": [2.0]})
    assert result.passed, [c.name for c in result.failed_checks]
    names = {check.name for check in result.checks}
    assert {
        "m=3/scale=2/ambient_metric",
        "m=3/scale=2/dirac_invariant",
        "m=3/scale=2/ambient_scaling",
        "m=3/scale=2/intrinsic_scaling",
    } <= names


@pytest.mark.parametrize(
    "name,config",
    [
        ("connection", {"samples": 5}),
        ("lemma-cross", {"m": [2, 3], "samples": 3}),
        ("vphi-triple", {"samples": 5}),
        ("theorem1", {"m": [3], "samples": 3}),
        ("surface", {"samples": 5}),
        ("clifford-torus", {"samples": 4, "candidates": 4}),
        ("rescaling", {"samples": 3}),
        ("convergence", {"samples": 2}),
    ],
)
def test_suites_pass_on_small_configs(name, config):
    result = run_suite(name, config)
    assert result.suite == name
    assert result.checks
    assert result.passed, [(c.name, c.residual, c.tolerance) for c in result.failed_checks]


def test_unknown_suite():
    with pytest.raises(SuiteConfigError):
        run_suite("theorem3")


def test_unknown_config_key():
    with pytest.raises(SuiteConfigError):
        run_suite("clifford", {"samples": 3})


@pytest.mark.parametrize(
    "config",
    [{"m": 0}, {"m": "three"}, {"m": []}, {"seed": -1}, {"m": True}],
)
def test_malformed_config(config):
    with pytest.raises(SuiteConfigError):
        run_suite("clifford", config)


def test_malformed_steps():
    with pytest.raises(SuiteConfigError):
        run_suite("theorem1", {"h": -1e-4})
    with pytest.raises(SuiteConfigError):
        run_suite("theorem1", {"h": [1e-4, 2e-4]})


def test_config_must_be_mapping():
    with pytest.raises(SuiteConfigError):
        run_suite("clifford", [1, 2])


class TestConvergenceOrder:
    def test_recovers_power(self):
        steps = [1e-2, 5e-3, 2.5e-3]
        assert convergence_order(steps, [3.0 * h**2 for h in steps]) == pytest.approx(2.0)
        assert convergence_order(steps, [h**4 for h in steps]) == pytest.approx(4.0)

    def test_needs_two_points(self):
        with pytest.raises(SuiteConfigError):
            convergence_order([1e-3], [1e-6])

    def test_zero_errors_do_not_crash(self):
        assert np.isfinite(convergence_order([1e-2, 1e-3], [0.0, 0.0]))


class TestRecords:
    def test_measure(self):
        assert CheckRecord.measure("a", 1e-9, 1e-8).passed
        assert not CheckRecord.measure("a", 2e-8, 1e-8).passed
        assert CheckRecord.measure("exact", 0.0, 0.0).passed

    def test_result_summary(self):
        result = SuiteResult(
            suite="demo",
            seed=1,
            checks=[CheckRecord.measure("a", 0.0, 1.0), CheckRecord.measure("b", 2.0, 1.0)],
        )
        assert not result.passed
        assert [c.name for c in result.failed_checks] == ["b"]
        assert result.max_residual == 2.0
        assert result.to_dict()["summary"] == {"total": 2, "failed": 1}
        assert "wall_time" not in result.to_dict()
        assert "wall_time" in result.to_dict(include_wall_time=True)
