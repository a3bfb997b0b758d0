import pytest

from src.storage import ResultStore
from src.suites import CheckRecord, SuiteResult


def make_result(suite: str, failing: bool = False) -> SuiteResult:
    checks = [CheckRecord.measure("a", 1e-9, 1e-8)]
    if failing:
        checks.append(CheckRecord.measure("b", 1.0, 1e-8, note="broken"))
    return SuiteResult(suite=suite, seed=7, steps=[1e-4], config={"m": 3}, checks=checks, wall_time=0.5)


@pytest.fixture
def store(tmp_path) -> ResultStore:
    return ResultStore(tmp_path / "ledger" / "runs.db")


def test_record_and_list(store):
    first = store.record(make_result("clifford"))
    second = store.record(make_result("theorem2", failing=True))
    assert second > first

    runs = store.recent_runs(10)
    assert [run["id"] for run in runs] == [second, first]
    assert runs[0]["suite"] == "theorem2"
    assert runs[0]["pass"] is False
    assert (runs[0]["total"], runs[0]["failed"]) == (2, 1)
    assert runs[1]["pass"] is True


def test_filter_and_limit(store):
    for _ in range(3):
        store.record(make_result("clifford"))
    store.record(make_result("surface"))
    assert len(store.recent_runs(2)) == 2
    assert {run["suite"] for run in store.recent_runs(10, suite="clifford")} == {"clifford"}


def test_failed_checks(store):
    run_id = store.record(make_result("theorem2", failing=True))
    failed = store.failed_checks(run_id)
    assert [check.name for check in failed] == ["b"]
    assert failed[0].residual == 1.0
    assert not failed[0].passed


def test_load_restores_result(store):
    result = make_result("theorem2", failing=True)
    run_id = store.record(result)
    loaded = store.load(run_id)
    assert loaded == result
    assert loaded.wall_time == 0.5
    assert store.load(run_id + 100) is None


def test_clear(store):
    store.record(make_result("clifford"))
    store.record(make_result("surface"))
    assert store.clear() == 2
    assert store.recent_runs() == []


def test_reopen_keeps_runs(tmp_path):
    path = tmp_path / "runs.db"
    ResultStore(path).record(make_result("clifford"))
    assert len(ResultStore(path).recent_runs()) == 1
