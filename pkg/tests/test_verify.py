import pytest

from talbot_gauss.verify import PROPERTIES, SUITES, PropertyResult, run_suite, worker_count


def test_every_suite_runs_small():
    for suite in SUITES:
        results = run_suite(suite, 6)
        assert results and all(r.passed for r in results), [r.line() for r in results]


def test_all_covers_every_property():
    assert len(run_suite("all", 3)) == len(PROPERTIES)


def test_results_deterministic(monkeypatch):
    monkeypatch.setenv("TALBOT_GAUSS_THREADS", "1")
    serial = [r.line() for r in run_suite("s", 20)]
    monkeypatch.setenv("TALBOT_GAUSS_THREADS", "4")
    assert [r.line() for r in run_suite("s", 20)] == serial


def test_worker_count(monkeypatch):
    monkeypatch.setenv("TALBOT_GAUSS_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.delenv("TALBOT_GAUSS_THREADS")
    assert 1 <= worker_count() <= 8


def test_result_line():
    res = PropertyResult("s", "uniqueness", checked=5, failed=0, max_error=0.0)
    assert res.line() == "PASS s/uniqueness: 5/5 max_err=0 tol=0"
    assert not PropertyResult("s", "x").passed
    assert PropertyResult("s", "x", checked=2, failed=1).line().startswith("FAIL")


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_suite("nope", 4)
    with pytest.raises(ValueError):
        run_suite("s", 0)
