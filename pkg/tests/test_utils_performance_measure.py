import pytest

from mixmeas.utils_performance_measure import SuiteProfiler
from mixmeas.verification import CheckOutcome


def test_measure_step_records_outcome():
    profiler = SuiteProfiler()
    profiler.start()
    result = profiler.measure_step("ok", lambda: CheckOutcome(True, 0.0, 1e-8, "fine"))
    profiler.measure_step("plain", lambda x: x + 1, 1)
    profiler.stop()
    assert result.passed
    assert [step.passed for step in profiler.steps] == [True, None]
    assert profiler.steps[0].detail == "fine"
    assert profiler.all_passed
    assert profiler.get_total_time() >= 0.0


def test_measure_step_records_exceptions():
    profiler = SuiteProfiler(track_memory=False)

    def broken():
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        profiler.measure_step("broken", broken)
    assert not profiler.all_passed
    assert profiler.failed_steps[0].detail == "RuntimeError: boom"


def test_summary_table():
    profiler = SuiteProfiler(track_memory=False)
    profiler.measure_step("passing check", lambda: CheckOutcome(True, 0.0, 1.0))
    profiler.measure_step("failing check", lambda: CheckOutcome(False, 2.0, 1.0))
    table = profiler.summary_table()
    assert "VERIFICATION SUITE SUMMARY" in table
    assert "PASS" in table
    assert "FAIL" in table
    assert profiler._format_memory(512) == "512 B"
    assert profiler._format_memory(2048) == "2.00 KB"
    assert profiler._format_memory(3 * 1024 * 1024) == "3.00 MB"
