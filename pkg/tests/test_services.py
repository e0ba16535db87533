import json

import pytest

from models.parameters import GParams
from models.reports import IdentityReport, RunSummary
from models.run_config import IntRange, OutputFormat
from services.report_service import ReportService
from services.sweep_service import (
    SweepService,
    conjecture_tasks,
    expand_grid,
    identity_param_names,
    identity_tasks,
    point_task,
    positivity_tasks,
    series_tasks,
    theorem1_tasks,
)
from verifiers.errors import UnknownIdentity


def R(text):
    return IntRange.parse(text)


def test_int_range_parsing():
    assert R("2..5").values() == [2, 3, 4, 5]
    assert R("-1..1").values() == [-1, 0, 1]
    assert R("7").values() == [7]
    with pytest.raises(ValueError):
        R("5..2")
    with pytest.raises(ValueError):
        R("a..b")


def test_expand_grid_order():
    grid = list(expand_grid(["L", "a"], {"L": R("0..1"), "a": R("-1..0")}))
    assert grid == [{"L": 0, "a": -1}, {"L": 0, "a": 0}, {"L": 1, "a": -1}, {"L": 1, "a": 0}]


def test_identity_tasks_use_defaults_and_overrides():
    batch = identity_tasks("eq2.1", {"L": R("0..2")})
    assert len(batch.tasks) == 3 * 13
    assert batch.skipped == 0


def test_identity_tasks_count_inadmissible_cells():
    batch = identity_tasks("eq2.21", {"nu": R("1..2"), "s": R("0..1"), "L": R("0..1")})
    assert len(batch.tasks) == 6
    assert batch.skipped == 2


def test_unknown_identity_task():
    with pytest.raises(UnknownIdentity):
        identity_tasks("eq0.0")


def test_series_tasks_expand_groups_and_shifts():
    group = series_tasks("eq3.14", cap=5)
    assert [t.identity_id for t in group.tasks] == ["eq3.14-as-printed", "eq3.14-pattern"]
    jtp = identity_tasks("jtp", {"s": R("-2..2")}, cap=10)
    assert [t.params for t in jtp.tasks] == [{"s": -1}, {"s": 0}, {"s": 1}]
    assert jtp.skipped == 2


def test_sweep_runs_in_order_on_a_pool():
    batch = identity_tasks("eq3.1", {"L": R("0..9")})
    serial = SweepService(1).run(batch)
    pooled = SweepService(4).run(batch)
    assert [r.params for r in serial] == [r.params for r in pooled]
    assert [r.params["L"] for r in serial] == list(range(10))
    assert all(r.passed for r in pooled)


def test_sweep_rejects_zero_workers():
    with pytest.raises(ValueError):
        SweepService(0)


def test_failing_task_becomes_a_failed_report():
    batch = identity_tasks("eq2.16", {"L": R("0..1")})

    def explode():
        raise RuntimeError("boom")

    batch.tasks[0].run = explode
    reports = SweepService().run(batch)
    failed = [r for r in reports if not r.passed]
    assert len(failed) == 1
    assert failed[0].error == "RuntimeError: boom"
    assert failed[0].notes == []
    assert failed[0].to_wire(stable=True)["error"] == "RuntimeError: boom"


def test_summary_excuses_the_failing_reading():
    reports = [
        IdentityReport(identity_id="eq3.14-as-printed", passed=False, cap=10, first_mismatch_exp=7),
        IdentityReport(identity_id="eq3.14-pattern", passed=True, cap=10),
        IdentityReport(identity_id="eq3.15-as-printed", passed=False, cap=10, first_mismatch_exp=6),
        IdentityReport(identity_id="eq3.15-pattern", passed=False, cap=10, first_mismatch_exp=9),
    ]
    summary = SweepService.summarize(reports, skipped=3)
    assert summary == RunSummary(total=4, passed=1, failed=2, skipped=3)
    assert summary.exit_code == 1


def test_summary_leaves_reports_untouched():
    reports = [
        IdentityReport(identity_id="eq3.14-as-printed", passed=False, cap=10, first_mismatch_exp=7),
        IdentityReport(identity_id="eq3.14-pattern", passed=True, cap=10),
    ]
    before = [r.model_dump() for r in reports]
    SweepService.summarize(reports)
    SweepService.summarize(reports)
    assert [r.model_dump() for r in reports] == before

    annotated = SweepService.annotate_readings(reports)
    assert annotated[0].notes == ["another reading of eq3.14 passed"]
    assert annotated[1] is reports[1]
    assert reports[0].notes == []
    assert SweepService.annotate_readings(annotated)[0].notes == annotated[0].notes


def test_unused_range_flags_are_reported(captured_warnings):
    batch = identity_tasks("eq3.9", {"L": R("0..1")})
    assert len(batch.tasks) == len(identity_tasks("eq3.9").tasks)
    assert any("takes no L range" in r["message"] for r in captured_warnings)
    assert identity_param_names("eq3.14") == set()
    assert identity_param_names("jtp") == {"s"}
    assert identity_param_names("eq2.1") == {"L", "a"}


def test_positivity_sweep_passes():
    batch = positivity_tasks({"L": R("0..4"), "n": R("0..4"), "nu": R("1..2")})
    # three proven families start at N = L-1
    assert batch.skipped == 3
    reports = SweepService(2).run(batch)
    summary = SweepService.summarize(reports, batch.skipped)
    assert summary.failed == 0
    ids = {r.identity_id for r in reports}
    assert {"kernel-C", "kernel-W", "kernel-O", "borwein", "theorem1"} <= ids


def test_theorem1_tasks_skip_bad_nu():
    batch = theorem1_tasks([0, 1], [0, 1], 100)
    assert batch.skipped == 1
    assert len(batch.tasks) == 2
    assert batch.tasks[0].params["K"] == 3


def test_conjecture_sweep_and_point():
    batch = conjecture_tasks([2], 3)
    assert batch.skipped > 0
    summary = SweepService.summarize(SweepService().run(batch), batch.skipped)
    assert summary.failed == 0
    assert len(point_task(GParams(N=2, M=2, alpha_k=1, beta_k=2, K=2)).tasks) == 1
    assert point_task(GParams(N=0, M=0, alpha_k=1, beta_k=1, K=2)).skipped == 1
    with pytest.raises(ValueError):
        conjecture_tasks([1], 3)


def test_conjecture_sweep_restricts_alpha_and_beta():
    batch = conjecture_tasks([3], 2, alpha_range=R("3"), beta_range=R("0..1"))
    assert batch.tasks
    assert all(t.params["alphaK"] == 3 and t.params["betaK"] <= 1 for t in batch.tasks)


def _sample_reports():
    passing = IdentityReport(identity_id="eq2.16", params={"L": 1}, passed=True, lhs="1 + q + q^2",
                             rhs="1 + q + q^2", elapsed_millis=12)
    failing = IdentityReport(identity_id="eq3.14-as-printed", passed=False, cap=10, lhs="1", rhs="1 + q",
                             first_mismatch_exp=1, elapsed_millis=40, notes=["exponent 2T(m+n) taken as printed"])
    return [passing, failing], RunSummary(total=2, passed=1, failed=1)


def test_text_report():
    reports, summary = _sample_reports()
    lines = ReportService(OutputFormat.TEXT, stable=True).render(reports, summary)
    assert lines[0] == "PASS eq2.16 L=1"
    assert lines[1].splitlines()[0] == "FAIL eq3.14-as-printed cap=10"
    assert "  sides differ first at q^1" in lines[1]
    assert "  rhs: 1 + q" in lines[1]
    assert lines[-1] == "total=2 passed=1 failed=1 skipped=0"
    timed = ReportService(OutputFormat.TEXT).format_report(reports[0])
    assert timed == "PASS eq2.16 L=1 (12 ms)"


def test_json_lines_report():
    reports, summary = _sample_reports()
    lines = ReportService(OutputFormat.JSON, stable=True).render(reports, summary)
    first = json.loads(lines[0])
    assert first["identityId"] == "eq2.16"
    assert first["elapsedMillis"] == 0
    assert "cap" not in first and "notes" not in first
    second = json.loads(lines[1])
    assert second["cap"] == 10
    assert second["firstMismatchExp"] == 1
    assert json.loads(lines[2]) == {"total": 2, "passed": 1, "failed": 1, "skipped": 0}


def test_failures_only():
    reports, summary = _sample_reports()
    lines = ReportService(OutputFormat.TEXT, stable=True, show_passing=False).render(reports, summary)
    assert len(lines) == 2
    assert lines[0].startswith("FAIL")


def test_write_to_file(tmp_path):
    reports, summary = _sample_reports()
    target = tmp_path / "run.jsonl"
    ReportService(OutputFormat.JSON, str(target), stable=True).write(reports, summary)
    assert len(target.read_text().splitlines()) == 3
    with pytest.raises(OSError):
        ReportService(OutputFormat.JSON, str(tmp_path / "missing" / "run.jsonl")).write(reports, summary)


def test_run_config_validation():
    from models.run_config import Command, RunConfig

    with pytest.raises(ValueError):
        RunConfig(command=Command.VERIFY)
    with pytest.raises(ValueError):
        RunConfig(command=Command.VERIFY_ALL, parallelism=0)
    with pytest.raises(ValueError):
        RunConfig(command=Command.VERIFY_ALL, cap=-1)
    config = RunConfig(command="sweep-conjecture", ranges={"L": R("0..3")})
    assert config.command == Command.SWEEP_CONJECTURE
    assert config.format == OutputFormat.TEXT
