import json

import pytest

from main import QSeriesCLI, main, parse_product_factors


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_binomial(capsys):
    code, out, _ = run(capsys, "expand", "qbinom", "2", "2")
    assert code == 0
    assert out.strip() == "1 + q + 2*q^2 + q^3 + q^4"


def test_expand_kernel_and_g(capsys):
    assert run(capsys, "expand", "kernel", "C", "1", "1")[1].strip() == "q"
    out = run(capsys, "expand", "g", "--N", "1", "--M", "1", "--alphaK", "5", "--betaK", "4", "--K", "3")[1]
    assert out.strip() == "1 + q"


def test_expand_product(capsys):
    out = run(capsys, "expand", "product", "--factors", "4/4", "--denominator", "--cap", "4")[1]
    assert out.strip() == "1 + q + 2*q^2 + 3*q^3 + 4*q^4 + O(q^5)"


def test_parse_product_factors():
    factors = parse_product_factors("21,8,13/21; 4/4")
    assert [f.exponents for f in factors] == [(21, 8, 13), (4,)]
    assert [f.modulus for f in factors] == [21, 4]
    with pytest.raises(ValueError):
        parse_product_factors("21,8")


def test_verify_json_lines(capsys):
    code, out, _ = run(capsys, "verify", "eq2.16", "eq3.1", "--L", "0..3", "--format", "json", "--stable")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 9
    assert lines[-1] == {"total": 8, "passed": 8, "failed": 0, "skipped": 0}
    assert [r["identityId"] for r in lines[:-1]] == ["eq2.16"] * 4 + ["eq3.1"] * 4


def test_stable_output_is_reproducible(capsys):
    argv = ("verify", "eq2.19", "--L", "0..5", "--format", "json", "--stable", "--parallelism", "3")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_verify_series_with_cap(capsys):
    code, out, _ = run(capsys, "verify", "eq2.17", "jtp", "--cap", "15", "--stable")
    assert code == 0
    assert out.splitlines()[0] == "PASS eq2.17 cap=15"
    assert out.splitlines()[-1] == "total=4 passed=4 failed=0 skipped=0"


def test_verify_reading_group(capsys):
    code, out, _ = run(capsys, "verify", "eq3.15", "--cap", "12", "--format", "json", "--stable")
    reports = [json.loads(line) for line in out.splitlines()[:-1]]
    assert {r["identityId"] for r in reports} == {"eq3.15-as-printed", "eq3.15-pattern"}
    pattern = next(r for r in reports if r["identityId"] == "eq3.15-pattern")
    assert pattern["passed"]
    assert code == 0


def test_config_errors_exit_with_two(capsys, tmp_path):
    assert run(capsys, "verify", "eq9.99")[0] == 2
    assert run(capsys, "verify", "eq2.16", "--L", "4..1")[0] == 2
    code, _, err = run(capsys, "verify", "eq2.16", "--L", "1", "--output", str(tmp_path / "no" / "x.txt"))
    assert code == 2
    assert err.startswith("error:")


def test_parallelism_zero_is_a_config_error(capsys):
    assert run(capsys, "verify", "eq3.9", "--k", "0..2", "--parallelism", "0")[0] == 2
    assert run(capsys, "verify", "eq3.9", "--k", "0..2", "--parallelism", "2")[0] == 0


def test_range_flag_that_applies_to_no_identity(capsys):
    code, _, err = run(capsys, "verify", "eq3.9", "--L", "0..1")
    assert code == 2
    assert "--L" in err
    # a flag used by one of several ids is fine
    assert run(capsys, "verify", "eq3.9", "eq3.1", "--L", "0..1", "--k", "0..1")[0] == 0


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "verify", "eq3.2", "--L", "0..2", "--format", "json", "--output", str(target))
    assert code == 0
    assert out == ""
    assert len(target.read_text().splitlines()) == 4


def test_sweep_positivity_shows_only_failures(capsys):
    code, out, _ = run(capsys, "sweep-positivity", "--L", "0..3", "--n", "0..3", "--nu", "1..2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("total=")
    assert lines[0].endswith("failed=0 skipped=3")


def test_sweep_conjecture_point(capsys):
    argv = ("sweep-conjecture", "--N", "2", "--M", "2", "--alphaK", "1", "--betaK", "2", "--K", "2", "--show-passing")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0].startswith("PASS conjecture")
    outside = run(capsys, "sweep-conjecture", "--N", "0", "--M", "0", "--alphaK", "1", "--betaK", "1", "--K", "2")
    assert outside[0] == 0
    assert outside[1].strip() == "total=0 passed=0 failed=0 skipped=1"


def test_sweep_conjecture_point_needs_every_coordinate(capsys):
    assert run(capsys, "sweep-conjecture", "--N", "2", "--K", "2")[0] == 2


def test_sweep_conjecture_theorem1_family(capsys):
    code, out, _ = run(capsys, "sweep-conjecture", "--family", "theorem1", "--nu", "1..2", "--L", "0..4")
    assert code == 0
    assert out.strip() == "total=15 passed=15 failed=0 skipped=0"


def test_parallelism_from_environment(monkeypatch):
    monkeypatch.setenv("QSERIES_PARALLELISM", "3")
    assert QSeriesCLI().default_parallelism == 3
    monkeypatch.setenv("QSERIES_PARALLELISM", "three")
    with pytest.raises(ValueError):
        QSeriesCLI()


def test_argparse_rejects_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "eq2.13", "--L", "0..40"),
        ("verify", "eq2.21", "--nu", "2", "--s", "0..1", "--L", "0..20"),
        ("verify", "eq3.24", "--L", "0..20"),
    ],
)
def test_documented_runs_pass(capsys, argv):
    assert run(capsys, *argv)[0] == 0


@pytest.mark.slow
def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify-all", "--stable", "--parallelism", "4")
    assert code == 0
    assert " failed=0 " in out.splitlines()[-1]
