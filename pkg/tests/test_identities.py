import pytest

from algebra.polycore import parse_poly
from verifiers import identities
from verifiers.errors import MissingParam, UnknownIdentity, VerificationError

EXPECTED_IDS = {
    "eq1.6", "eq2.1", "eq2.6a", "eq2.6c", "eq2.6d", "eq2.6f", "eq2.13", "eq2.14", "eq2.15",
    "eq2.16", "eq2.19", "eq2.21", "eq2.22", "eq3.1", "eq3.2", "eq3.3", "eq3.4", "eq3.5",
    "eq3.7", "eq3.8", "eq3.9", "eq3.10", "eq3.13-bounded", "eq3.14-bounded", "eq3.15-bounded",
    "eq3.16x", "eq3.17y", "eq3.18z", "eq3.19w", "eq3.20-bounded", "eq3.22-bounded",
    "eq3.23-bounded", "eq3.24", "eq3.25",
}


def first_points(descriptor, count=4):
    """The first few grid points of each parameter, crossed."""
    grid = {}
    for name, rng in descriptor.default_grid().items():
        values = rng.values()
        grid[name] = values[:count] if name != "a" else [v for v in values if -2 <= v <= 2]
    points = [{}]
    for name in descriptor.param_names:
        points = [dict(p, **{name: v}) for p in points for v in grid[name]]
    return [p for p in points if descriptor.admissible(p)]


def test_registry_contents():
    assert {d.identity_id for d in identities.registry_list()} == EXPECTED_IDS


def test_titles_name_the_bounded_rogers_ramanujan_identities():
    assert identities.describe("eq3.4").title.startswith("Bressoud's bounded version of the first")
    assert identities.describe("eq3.5").title.startswith("Warnaar's bounded version of the second")


@pytest.mark.parametrize("identity_id", sorted(EXPECTED_IDS))
def test_identity_holds_on_small_instances(identity_id):
    descriptor = identities.describe(identity_id)
    for params in first_points(descriptor):
        report = identities.verify(identity_id, params)
        assert report.passed, (identity_id, params, report.notes)
        assert report.first_mismatch_exp is None
        assert report.negative_witness is None


def test_bounded_lebesgue_report():
    report = identities.verify("eq2.16", {"L": 1})
    assert report.lhs == "1 + q + q^2"
    assert report.rhs == "1 + q + q^2"
    assert report.identity_id == "eq2.16"
    assert report.params == {"L": 1}


def test_bounded_pentagonal_sides():
    sides = identities.describe("eq2.19").build({"L": 1})
    assert sides.lhs == parse_poly("1 + q + q^2")
    assert sides.cross == sides.rhs
    assert sides.cross_label == "G(1, 2, 4/3, 2/3, 3)"


def test_theorem1_cross_check_shifts_by_triangular_s():
    sides = identities.describe("eq2.22").build({"nu": 2, "s": 1, "L": 3})
    assert sides.cross == sides.rhs
    assert sides.rhs.min_exp >= 1


def test_render_limit_drops_long_sides():
    report = identities.verify("eq2.16", {"L": 6}, render_limit=2)
    assert report.passed
    assert report.lhs is None and report.rhs is None


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        identities.describe("eq9.99")
    with pytest.raises(KeyError):
        identities.verify("eq9.99", {"L": 1})


def test_missing_parameter():
    with pytest.raises(MissingParam):
        identities.verify("eq2.16", {})
    with pytest.raises(MissingParam):
        identities.verify("eq2.1", {"L": 2})


def test_inadmissible_parameters():
    with pytest.raises(VerificationError):
        identities.verify("eq2.21", {"nu": 2, "s": 2, "L": 3})
    with pytest.raises(VerificationError):
        identities.verify("eq2.16", {"L": -1})


def test_descriptor_summary():
    summary = identities.describe("eq2.1").summary()
    assert summary["identityId"] == "eq2.1"
    assert summary["params"] == {"L": "0..12", "a": "-6..6"}
    assert summary["positivity"] is True


def test_positivity_report_names_failing_polynomial():
    good, bad = parse_poly("1 + q"), parse_poly("1 - q")
    report = identities.positivity_report("borwein", {"n": 1}, [good, bad])
    assert not report.passed
    assert report.negative_witness == 1
    assert report.notes == ["polynomial 1 has a negative coefficient at q^1"]
    assert report.lhs is None
    single = identities.positivity_report("conjecture", {}, [good])
    assert single.passed and single.lhs == "1 + q"


def test_failed_cross_check_reports_the_disagreeing_sides(monkeypatch):
    def build(p):
        return identities.Sides(
            lhs=parse_poly("1 + q"), rhs=parse_poly("1 + q"), cross=parse_poly("1 + q + q^3"), cross_label="G"
        )

    descriptor = identities.IdentityDescriptor(
        identity_id="cross-only", equation="", title="", params=identities._schema(L="0..1"), build=build
    )
    monkeypatch.setitem(identities._REGISTRY, "cross-only", descriptor)
    report = identities.verify("cross-only", {"L": 0})
    assert not report.passed
    # the witness belongs to the pair of sides the report shows
    assert report.first_mismatch_exp == 3
    assert (report.lhs, report.rhs) == ("1 + q", "1 + q + q^3")
    assert report.to_wire()["crossMismatchExp"] == 3
    assert "sides agree; right side differs from G at q^3" in report.notes


def test_passing_report_omits_cross_and_error_fields():
    wire = identities.verify("eq2.22", {"nu": 2, "s": 1, "L": 3}).to_wire()
    assert "crossMismatchExp" not in wire
    assert "error" not in wire
