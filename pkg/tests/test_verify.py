import pytest

import services.verify.suite as suite_module
from services.complex import DeltaComplex
from services.errors import InvalidArgument, NonFreeActionError, ResourceCapExceeded
from services.group_action import GroupAction, PermutationGroup
from services.homology import homology
from services.verify import (
    ArtifactBuilder,
    CLAIM_ORDER,
    WedgeStatus,
    check_free_act_h1,
    check_transfer_vanishing,
    check_wedge_obstruction,
    predict_quotient_betti,
    run_paper_suite,
)
from utils.report_formatting import suite_report_to_text, to_canonical_json


@pytest.fixture(scope="module")
def suite5():
    return run_paper_suite(5)


def _verdicts(result, claim_id):
    return [v for v in result.verdicts if v.claim_id == claim_id]


def test_predicted_bettis() -> None:
    assert predict_quotient_betti(24, 2, 5).betti == [1, 0, 4]
    assert predict_quotient_betti(1, 3, 5).betti == [1, 0, 0, 1]
    assert predict_quotient_betti(7, 2, 1).top() == 7
    assert predict_quotient_betti(7, 3, 1).top() == 7
    assert predict_quotient_betti(720, 4, 7).top() == 102


def test_prediction_rejects_impossible_actions() -> None:
    with pytest.raises(InvalidArgument):
        predict_quotient_betti(24, 2, 7)
    with pytest.raises(InvalidArgument):
        predict_quotient_betti(1, 0, 1)


def test_prediction_matches_computed_quotients(partition5_report, partition5_quotient_report,
                                               subset5_report, subset5_quotient_report) -> None:
    k = partition5_report.group(2).free_rank
    assert predict_quotient_betti(k, 2, 5).betti == partition5_quotient_report.betti("Q")
    k = subset5_report.group(3).free_rank
    assert predict_quotient_betti(k, 3, 5).betti == subset5_quotient_report.betti("Q")


def test_free_act_h1(subset5_complex, subset5_action, partition5_complex, partition5_action) -> None:
    verdict = check_free_act_h1(subset5_complex, subset5_action)
    assert verdict.passed
    assert verdict.computed == "Z/5"
    assert "assumes simply connected" in verdict.assumptions

    assert check_free_act_h1(partition5_complex, partition5_action).passed


def test_free_act_h1_with_trivial_group(subset5, subset5_complex) -> None:
    verdict = check_free_act_h1(subset5_complex, GroupAction.build(PermutationGroup.trivial(5), subset5))
    assert verdict.expected == "0"
    assert verdict.passed


def test_free_act_h1_refuses_non_free_actions(partition5, partition5_complex) -> None:
    action = GroupAction.build(PermutationGroup.from_cycles(["(2 3 4 5)"], 5), partition5)
    with pytest.raises(NonFreeActionError):
        check_free_act_h1(partition5_complex, action)


def test_wedge_obstruction(partition5_report, partition5_quotient_report,
                           subset5_report, subset5_quotient_report) -> None:
    assert check_wedge_obstruction(partition5_quotient_report).status == WedgeStatus.NOT_WEDGE
    assert check_wedge_obstruction(subset5_quotient_report).status == WedgeStatus.NOT_WEDGE
    assert check_wedge_obstruction(partition5_report).status == WedgeStatus.POSSIBLY_WEDGE
    assert check_wedge_obstruction(subset5_report).status == WedgeStatus.POSSIBLY_WEDGE

    point = homology(DeltaComplex(faces=(((),),)), ("Z",))
    assert check_wedge_obstruction(point).status == WedgeStatus.POSSIBLY_WEDGE
    assert "Z/5" in check_wedge_obstruction(partition5_quotient_report).reason


def test_wedge_obstruction_needs_integral_homology(partition5_quotient) -> None:
    with pytest.raises(InvalidArgument):
        check_wedge_obstruction(homology(partition5_quotient, ("F2",)))


def test_transfer_vanishing(partition5_report, partition5_quotient_report,
                            subset5_report, subset5_quotient_report) -> None:
    verdict = check_transfer_vanishing(partition5_report, partition5_quotient_report)
    assert verdict.passed
    assert verdict.expected == {"1": 0}
    assert check_transfer_vanishing(subset5_report, subset5_quotient_report).passed
    assert check_transfer_vanishing(subset5_report, subset5_report).passed
    with pytest.raises(InvalidArgument):
        check_transfer_vanishing(partition5_report, subset5_quotient_report)


def test_suite_passes_for_p5(suite5) -> None:
    assert suite5.complete
    assert suite5.passed
    assert suite5.failed_verdicts() == []
    claim_ids = {v.claim_id for v in suite5.verdicts}
    assert set(CLAIM_ORDER) <= claim_ids


def test_suite_equations_for_p5(suite5) -> None:
    assert [v.computed for v in _verdicts(suite5, "eq1")] == ["Z/5"]
    assert [v.computed for v in _verdicts(suite5, "eq2")] == ["Z"]
    assert [v.computed for v in _verdicts(suite5, "eq3")] == ["Z/5"]
    assert [v.computed for v in _verdicts(suite5, "eq4")] == ["Z^4"]
    assert [v.computed for v in _verdicts(suite5, "lemma-free-Lp")] == ["free"]
    assert [v.computed for v in _verdicts(suite5, "lemma-free-Pip")] == ["free"]
    assert len(_verdicts(suite5, "thm-euler")) == 4
    assert sorted(v.computed for v in _verdicts(suite5, "wedge-obstruction")) == [
        "not-wedge", "not-wedge", "possibly-wedge", "possibly-wedge",
    ]


def test_suite_orders_verdicts_by_claim(suite5) -> None:
    positions = [CLAIM_ORDER.index(v.claim_id) for v in suite5.verdicts]
    assert positions == sorted(positions)


def test_suite_reports_exploratory_homology(suite5) -> None:
    assert [(f.subject, f.group) for f in suite5.findings] == [("H_2(Δ(L_5)/C_5)", "0")]


def test_suite_json_is_deterministic(suite5) -> None:
    text = to_canonical_json(suite5)
    assert '"pass": true' in text
    assert '"millis": null' in text
    assert to_canonical_json(run_paper_suite(5, include_partition=False)) == \
        to_canonical_json(run_paper_suite(5, include_partition=False))
    assert "Overall: PASS" in suite_report_to_text(suite5)


def test_suite_rejects_bad_primes() -> None:
    with pytest.raises(InvalidArgument, match="not prime"):
        run_paper_suite(4)
    with pytest.raises(InvalidArgument):
        run_paper_suite(3)
    with pytest.raises(InvalidArgument):
        run_paper_suite(5, include_partition=False, include_subset=False)


def test_suite_with_non_free_group() -> None:
    group = PermutationGroup.from_cycles(["(2 3 4 5)"], 5)
    result = run_paper_suite(5, include_subset=False, group=group)
    assert result.complete
    assert not result.passed
    [freeness] = result.verdicts
    assert freeness.claim_id == "lemma-free-Pip"
    assert not freeness.passed
    assert freeness.computed == "not free: (2 3 4 5) fixes {1}|{2,3,4,5}"


def test_suite_stops_at_resource_caps() -> None:
    result = run_paper_suite(5, artifacts=ArtifactBuilder(max_simplices=100))
    assert not result.complete
    assert not result.passed
    assert "simplices" in result.incomplete_reason

    result = run_paper_suite(5, time_budget_s=1e-9)
    assert not result.complete
    assert "time budget" in result.incomplete_reason


def test_suite_records_timings_on_request() -> None:
    result = run_paper_suite(5, include_partition=False, record_timings=True)
    assert result.passed
    assert all(v.millis is not None for v in result.verdicts)


def test_suite_with_trivial_group() -> None:
    result = run_paper_suite(5, include_partition=False, group=PermutationGroup.trivial(5))
    assert result.group == "<()>"
    assert result.passed, [(v.claim_id, v.expected, v.computed) for v in result.failed_verdicts()]
    wedge = [v for v in _verdicts(result, "wedge-obstruction") if v.subject == "Δ(L_5)/<()>"]
    assert [v.computed for v in wedge] == ["possibly-wedge"]


def test_lattice_size_is_checked_before_building(monkeypatch) -> None:
    def fail(n):
        raise AssertionError("lattice was built past the cap")

    monkeypatch.setattr(suite_module, "build_reduced_partition_lattice", fail)
    monkeypatch.setattr(suite_module, "build_reduced_subset_lattice", fail)
    artifacts = ArtifactBuilder(max_simplices=1000)
    with pytest.raises(ResourceCapExceeded) as excinfo:
        artifacts.lattice("partition", 9)
    assert excinfo.value.requested == 21145
    with pytest.raises(ResourceCapExceeded):
        artifacts.lattice("subset", 11)
