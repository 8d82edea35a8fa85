import pytest

from services.complex import order_complex
from services.group_action import GroupAction, PermutationGroup, quotient_complex
from services.homology import homology
from services.posets import build_reduced_partition_lattice, build_reduced_subset_lattice
from services.verify import run_paper_suite

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def c7():
    return PermutationGroup.cyclic(7)


def test_subset_quotient_for_p7(c7) -> None:
    subset7 = build_reduced_subset_lattice(7)
    quotient = quotient_complex(order_complex(subset7), GroupAction.build(c7, subset7))
    report = homology(quotient, ("Z", "F7"))
    assert report.group(1).describe() == "Z/7"
    assert report.group(5).describe() == "Z"
    assert report.betti("F7") == [1, 1, 1, 1, 1, 1]


def test_partition_quotient_for_p7(c7) -> None:
    partition7 = build_reduced_partition_lattice(7)
    quotient = quotient_complex(order_complex(partition7), GroupAction.build(c7, partition7))
    report = homology(quotient, ("Z", "Q"))
    assert report.group(1).describe() == "Z/7"
    assert report.group(4).free_rank == 102
    assert report.betti("Q") == [1, 0, 0, 0, 102]


def test_suite_passes_for_p7() -> None:
    result = run_paper_suite(7)
    assert result.complete
    assert result.passed, [v.claim_id for v in result.failed_verdicts()]
