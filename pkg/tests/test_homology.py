import pytest

from services.complex import DeltaComplex, euler_characteristic, order_complex, simplex_boundary_complex
from services.errors import InvalidArgument
from services.homology import HomologyGroup, HomologyReport, euler_from_betti, homology, parse_coefficients
from services.posets import FinitePoset


def _describe(report: HomologyReport):
    return [group.describe() for group in report.groups]


def _circle() -> DeltaComplex:
    return DeltaComplex(faces=(((),), ((0, 0),)))


def _projective_like() -> DeltaComplex:
    # one vertex, edges a and b, triangles bounding 2a - b and b
    return DeltaComplex(faces=(((),), ((0, 0), (0, 0)), ((0, 1, 0), (1, 1, 1))))


def test_parse_coefficients() -> None:
    assert parse_coefficients("Z,Q,F2,F5") == ["Z", "Q", "F2", "F5"]
    assert parse_coefficients(" z, f5 ,F5") == ["Z", "F5"]
    for bad in ("F4", "R", "F", ""):
        with pytest.raises(InvalidArgument):
            parse_coefficients(bad)


def test_group_description() -> None:
    assert HomologyGroup(dim=0, free_rank=0).describe() == "0"
    assert HomologyGroup(dim=0, free_rank=1).describe() == "Z"
    assert HomologyGroup(dim=1, free_rank=0, torsion=[5]).describe() == "Z/5"
    assert HomologyGroup(dim=2, free_rank=4, torsion=[5]).describe() == "Z^4 ⊕ Z/5"


def test_point_and_circle() -> None:
    point = DeltaComplex(faces=(((),),))
    report = homology(point, ("Z", "Q", "F2"))
    assert _describe(report) == ["Z"]
    assert euler_from_betti(report, "Q") == 1

    report = homology(_circle(), ("Z", "F3"))
    assert _describe(report) == ["Z", "Z"]
    assert report.betti("F3") == [1, 1]


def test_torsion_in_a_small_delta_complex() -> None:
    c = _projective_like()
    c.check_simplicial_identities()
    report = homology(c, ("Z", "Q", "F2", "F3"))
    assert _describe(report) == ["Z", "Z/2", "0"]
    assert report.betti("Q") == [1, 0, 0]
    assert report.betti("F2") == [1, 1, 1]
    assert report.betti("F3") == [1, 0, 0]
    for field in ("Q", "F2", "F3"):
        assert euler_from_betti(report, field) == euler_characteristic(c) == 1


def test_partition_lattice_is_a_wedge_of_spheres(partition5_report) -> None:
    assert _describe(partition5_report) == ["Z", "0", "Z^24"]
    assert euler_from_betti(partition5_report, "Q") == 25


def test_subset_lattice_is_a_sphere(subset5_report) -> None:
    assert _describe(subset5_report) == ["Z", "0", "0", "Z"]
    assert _describe(homology(simplex_boundary_complex(5))) == _describe(subset5_report)


def test_partition_quotient(partition5_quotient_report) -> None:
    report = partition5_quotient_report
    assert _describe(report) == ["Z", "Z/5", "Z^4"]
    assert report.betti("F5") == [1, 1, 5]
    assert report.betti("F2") == [1, 0, 4]
    for field in ("Q", "F2", "F5"):
        assert euler_from_betti(report, field) == 5


def test_subset_quotient(subset5_quotient_report) -> None:
    report = subset5_quotient_report
    assert _describe(report) == ["Z", "Z/5", "0", "Z"]
    assert report.betti("F5") == [1, 1, 1, 1]
    assert report.betti("Q") == [1, 0, 0, 1]
    for field in ("Q", "F2", "F5"):
        assert euler_from_betti(report, field) == 0


def test_max_dim_limits_the_computation(partition5_quotient) -> None:
    report = homology(partition5_quotient, ("Z",), max_dim=1)
    assert _describe(report) == ["Z", "Z/5"]
    assert report.is_truncated
    with pytest.raises(InvalidArgument):
        euler_from_betti(report, "Q")
    with pytest.raises(InvalidArgument):
        report.group(2)


def test_euler_needs_the_requested_field(partition5_quotient) -> None:
    report = homology(partition5_quotient, ("F2",))
    assert report.groups == []
    with pytest.raises(InvalidArgument):
        euler_from_betti(report, "F5")
    with pytest.raises(InvalidArgument):
        homology(partition5_quotient, ("F6",))


def test_report_json_shape(partition5_quotient_report) -> None:
    data = partition5_quotient_report.model_dump(mode="json")
    assert data["coefficients"] == "Z,Q,F2,F5"
    assert data["groups"][1] == {"dim": 1, "free_rank": 0, "torsion": [5]}
    assert data["field_betti"]["Q"] == [1, 0, 4]
    assert HomologyReport.model_validate(data) == partition5_quotient_report


def test_poset_with_a_maximum_is_a_cone() -> None:
    # two minima below two middle elements: the order complex is a square
    square = [(0, 2), (1, 2), (0, 3), (1, 3)]
    circle = order_complex(FinitePoset.from_relation(["a", "b", "c", "d"], square))
    assert _describe(homology(circle)) == ["Z", "Z"]

    cone = order_complex(FinitePoset.from_relation(["a", "b", "c", "d", "top"], square + [(2, 4), (3, 4)]))
    assert cone.dim == 2
    assert _describe(homology(cone, ("Z", "F2"))) == ["Z", "0", "0"]
    assert homology(cone, ("F2",)).betti("F2") == [1, 0, 0]


def test_field_betti_numbers_bound_rational_ones(partition5_report, partition5_quotient_report,
                                                 subset5_report, subset5_quotient_report) -> None:
    for report in (partition5_report, partition5_quotient_report, subset5_report, subset5_quotient_report):
        rational = report.betti("Q")
        for field in ("F2", "F5"):
            assert all(b >= q for b, q in zip(report.betti(field), rational))
    assert partition5_quotient_report.betti("F5")[1] > partition5_quotient_report.betti("Q")[1]
