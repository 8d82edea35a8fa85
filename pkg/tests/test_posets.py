import pytest

from services.errors import InvalidArgument, ResourceCapExceeded
from services.posets import (
    FinitePoset,
    Partition,
    SubsetElement,
    build_reduced_partition_lattice,
    build_reduced_subset_lattice,
    chain_counts_by_length,
    enumerate_chains,
    expected_maximal_chains,
    stirling_element_count,
)


def test_partition_canonicalizes_block_and_element_order() -> None:
    part = Partition.from_blocks([[5, 4], [3, 1], [2]])
    assert part.blocks == ((1, 3), (2,), (4, 5))
    assert str(part) == "{1,3}|{2}|{4,5}"
    assert Partition.from_blocks(part.blocks, 5) == part
    assert Partition.parse("{4,5}|{2}|{3,1}") == part


def test_partition_rejects_bad_blocks() -> None:
    with pytest.raises(InvalidArgument):
        Partition.from_blocks([[1, 2], [2, 3]])
    with pytest.raises(InvalidArgument):
        Partition.from_blocks([[1, 2]], 3)
    with pytest.raises(InvalidArgument):
        Partition.parse("{1,2}|{3")


def test_partition_refinement_and_rank() -> None:
    fine = Partition.parse("{1}|{2}|{3,4}")
    coarse = Partition.parse("{1,2}|{3,4}")
    assert fine.refines(coarse)
    assert not coarse.refines(fine)
    assert fine.rank == 1 and coarse.rank == 2
    assert coarse.num_blocks == 2


def test_subset_element_bounds() -> None:
    assert str(SubsetElement.from_members([3, 1], 5)) == "{1,3}"
    assert SubsetElement.parse("{2,4}", 5).mask == 0b1010
    with pytest.raises(InvalidArgument):
        SubsetElement.from_members([], 5)
    with pytest.raises(InvalidArgument):
        SubsetElement.from_members([1, 2, 3], 3)
    with pytest.raises(InvalidArgument):
        SubsetElement.from_members([0, 1], 3)


def test_partition_lattice_n3_is_an_antichain() -> None:
    poset = build_reduced_partition_lattice(3)
    assert len(poset) == 3
    assert poset.covers == ()
    assert [str(e) for e in poset.elements] == ["{1}|{2,3}", "{1,2}|{3}", "{1,3}|{2}"]


def test_partition_lattice_n4() -> None:
    poset = build_reduced_partition_lattice(4)
    assert len(poset) == 13
    assert poset.count_maximal_chains() == 18


def test_partition_lattice_n5(partition5) -> None:
    assert len(partition5) == 50 == stirling_element_count(5)
    ranks = [partition5.ranks.count(r) for r in (1, 2, 3)]
    assert ranks == [10, 25, 15]
    assert partition5.count_maximal_chains() == 180 == expected_maximal_chains(5)
    partition5.validate()


def test_partition_lattice_order_is_refinement(partition5) -> None:
    for i, u in enumerate(partition5.elements):
        for j, v in enumerate(partition5.elements):
            assert partition5.less_than(i, j) == (u != v and u.refines(v))


def test_partition_lattice_needs_n_at_least_3() -> None:
    with pytest.raises(InvalidArgument):
        build_reduced_partition_lattice(2)


def test_subset_lattice(subset5) -> None:
    assert len(subset5) == 30
    assert subset5.count_maximal_chains() == 120
    assert len(subset5.covers) == 70
    assert len(subset5.minimal_elements()) == 5
    assert len(subset5.maximal_elements()) == 5
    subset5.validate()

    small = build_reduced_subset_lattice(2)
    assert [str(e) for e in small.elements] == ["{1}", "{2}"]
    with pytest.raises(InvalidArgument):
        build_reduced_subset_lattice(1)


def test_indices_form_a_linear_extension(partition5) -> None:
    for i, j in partition5.covers:
        assert i < j
        assert partition5.ranks[j] == partition5.ranks[i] + 1


def test_up_and_down_sets_agree(subset5) -> None:
    for i in range(len(subset5)):
        for j in subset5.up_set(i):
            assert i in subset5.down_set(j)


def test_chains_of_an_antichain() -> None:
    poset = FinitePoset.from_relation(["a", "b", "c"], [])
    assert enumerate_chains(poset) == [(0,), (1,), (2,)]


def test_chains_are_lexicographic() -> None:
    poset = FinitePoset.from_relation(["a", "b", "c"], [(0, 1), (1, 2)])
    assert poset.less_than(0, 2)
    assert poset.covers == ((0, 1), (1, 2))
    assert enumerate_chains(poset) == [(0,), (0, 1), (0, 1, 2), (0, 2), (1,), (1, 2), (2,)]
    assert enumerate_chains(poset, max_length=1) == [(0,), (1,), (2,)]


def test_chain_counts_of_partition_lattice(partition5) -> None:
    assert chain_counts_by_length(enumerate_chains(partition5)) == (50, 205, 180)


def test_chain_limit_raises(partition5) -> None:
    with pytest.raises(ResourceCapExceeded):
        enumerate_chains(partition5, limit=100)


def test_relation_must_follow_element_order() -> None:
    with pytest.raises(InvalidArgument):
        FinitePoset.from_relation(["a", "b"], [(1, 0)])
    with pytest.raises(InvalidArgument):
        FinitePoset.from_relation(["a", "b"], [(0, 2)])


def test_document_rebuilds_the_same_order(partition5) -> None:
    document = partition5.to_document()
    assert document.elements[0] == "{1}|{2}|{3}|{4,5}"
    rebuilt = FinitePoset.from_document(document)
    assert rebuilt.elements == partition5.elements
    assert rebuilt.up_masks == partition5.up_masks
    assert rebuilt.covers == partition5.covers
    assert rebuilt.ranks == partition5.ranks


def test_repeated_members_are_rejected() -> None:
    with pytest.raises(InvalidArgument):
        Partition.parse("{1,1,2}|{3}")
    with pytest.raises(InvalidArgument):
        Partition.from_blocks([[1, 2, 2], [3]], 3)
    with pytest.raises(InvalidArgument):
        SubsetElement.parse("{2,2}", 5)
    with pytest.raises(InvalidArgument):
        SubsetElement.from_members([1, 3, 1], 5)
