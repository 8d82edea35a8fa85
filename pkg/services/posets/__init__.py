# services/posets/__init__.py

from .models import Partition, SubsetElement
from .poset import (
    FinitePoset,
    PosetDocument,
    build_reduced_partition_lattice,
    build_reduced_subset_lattice,
    chain_counts_by_length,
    enumerate_chains,
    expected_maximal_chains,
    stirling_element_count,
)

__all__ = [
    'Partition',
    'SubsetElement',
    'FinitePoset',
    'PosetDocument',
    'build_reduced_partition_lattice',
    'build_reduced_subset_lattice',
    'chain_counts_by_length',
    'enumerate_chains',
    'expected_maximal_chains',
    'stirling_element_count',
]
