# services/group_action/__init__.py

from .permutation import GroupDocument, Permutation, PermutationGroup
from .action import (
    FreenessVerdict,
    GroupAction,
    OrbitDecomposition,
    act_on_element,
    act_on_partition,
    act_on_subset,
    is_free_action,
    orbits,
    quotient_complex,
)

__all__ = [
    'GroupDocument',
    'Permutation',
    'PermutationGroup',
    'FreenessVerdict',
    'GroupAction',
    'OrbitDecomposition',
    'act_on_element',
    'act_on_partition',
    'act_on_subset',
    'is_free_action',
    'orbits',
    'quotient_complex',
]
