# services/homology/__init__.py

from .matrix import IntegerMatrix, boundary_matrix
from .smith import SmithForm, invariant_factors_from_diagonal, rank_mod, smith_normal_form
from .report import (
    HomologyGroup,
    HomologyReport,
    check_boundary_squares,
    euler_from_betti,
    homology,
    parse_coefficients,
)

__all__ = [
    'IntegerMatrix',
    'boundary_matrix',
    'SmithForm',
    'invariant_factors_from_diagonal',
    'rank_mod',
    'smith_normal_form',
    'HomologyGroup',
    'HomologyReport',
    'check_boundary_squares',
    'euler_from_betti',
    'homology',
    'parse_coefficients',
]
