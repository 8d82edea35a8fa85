# services/homology/smith.py

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import isprime

from services.errors import InvalidArgument
from .matrix import IntegerMatrix

logger = logging.getLogger(__name__)

DenseMatrix = Tuple[Tuple[int, ...], ...]


def invariant_factors_from_diagonal(values: Iterable[int]) -> Tuple[int, ...]:
    """Normalize the nonzero diagonal of a diagonal integer matrix to a divisibility chain.

    Uses diag(a, b) ~ diag(gcd(a, b), lcm(a, b)); factors equal to 1 are kept.
    """
    diagonal = sorted(abs(v) for v in values if v != 0)
    ones = [v for v in diagonal if v == 1]
    rest = [v for v in diagonal if v != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            g = gcd(rest[i], rest[j])
            rest[i], rest[j] = g, rest[i] * rest[j] // g
    return tuple(ones + rest)


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors of an integer matrix, optionally with witnesses U, V such that U*m*V = diag."""
    rows: int
    cols: int
    invariant_factors: Tuple[int, ...]
    left: Optional[DenseMatrix] = None
    right: Optional[DenseMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    def diagonal_matrix(self) -> List[List[int]]:
        diag = [[0] * self.cols for _ in range(self.rows)]
        for i, d in enumerate(self.invariant_factors):
            diag[i][i] = d
        return diag


class _SparseEliminator:
    """Row/column elimination on dict-of-dict storage, over Z or over F_q.

    Unit pivots are taken first: columns shortest first, and within a column
    the unit sitting in the shortest row. Over Z a unit pivot lets its row and
    column be dropped after clearing the column, since the remaining column
    operations only touch the pivot row. When no unit is left the smallest
    entry in absolute value becomes the pivot (ties: least fill) and is
    reduced by Euclidean steps until it is isolated.
    """

    def __init__(self, m: IntegerMatrix, modulus: Optional[int] = None):
        self.modulus = modulus
        self.rows: Dict[int, Dict[int, int]] = {}
        self.cols: Dict[int, Dict[int, int]] = {}
        for (r, c), value in m.entries.items():
            if modulus is not None:
                value %= modulus
                if value == 0:
                    continue
            self.rows.setdefault(r, {})[c] = value
            self.cols.setdefault(c, {})[r] = value
        self.diagonal: List[int] = []

    def run(self) -> List[int]:
        while self.cols:
            if not self._unit_sweep() and self.cols:
                self._isolate_pivot(*self._smallest_entry())
        return self.diagonal

    def _is_unit(self, value: int) -> bool:
        return self.modulus is not None or abs(value) == 1

    def _set(self, r: int, c: int, value: int) -> None:
        if self.modulus is not None:
            value %= self.modulus
        if value == 0:
            row = self.rows.get(r)
            if row is not None and c in row:
                del row[c]
                if not row:
                    del self.rows[r]
            col = self.cols.get(c)
            if col is not None and r in col:
                del col[r]
                if not col:
                    del self.cols[c]
        else:
            self.rows.setdefault(r, {})[c] = value
            self.cols.setdefault(c, {})[r] = value

    def _drop(self, r: int, c: int) -> None:
        """Remove row r and column c once the pivot at (r, c) is isolated."""
        for j in self.rows.pop(r, {}):
            col = self.cols.get(j)
            if col is not None:
                col.pop(r, None)
                if not col:
                    del self.cols[j]
        for i in self.cols.pop(c, {}):
            row = self.rows.get(i)
            if row is not None:
                row.pop(c, None)
                if not row:
                    del self.rows[i]

    def _row_axpy(self, target: int, factor: int, source: int) -> None:
        """row[target] -= factor * row[source]"""
        target_row = self.rows.get(target, {})
        for j, w in list(self.rows[source].items()):
            self._set(target, j, target_row.get(j, 0) - factor * w)
            target_row = self.rows.get(target, {})

    def _col_axpy(self, target: int, factor: int, source: int) -> None:
        """col[target] -= factor * col[source]"""
        target_col = self.cols.get(target, {})
        for i, w in list(self.cols[source].items()):
            self._set(i, target, target_col.get(i, 0) - factor * w)
            target_col = self.cols.get(target, {})

    def _unit_sweep(self) -> bool:
        progressed = False
        for c in sorted(self.cols, key=lambda col: (len(self.cols[col]), col)):
            column = self.cols.get(c)
            if not column:
                continue
            best = None
            for r, value in column.items():
                if self._is_unit(value):
                    key = (len(self.rows[r]), r)
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is not None:
                self._eliminate_unit(best[1], c)
                progressed = True
        return progressed

    def _eliminate_unit(self, r: int, c: int) -> None:
        pivot = self.cols[c][r]
        inverse = pivot if self.modulus is None else pow(pivot, -1, self.modulus)
        for i, value in list(self.cols[c].items()):
            if i != r:
                self._row_axpy(i, value * inverse, r)
        self._drop(r, c)
        self.diagonal.append(1)

    def _smallest_entry(self) -> Tuple[int, int]:
        best = None
        for r, row in self.rows.items():
            for c, value in row.items():
                key = (abs(value), len(row) + len(self.cols[c]), r, c)
                if best is None or key < best:
                    best = key
        return best[2], best[3]

    def _isolate_pivot(self, r: int, c: int) -> None:
        while True:
            pivot = self.rows[r][c]
            for i, value in list(self.cols[c].items()):
                if i != r and value // pivot:
                    self._row_axpy(i, value // pivot, r)
            for j, value in list(self.rows[r].items()):
                if j != c and value // pivot:
                    self._col_axpy(j, value // pivot, c)

            leftovers = [(abs(v), i, c) for i, v in self.cols[c].items() if i != r]
            leftovers += [(abs(v), r, j) for j, v in self.rows[r].items() if j != c]
            if not leftovers:
                self._drop(r, c)
                self.diagonal.append(abs(pivot))
                return
            _, r, c = min(leftovers)


def _dense_smith(m: IntegerMatrix) -> SmithForm:
    """Smith form with unimodular witnesses, for small dense matrices."""
    rows, cols = m.rows, m.cols
    a = m.to_dense()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def add_row(target: int, factor: int, source: int) -> None:
        for mat in (a, u):
            mat[target] = [x - factor * y for x, y in zip(mat[target], mat[source])]

    def add_col(target: int, factor: int, source: int) -> None:
        for mat in (a, v):
            for row in mat:
                row[target] -= factor * row[source]

    def swap_rows(i: int, j: int) -> None:
        for mat in (a, u):
            mat[i], mat[j] = mat[j], mat[i]

    def swap_cols(i: int, j: int) -> None:
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def choose_pivot(t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j]:
                    fill = sum(1 for x in a[i][t:] if x) + sum(1 for k in range(t, rows) if a[k][j])
                    key = (abs(a[i][j]), fill, i, j)
                    if best is None or key < best:
                        best = key
        return None if best is None else (best[2], best[3])

    diagonal = []
    for t in range(min(rows, cols)):
        position = choose_pivot(t)
        if position is None:
            break
        swap_rows(t, position[0])
        swap_cols(t, position[1])
        while True:
            for i in range(t + 1, rows):
                if a[i][t] // a[t][t]:
                    add_row(i, a[i][t] // a[t][t], t)
            for j in range(t + 1, cols):
                if a[t][j] // a[t][t]:
                    add_col(j, a[t][j] // a[t][t], t)

            remainders = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            remainders += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            if remainders:
                _, i, j = min(remainders)
                swap_rows(t, i)
                swap_cols(t, j)
                continue

            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if offender is None:
                break
            add_row(t, -1, offender)

        if a[t][t] < 0:
            for mat in (a, u):
                mat[t] = [-x for x in mat[t]]
        diagonal.append(a[t][t])

    return SmithForm(
        rows=rows,
        cols=cols,
        invariant_factors=invariant_factors_from_diagonal(diagonal),
        left=tuple(tuple(row) for row in u),
        right=tuple(tuple(row) for row in v),
    )


def smith_normal_form(m: IntegerMatrix, with_transforms: bool = False) -> SmithForm:
    """Invariant factors d1 | d2 | ... of m; with_transforms adds unimodular U, V (dense path)."""
    if with_transforms:
        return _dense_smith(m)
    logger.debug(f"Sparse Smith form of a {m.rows}x{m.cols} matrix with {m.nnz} nonzeros")
    diagonal = _SparseEliminator(m).run()
    return SmithForm(rows=m.rows, cols=m.cols, invariant_factors=invariant_factors_from_diagonal(diagonal))


def rank_mod(m: IntegerMatrix, q: int) -> int:
    """Rank of m over the prime field F_q."""
    if not isprime(q):
        raise InvalidArgument(f"F_{q} is not a field: {q} is not prime")
    return len(_SparseEliminator(m, modulus=q).run())
