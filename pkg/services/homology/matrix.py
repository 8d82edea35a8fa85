# services/homology/matrix.py

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from services.complex import DeltaComplex
from services.errors import InvalidArgument


@dataclass(frozen=True, eq=False)
class IntegerMatrix:
    """Sparse integer matrix; only nonzero entries are stored."""
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvalidArgument("matrix dimensions must be nonnegative")
        for (r, c), value in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise InvalidArgument(f"entry ({r}, {c}) is outside a {self.rows}x{self.cols} matrix")
            if value == 0:
                raise InvalidArgument(f"entry ({r}, {c}) is an explicitly stored zero")

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Tuple[Tuple[int, int], int]]) -> "IntegerMatrix":
        """Accumulate (position, value) pairs, dropping entries that cancel to zero."""
        acc: Dict[Tuple[int, int], int] = {}
        for position, value in entries:
            acc[position] = acc.get(position, 0) + int(value)
        return cls(rows, cols, {pos: v for pos, v in acc.items() if v != 0})

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(rows, cols, (((r, c), v) for r, row in enumerate(dense) for c, v in enumerate(row)))

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            dense[r][c] = value
        return dense

    def rows_dict(self) -> Dict[int, Dict[int, int]]:
        rows: Dict[int, Dict[int, int]] = {}
        for (r, c), value in self.entries.items():
            rows.setdefault(r, {})[c] = value
        return rows

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise InvalidArgument(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = other.rows_dict()
        products = (
            ((r, c), value * other_value)
            for (r, k), value in self.entries.items()
            for c, other_value in other_rows.get(k, {}).items()
        )
        return IntegerMatrix.from_entries(self.rows, other.cols, products)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self.entries) == dict(other.entries)


def boundary_matrix(c: DeltaComplex, d: int) -> IntegerMatrix:
    """Matrix of the boundary map C_d -> C_{d-1}; entries are signed face multiplicities."""
    if not 1 <= d <= c.dim:
        raise InvalidArgument(f"boundary dimension {d} is outside 1..{c.dim}")
    entries = (
        ((face_id, column), -1 if i % 2 else 1)
        for column, face_ids in enumerate(c.faces[d])
        for i, face_id in enumerate(face_ids)
    )
    return IntegerMatrix.from_entries(c.num_simplices(d - 1), c.num_simplices(d), entries)
