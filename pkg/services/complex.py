# services/complex.py

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from services.errors import InvalidArgument, InvariantViolation
from services.posets.poset import Chain, FinitePoset, enumerate_chains

logger = logging.getLogger(__name__)

FaceTable = Tuple[Tuple[int, ...], ...]


class ComplexDocument(BaseModel):
    """JSON form of a Delta-complex"""
    dims: int
    f: List[int]
    faces: List[List[List[int]]]
    labels: Optional[List[List[Any]]] = None


@dataclass(frozen=True)
class FVector:
    counts: Tuple[int, ...]

    def __post_init__(self):
        if any(count < 0 for count in self.counts):
            raise InvalidArgument(f"f-vector entries must be nonnegative: {self.counts}")

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    @property
    def euler(self) -> int:
        return sum((-1) ** d * count for d, count in enumerate(self.counts))

    def __iter__(self):
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class DeltaComplex:
    """Semi-simplicial complex: simplices per dimension with their face maps.

    faces[d][s] lists the ids of the d+1 codimension-one faces of the d-simplex
    s, face i being the one opposite vertex i. Vertices have empty face tuples.
    labels[d][s] optionally records where a simplex came from (a chain, or the
    representative chain of an orbit).
    """
    faces: Tuple[FaceTable, ...]
    labels: Optional[Tuple[Tuple[Any, ...], ...]] = None

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def num_simplices(self, d: int) -> int:
        if 0 <= d < len(self.faces):
            return len(self.faces[d])
        return 0

    def face(self, d: int, simplex: int, i: int) -> int:
        return self.faces[d][simplex][i]

    def check_simplicial_identities(self) -> None:
        """Verify face ranges and d_i d_j = d_{j-1} d_i for i < j by index chasing."""
        for d, table in enumerate(self.faces):
            lower = self.num_simplices(d - 1)
            for s, face_ids in enumerate(table):
                if len(face_ids) != (d + 1 if d > 0 else 0):
                    raise InvariantViolation(f"{d}-simplex {s} has {len(face_ids)} faces")
                if any(not 0 <= f < lower for f in face_ids):
                    raise InvariantViolation(f"{d}-simplex {s} has a face index out of range")
                if d < 2:
                    continue
                below = self.faces[d - 1]
                for j in range(d + 1):
                    for i in range(j):
                        if below[face_ids[j]][i] != below[face_ids[i]][j - 1]:
                            raise InvariantViolation(
                                f"simplicial identity d_{i} d_{j} fails on {d}-simplex {s}"
                            )

    def to_document(self, include_labels: bool = True) -> ComplexDocument:
        labels = None
        if include_labels and self.labels is not None:
            labels = [[_label_to_json(label) for label in row] for row in self.labels]
        return ComplexDocument(
            dims=self.dim,
            f=list(f_vector(self).counts),
            faces=[[list(face_ids) for face_ids in table] for table in self.faces[1:]],
            labels=labels,
        )

    @classmethod
    def from_document(cls, document: ComplexDocument) -> "DeltaComplex":
        if len(document.f) != document.dims + 1 or len(document.faces) != max(document.dims, 0):
            raise InvalidArgument("complex document dimensions are inconsistent")
        faces: List[FaceTable] = []
        if document.dims >= 0:
            faces.append(tuple(() for _ in range(document.f[0])))
        for d, table in enumerate(document.faces, start=1):
            if len(table) != document.f[d]:
                raise InvalidArgument(f"complex document lists {len(table)} {d}-simplices, f says {document.f[d]}")
            faces.append(tuple(tuple(face_ids) for face_ids in table))
        labels = None
        if document.labels is not None:
            labels = tuple(tuple(_label_from_json(label) for label in row) for row in document.labels)
        complex_ = cls(faces=tuple(faces), labels=labels)
        complex_.check_simplicial_identities()
        return complex_


def _label_to_json(label: Any) -> Any:
    return list(label) if isinstance(label, tuple) else label


def _label_from_json(label: Any) -> Any:
    return tuple(label) if isinstance(label, list) else label


def _complex_from_simplices(by_dim: Sequence[Sequence[Tuple[int, ...]]]) -> DeltaComplex:
    """Delta-complex whose simplices are vertex tuples; face i deletes position i."""
    index: List[Dict[Tuple[int, ...], int]] = [
        {simplex: sid for sid, simplex in enumerate(simplices)} for simplices in by_dim
    ]
    faces: List[FaceTable] = []
    for d, simplices in enumerate(by_dim):
        if d == 0:
            faces.append(tuple(() for _ in simplices))
            continue
        lower = index[d - 1]
        faces.append(tuple(
            tuple(lower[simplex[:i] + simplex[i + 1:]] for i in range(d + 1))
            for simplex in simplices
        ))
    labels = tuple(tuple(simplices) for simplices in by_dim)
    return DeltaComplex(faces=tuple(faces), labels=labels)


def order_complex(poset: FinitePoset, max_simplices: Optional[int] = None) -> DeltaComplex:
    """Nerve of a finite poset: d-simplices are the chains with d+1 elements."""
    chains = enumerate_chains(poset, limit=max_simplices)
    by_dim: List[List[Chain]] = []
    for chain in chains:
        d = len(chain) - 1
        while len(by_dim) <= d:
            by_dim.append([])
        by_dim[d].append(chain)
    for simplices in by_dim:
        simplices.sort()

    complex_ = _complex_from_simplices(by_dim)
    logger.info(f"Order complex of {poset.kind} poset (n={poset.n}): f-vector {f_vector(complex_).counts}")
    return complex_


def simplex_boundary_complex(p: int) -> DeltaComplex:
    """Boundary of the (p-1)-simplex on vertices 1..p: all nonempty proper vertex subsets.

    The order complex of the reduced subset lattice is its barycentric subdivision.
    """
    if p < 2:
        raise InvalidArgument(f"simplex boundary needs p >= 2, got {p}")
    by_dim = [list(combinations(range(1, p + 1), size)) for size in range(1, p)]
    return _complex_from_simplices(by_dim)


def f_vector(c: DeltaComplex) -> FVector:
    return FVector(tuple(len(table) for table in c.faces))


def euler_characteristic(c: DeltaComplex) -> int:
    return f_vector(c).euler
