# services/group_action/permutation.py

import logging
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from services.errors import InvalidArgument, ResourceCapExceeded
from services.homology.smith import invariant_factors_from_diagonal

logger = logging.getLogger(__name__)

DEFAULT_MAX_GROUP_ORDER = 10 ** 6

_CYCLE_PATTERN = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of [n]; images[i] is the image of i+1."""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InvalidArgument(f"{self.images} is not a permutation of [1..{len(self.images)}]")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """Parse a product of disjoint cycles such as "(1 2 3 4 5)" or "(2 3)(4 5)"."""
        stripped = text.strip()
        if not stripped:
            raise InvalidArgument("empty permutation string")
        if _CYCLE_PATTERN.sub("", stripped).strip():
            raise InvalidArgument(f"malformed cycle notation: {text!r}")

        images = list(range(1, degree + 1))
        seen = set()
        for body in _CYCLE_PATTERN.findall(stripped):
            tokens = body.replace(",", " ").split()
            try:
                points = [int(token) for token in tokens]
            except ValueError:
                raise InvalidArgument(f"malformed cycle notation: {text!r}") from None
            for point in points:
                if not 1 <= point <= degree:
                    raise InvalidArgument(f"point {point} is outside [1..{degree}]")
                if point in seen:
                    raise InvalidArgument(f"cycles in {text!r} are not disjoint")
                seen.add(point)
            for idx, point in enumerate(points):
                images[point - 1] = points[(idx + 1) % len(points)]
        return cls(tuple(images))

    @classmethod
    def from_sympy(cls, perm: SympyPermutation) -> "Permutation":
        return cls(tuple(x + 1 for x in perm.array_form))

    def to_sympy(self) -> SympyPermutation:
        return SympyPermutation([x - 1 for x in self.images])

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        if self.degree != other.degree:
            raise InvalidArgument("cannot compose permutations of different degrees")
        return Permutation(tuple(self.images[x - 1] for x in other.images))

    def inverse(self) -> "Permutation":
        inverse = [0] * self.degree
        for i, image in enumerate(self.images, start=1):
            inverse[image - 1] = i
        return Permutation(tuple(inverse))

    def is_identity(self) -> bool:
        return all(image == i for i, image in enumerate(self.images, start=1))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self(start)
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self(point)
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x) for x in cycle) + ")" for cycle in cycles)


class GroupDocument(BaseModel):
    degree: int
    generators: List[str]


@dataclass(frozen=True)
class PermutationGroup:
    """A finite permutation group with all of its elements enumerated.

    Elements are sorted by image tuple, so the identity comes first.
    """
    degree: int
    generators: Tuple[Permutation, ...]
    elements: Tuple[Permutation, ...]

    @classmethod
    def generate(cls,
                 generators: Iterable[Permutation],
                 degree: int,
                 max_order: Optional[int] = DEFAULT_MAX_GROUP_ORDER) -> "PermutationGroup":
        gens = tuple(generators)
        if degree < 1:
            raise InvalidArgument(f"group degree must be positive, got {degree}")
        for gen in gens:
            if gen.degree != degree:
                raise InvalidArgument(f"generator {gen} has degree {gen.degree}, expected {degree}")

        sympy_group = _to_sympy_group(gens, degree)
        order = int(sympy_group.order())
        if max_order is not None and order > max_order:
            raise ResourceCapExceeded("group order", max_order, order)

        elements = tuple(sorted(Permutation.from_sympy(perm) for perm in sympy_group.generate()))
        logger.debug(f"Generated permutation group of degree {degree} and order {order}")
        return cls(degree=degree, generators=gens, elements=elements)

    @classmethod
    def cyclic(cls, degree: int) -> "PermutationGroup":
        """The group generated by the cycle (1 2 ... degree)."""
        cycle = Permutation(tuple(range(2, degree + 1)) + (1,))
        return cls.generate([cycle], degree)

    @classmethod
    def trivial(cls, degree: int) -> "PermutationGroup":
        return cls.generate([], degree)

    @classmethod
    def from_cycles(cls,
                    generator_strings: Sequence[str],
                    degree: int,
                    max_order: Optional[int] = DEFAULT_MAX_GROUP_ORDER) -> "PermutationGroup":
        return cls.generate([Permutation.from_cycles(text, degree) for text in generator_strings],
                            degree, max_order)

    @classmethod
    def from_document(cls, document: GroupDocument,
                      max_order: Optional[int] = DEFAULT_MAX_GROUP_ORDER) -> "PermutationGroup":
        return cls.from_cycles(document.generators, document.degree, max_order)

    def to_document(self) -> GroupDocument:
        return GroupDocument(degree=self.degree, generators=[str(gen) for gen in self.generators])

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def index_of(self, element: Permutation) -> int:
        return self.elements.index(element)

    @property
    def is_abelian(self) -> bool:
        return bool(_to_sympy_group(self.generators, self.degree).is_abelian)

    def abelian_invariants(self) -> Tuple[int, ...]:
        """Invariant factors d1 | d2 | ... of an abelian group (empty for the trivial group)."""
        if not self.is_abelian:
            raise InvalidArgument("abelian invariants requested for a non-abelian group")
        primary = [int(q) for q in _to_sympy_group(self.generators, self.degree).abelian_invariants()]
        return tuple(f for f in invariant_factors_from_diagonal(primary) if f > 1)

    def describe(self) -> str:
        gens = ", ".join(str(gen) for gen in self.generators) or "()"
        return f"<{gens}> of order {self.order}"


def _to_sympy_group(generators: Sequence[Permutation], degree: int) -> SympyPermutationGroup:
    sympy_gens = [gen.to_sympy() for gen in generators] or [SympyPermutation(list(range(degree)))]
    return SympyPermutationGroup(sympy_gens)
