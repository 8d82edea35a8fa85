# services/posets/poset.py

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import factorial
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from sympy.functions.combinatorial.numbers import stirling
from sympy.utilities.iterables import multiset_partitions

from services.errors import InvalidArgument, InvariantViolation, ResourceCapExceeded
from .models import Partition, SubsetElement

logger = logging.getLogger(__name__)

Chain = Tuple[int, ...]

POSET_KINDS = ("partition", "subset", "explicit")


def _bits(mask: int) -> Tuple[int, ...]:
    """Indices of the set bits of mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class PosetDocument(BaseModel):
    """JSON form of a finite poset"""
    kind: str
    n: int
    elements: List[str]
    covers: List[Tuple[int, int]] = Field(default_factory=list)


@dataclass(frozen=True)
class FinitePoset:
    """A finite poset with dense integer element indices.

    The strict order is stored as one up-set bitmask per element. Indices are
    a linear extension of the order, so every chain sorted by the order is
    also sorted by index.
    """
    kind: str
    n: int
    elements: Tuple[Any, ...]
    up_masks: Tuple[int, ...]
    covers: Tuple[Tuple[int, int], ...]
    ranks: Optional[Tuple[int, ...]] = None

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> Dict[Any, int]:
        return {payload: idx for idx, payload in enumerate(self.elements)}

    @cached_property
    def down_masks(self) -> Tuple[int, ...]:
        down = [0] * len(self.elements)
        for i, mask in enumerate(self.up_masks):
            for j in _bits(mask):
                down[j] |= 1 << i
        return tuple(down)

    def index_of(self, payload: Any) -> int:
        try:
            return self._index[payload]
        except KeyError:
            raise InvalidArgument(f"{payload} is not an element of this poset") from None

    def less_than(self, i: int, j: int) -> bool:
        return bool((self.up_masks[i] >> j) & 1)

    def up_set(self, i: int) -> Tuple[int, ...]:
        return _bits(self.up_masks[i])

    def down_set(self, i: int) -> Tuple[int, ...]:
        return _bits(self.down_masks[i])

    def minimal_elements(self) -> Tuple[int, ...]:
        return tuple(i for i, mask in enumerate(self.down_masks) if mask == 0)

    def maximal_elements(self) -> Tuple[int, ...]:
        return tuple(i for i, mask in enumerate(self.up_masks) if mask == 0)

    def transitive_reduction(self) -> Tuple[Tuple[int, int], ...]:
        pairs = []
        for i, mask in enumerate(self.up_masks):
            for j in _bits(mask):
                if mask & self.down_masks[j] == 0:
                    pairs.append((i, j))
        return tuple(pairs)

    def count_maximal_chains(self) -> int:
        """Number of maximal chains, counted as Hasse-diagram paths from minimal to maximal elements."""
        lower_covers: List[List[int]] = [[] for _ in self.elements]
        for i, j in self.covers:
            lower_covers[j].append(i)
        paths = [0] * len(self.elements)
        for v in range(len(self.elements)):
            paths[v] = sum(paths[u] for u in lower_covers[v]) if lower_covers[v] else 1
        return sum(paths[v] for v in self.maximal_elements())

    def validate(self) -> None:
        """Recompute the order axioms and the cover relation; raise on any mismatch."""
        size = len(self.elements)
        if len(self.up_masks) != size:
            raise InvariantViolation("up-set table does not match the element count")
        for i, mask in enumerate(self.up_masks):
            if (mask >> i) & 1:
                raise InvariantViolation(f"order is not irreflexive at element {i}")
            if mask >> size:
                raise InvariantViolation(f"element {i} has an up-set index out of range")
            if mask & ((1 << i) - 1):
                raise InvariantViolation(f"indices are not a linear extension at element {i}")
            for j in _bits(mask):
                if self.up_masks[j] & ~mask:
                    raise InvariantViolation(f"order is not transitive at {i} < {j}")
        if tuple(sorted(self.covers)) != self.transitive_reduction():
            raise InvariantViolation("covers differ from the transitive reduction of the order")
        if self.ranks is not None:
            for i, j in self.covers:
                if self.ranks[i] >= self.ranks[j]:
                    raise InvariantViolation(f"rank does not increase along the cover {i} < {j}")

    def to_document(self) -> PosetDocument:
        return PosetDocument(
            kind=self.kind,
            n=self.n,
            elements=[str(payload) for payload in self.elements],
            covers=[tuple(pair) for pair in self.covers],
        )

    @classmethod
    def from_document(cls, document: PosetDocument) -> "FinitePoset":
        if document.kind == "partition":
            elements = [Partition.parse(text, document.n) for text in document.elements]
            ranks = tuple(element.rank for element in elements)
        elif document.kind == "subset":
            elements = [SubsetElement.parse(text, document.n) for text in document.elements]
            ranks = tuple(element.rank for element in elements)
        elif document.kind == "explicit":
            elements = list(document.elements)
            ranks = None
        else:
            raise InvalidArgument(f"Unknown poset kind: {document.kind}")
        poset = cls.from_relation(elements, document.covers, kind=document.kind, n=document.n)
        if ranks is not None:
            poset = cls(kind=poset.kind, n=poset.n, elements=poset.elements,
                        up_masks=poset.up_masks, covers=poset.covers, ranks=ranks)
        return poset

    @classmethod
    def from_relation(cls,
                      elements: Sequence[Any],
                      pairs: Iterable[Tuple[int, int]],
                      kind: str = "explicit",
                      n: Optional[int] = None) -> "FinitePoset":
        """Build a poset from generating pairs (i, j) meaning element i < element j.

        Elements must be listed in a linear extension of the order: every pair
        needs i < j.
        """
        size = len(elements)
        successors: List[int] = [0] * size
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise InvalidArgument(f"relation pair ({i}, {j}) is out of range")
            if i >= j:
                raise InvalidArgument(
                    f"relation pair ({i}, {j}) is not compatible with the element order; "
                    "list elements in a linear extension"
                )
            successors[i] |= 1 << j

        up = [0] * size
        for i in reversed(range(size)):
            mask = successors[i]
            for j in _bits(successors[i]):
                mask |= up[j]
            up[i] = mask

        return _finish(kind, n if n is not None else size, elements, up, None)


def _finish(kind: str,
            n: int,
            elements: Sequence[Any],
            up: List[int],
            ranks: Optional[Sequence[int]]) -> FinitePoset:
    poset = FinitePoset(kind=kind, n=n, elements=tuple(elements),
                        up_masks=tuple(up), covers=(),
                        ranks=tuple(ranks) if ranks is not None else None)
    return FinitePoset(kind=kind, n=n, elements=poset.elements, up_masks=poset.up_masks,
                       covers=poset.transitive_reduction(), ranks=poset.ranks)


def _graded_poset(kind: str,
                  n: int,
                  elements: Sequence[Any],
                  ranks: Sequence[int],
                  less: Callable[[int, int], bool]) -> FinitePoset:
    """Assemble a graded poset from elements sorted by rank and a strict-order predicate."""
    size = len(elements)
    up = [0] * size
    for i in range(size):
        mask = 0
        for j in range(i + 1, size):
            if ranks[j] > ranks[i] and less(i, j):
                mask |= 1 << j
        up[i] = mask
    return _finish(kind, n, elements, up, ranks)


def build_reduced_partition_lattice(n: int) -> FinitePoset:
    """Partitions of [n] ordered by refinement, without the discrete and the one-block partition."""
    if not isinstance(n, int) or n < 3:
        raise InvalidArgument(f"reduced partition lattice needs n >= 3, got {n}")

    logger.info(f"Building reduced partition lattice for n={n}")
    partitions = [
        Partition.from_blocks(blocks, n)
        for blocks in multiset_partitions(list(range(1, n + 1)))
        if 2 <= len(blocks) <= n - 1
    ]
    partitions.sort(key=lambda part: (part.rank, part.blocks))

    owners = []
    for part in partitions:
        owner = [0] * (n + 1)
        for idx, block in enumerate(part.blocks):
            for x in block:
                owner[x] = idx
        owners.append(owner)

    def finer(i: int, j: int) -> bool:
        owner = owners[j]
        return all(len({owner[x] for x in block}) == 1 for block in partitions[i].blocks)

    poset = _graded_poset("partition", n, partitions, [part.rank for part in partitions], finer)
    logger.info(f"Reduced partition lattice n={n}: {len(poset)} elements, {len(poset.covers)} covers")
    return poset


def build_reduced_subset_lattice(p: int) -> FinitePoset:
    """Nonempty proper subsets of [p] ordered by inclusion."""
    if not isinstance(p, int) or p < 2:
        raise InvalidArgument(f"reduced subset lattice needs p >= 2, got {p}")

    logger.info(f"Building reduced subset lattice for p={p}")
    subsets = [
        SubsetElement.from_members(members, p)
        for size in range(1, p)
        for members in combinations(range(1, p + 1), size)
    ]
    masks = [subset.mask for subset in subsets]

    def included(i: int, j: int) -> bool:
        return masks[i] & masks[j] == masks[i]

    poset = _graded_poset("subset", p, subsets, [subset.rank for subset in subsets], included)
    logger.info(f"Reduced subset lattice p={p}: {len(poset)} elements, {len(poset.covers)} covers")
    return poset


def enumerate_chains(poset: FinitePoset,
                     max_length: Optional[int] = None,
                     limit: Optional[int] = None) -> List[Chain]:
    """All nonempty chains as ascending index tuples, in lexicographic order.

    max_length bounds the number of elements per chain; limit caps the total
    number of chains (ResourceCapExceeded beyond it).
    """
    if max_length is not None and max_length < 1:
        raise InvalidArgument(f"max_length must be positive, got {max_length}")

    up_sets = [poset.up_set(i) for i in range(len(poset))]
    chains: List[Chain] = []

    def extend(chain: Chain) -> None:
        chains.append(chain)
        if limit is not None and len(chains) > limit:
            raise ResourceCapExceeded("simplices", limit)
        if max_length is not None and len(chain) >= max_length:
            return
        for j in up_sets[chain[-1]]:
            extend(chain + (j,))

    for i in range(len(poset)):
        extend((i,))
    return chains


def chain_counts_by_length(chains: Iterable[Chain]) -> Tuple[int, ...]:
    counts: Dict[int, int] = {}
    for chain in chains:
        counts[len(chain)] = counts.get(len(chain), 0) + 1
    return tuple(counts.get(length, 0) for length in range(1, max(counts, default=0) + 1))


def stirling_element_count(n: int) -> int:
    """Size of the reduced partition lattice from Stirling numbers of the second kind."""
    return sum(int(stirling(n, k)) for k in range(2, n))


def expected_maximal_chains(n: int) -> int:
    """Maximal chain count of the reduced partition lattice, n!(n-1)!/2^(n-1)."""
    return factorial(n) * factorial(n - 1) // 2 ** (n - 1)
