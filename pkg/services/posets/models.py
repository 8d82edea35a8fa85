# services/posets/models.py

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from services.errors import InvalidArgument

_BLOCK_PATTERN = re.compile(r"^\{\s*\d+(\s*,\s*\d+)*\s*\}$")


def _parse_block(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not _BLOCK_PATTERN.match(text):
        raise InvalidArgument(f"Malformed block: {text!r}")
    return tuple(int(part) for part in text[1:-1].split(","))


def _format_block(block: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in block) + "}"


@dataclass(frozen=True, order=True)
class Partition:
    """A set partition of [n] in canonical block form.

    Elements ascend inside each block and blocks are ordered by their least
    element, so two partitions are equal iff their block tuples are equal.
    Use `Partition.from_blocks` to build one from arbitrary input.
    """
    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: Optional[int] = None) -> "Partition":
        raw = [tuple(block) for block in blocks]
        for block in raw:
            if len(block) != len(set(block)):
                raise InvalidArgument(f"Partition block repeats an element: {block}")
        canonical = sorted(tuple(sorted(block)) for block in raw)
        if any(len(block) == 0 for block in canonical):
            raise InvalidArgument("Partition blocks must be nonempty")

        members = [x for block in canonical for x in block]
        if n is None:
            n = len(members)
        if len(members) != len(set(members)):
            raise InvalidArgument(f"Partition blocks overlap: {canonical}")
        if set(members) != set(range(1, n + 1)):
            raise InvalidArgument(f"Partition blocks do not cover [1..{n}]: {canonical}")

        return cls(n=n, blocks=tuple(canonical))

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "Partition":
        """Parse the canonical string form, e.g. "{1,3}|{2}|{4,5}"."""
        return cls.from_blocks((_parse_block(part) for part in text.split("|")), n)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def rank(self) -> int:
        return self.n - len(self.blocks)

    def refines(self, other: "Partition") -> bool:
        """True when every block of self lies inside a block of other (self <= other)."""
        if self.n != other.n:
            return False
        owner = {}
        for idx, block in enumerate(other.blocks):
            for x in block:
                owner[x] = idx
        return all(len({owner[x] for x in block}) == 1 for block in self.blocks)

    def __str__(self) -> str:
        return "|".join(_format_block(block) for block in self.blocks)


@dataclass(frozen=True, order=True)
class SubsetElement:
    """A nonempty proper subset of [p]."""
    p: int
    members: Tuple[int, ...]

    @classmethod
    def from_members(cls, members: Iterable[int], p: int) -> "SubsetElement":
        raw = tuple(members)
        if len(raw) != len(set(raw)):
            raise InvalidArgument(f"Subset repeats an element: {raw}")
        canonical = tuple(sorted(raw))
        if not canonical:
            raise InvalidArgument("Subset elements must be nonempty")
        if len(canonical) >= p:
            raise InvalidArgument(f"Subset elements must be proper subsets of [1..{p}]")
        if canonical[0] < 1 or canonical[-1] > p:
            raise InvalidArgument(f"Subset {canonical} is not contained in [1..{p}]")
        return cls(p=p, members=canonical)

    @classmethod
    def parse(cls, text: str, p: int) -> "SubsetElement":
        return cls.from_members(_parse_block(text), p)

    @property
    def mask(self) -> int:
        return sum(1 << (x - 1) for x in self.members)

    @property
    def rank(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return _format_block(self.members)
