# services/group_action/action.py

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from services.complex import DeltaComplex, FaceTable, f_vector
from services.errors import InvalidArgument, InvariantViolation, NonFreeActionError
from services.posets.models import Partition, SubsetElement
from services.posets.poset import FinitePoset
from .permutation import Permutation, PermutationGroup

logger = logging.getLogger(__name__)


def act_on_partition(g: Permutation, v: Partition) -> Partition:
    """Blockwise image of a partition, recanonicalized."""
    if g.degree != v.n:
        raise InvalidArgument(f"permutation of degree {g.degree} cannot act on a partition of [{v.n}]")
    return Partition.from_blocks(([g(x) for x in block] for block in v.blocks), v.n)


def act_on_subset(g: Permutation, v: SubsetElement) -> SubsetElement:
    if g.degree != v.p:
        raise InvalidArgument(f"permutation of degree {g.degree} cannot act on a subset of [{v.p}]")
    return SubsetElement.from_members((g(x) for x in v.members), v.p)


def act_on_element(g: Permutation, payload: Any) -> Any:
    if isinstance(payload, Partition):
        return act_on_partition(g, payload)
    if isinstance(payload, SubsetElement):
        return act_on_subset(g, payload)
    raise InvalidArgument(f"no natural permutation action on {type(payload).__name__}")


@dataclass(frozen=True)
class FreenessVerdict:
    free: bool
    group_element: Optional[Permutation] = None
    fixed_element: Optional[Any] = None

    def describe(self) -> str:
        if self.free:
            return "free"
        return f"not free: {self.group_element} fixes {self.fixed_element}"


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbits sorted by least member; orbit_of maps an element index to its orbit id."""
    orbits: Tuple[Tuple[int, ...], ...]
    orbit_of: Tuple[int, ...]

    @property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(orbit[0] for orbit in self.orbits)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(orbit) for orbit in self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)


@dataclass(frozen=True)
class GroupAction:
    """A permutation group acting on the elements of a partition or subset poset.

    table[v][k] is the index of group.elements[k] applied to element v.
    """
    group: PermutationGroup
    poset: FinitePoset
    table: Tuple[Tuple[int, ...], ...]

    @classmethod
    def build(cls, group: PermutationGroup, poset: FinitePoset) -> "GroupAction":
        if poset.kind not in ("partition", "subset"):
            raise InvalidArgument(f"no natural permutation action on a {poset.kind} poset")
        if group.degree != poset.n:
            raise InvalidArgument(
                f"group of degree {group.degree} cannot act on a {poset.kind} poset over [{poset.n}]"
            )
        table = tuple(
            tuple(poset.index_of(act_on_element(g, payload)) for g in group.elements)
            for payload in poset.elements
        )
        logger.debug(f"Built action table for {group.describe()} on {len(poset)} elements")
        return cls(group=group, poset=poset, table=table)

    def act_on_chain(self, k: int, chain: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(self.table[v][k] for v in chain)

    def identity_acts_trivially(self) -> bool:
        k = self.group.index_of(Permutation.identity(self.group.degree))
        return all(row[k] == v for v, row in enumerate(self.table))

    def is_compatible(self) -> bool:
        """g.(h.v) == (g*h).v for every pair of group elements and every element."""
        elements = self.group.elements
        position = {g: k for k, g in enumerate(elements)}
        for a, g in enumerate(elements):
            for b, h in enumerate(elements):
                gh = position[g * h]
                for row in self.table:
                    if row[gh] != self.table[row[b]][a]:
                        return False
        return True

    def preserves_order(self) -> bool:
        """u < v iff g.u < g.v, for every group element."""
        poset = self.poset
        for k in range(self.group.order):
            for u, row in enumerate(self.table):
                image_mask = 0
                for v in poset.up_set(u):
                    image_mask |= 1 << self.table[v][k]
                if image_mask != poset.up_masks[row[k]]:
                    return False
        return True


def is_free_action(a: GroupAction) -> FreenessVerdict:
    """Free iff no non-identity element fixes a poset element; otherwise a witness.

    Group elements are scanned in sorted order and poset elements from the top
    rank down; the first fixed point found is reported.
    """
    for k, g in enumerate(a.group.elements):
        if g.is_identity():
            continue
        for v in reversed(range(len(a.poset))):
            if a.table[v][k] == v:
                witness = a.poset.elements[v]
                logger.info(f"Action is not free: {g} fixes {witness}")
                return FreenessVerdict(free=False, group_element=g, fixed_element=witness)
    return FreenessVerdict(free=True)


def orbits(a: GroupAction) -> OrbitDecomposition:
    orbit_of = [-1] * len(a.poset)
    found: List[Tuple[int, ...]] = []
    for v, row in enumerate(a.table):
        if orbit_of[v] != -1:
            continue
        orbit = tuple(sorted(set(row)))
        for u in orbit:
            orbit_of[u] = len(found)
        found.append(orbit)
    return OrbitDecomposition(orbits=tuple(found), orbit_of=tuple(orbit_of))


def _check_comparability_guard(a: GroupAction, decomposition: OrbitDecomposition) -> None:
    for orbit in decomposition.orbits:
        orbit_mask = 0
        for v in orbit:
            orbit_mask |= 1 << v
        for v in orbit:
            if a.poset.up_masks[v] & orbit_mask:
                raise InvariantViolation(f"orbit {orbit} contains two comparable elements")


def quotient_complex(c: DeltaComplex, a: GroupAction) -> DeltaComplex:
    """Orbit complex of the order complex c under a free action.

    Quotient d-simplices are the orbits of d-simplices, numbered in order of
    their least member; face i of an orbit is the orbit of face i of any
    member, which is checked for every member.
    """
    verdict = is_free_action(a)
    if not verdict.free:
        raise NonFreeActionError(verdict.group_element, verdict.fixed_element)
    if c.labels is None:
        raise InvalidArgument("quotient needs an order complex whose simplices are labeled by chains")
    if c.num_simplices(0) != len(a.poset):
        raise InvalidArgument("complex is not the order complex of the acted-on poset")

    _check_comparability_guard(a, orbits(a))

    order = a.group.order
    quotient_faces: List[FaceTable] = []
    quotient_labels: List[Tuple[Any, ...]] = []
    previous_orbit_of: List[int] = []

    for d, chains in enumerate(c.labels):
        index: Dict[Tuple[int, ...], int] = {chain: sid for sid, chain in enumerate(chains)}
        orbit_of = [-1] * len(chains)
        representatives: List[int] = []

        for sid, chain in enumerate(chains):
            if orbit_of[sid] != -1:
                continue
            qid = len(representatives)
            representatives.append(sid)
            members = set()
            for k in range(order):
                try:
                    image = index[a.act_on_chain(k, chain)]
                except KeyError:
                    raise InvariantViolation(f"image of chain {chain} is not a {d}-simplex") from None
                if orbit_of[image] not in (-1, qid):
                    raise InvariantViolation(f"{d}-simplex {image} lies in two orbits")
                orbit_of[image] = qid
                members.add(image)
            if len(members) != order:
                raise InvariantViolation(f"orbit of {d}-simplex {sid} has {len(members)} members, expected {order}")

        if len(representatives) * order != len(chains):
            raise InvariantViolation(f"{d}-simplex count {len(chains)} is not divisible into free orbits")

        if d == 0:
            faces: FaceTable = tuple(() for _ in representatives)
        else:
            faces = tuple(
                tuple(previous_orbit_of[f] for f in c.faces[d][rep]) for rep in representatives
            )
            for sid, face_ids in enumerate(c.faces[d]):
                induced = tuple(previous_orbit_of[f] for f in face_ids)
                if induced != faces[orbit_of[sid]]:
                    raise InvariantViolation(f"induced faces of {d}-simplex orbit {orbit_of[sid]} depend on the representative")

        quotient_faces.append(faces)
        quotient_labels.append(tuple(chains[rep] for rep in representatives))
        previous_orbit_of = orbit_of

    quotient = DeltaComplex(faces=tuple(quotient_faces), labels=tuple(quotient_labels))
    logger.info(f"Quotient by {a.group.describe()}: f-vector {f_vector(quotient).counts}")
    return quotient
