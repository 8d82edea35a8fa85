# services/homology/report.py

import logging
import re
from typing import Dict, Iterable, List, Optional, Sequence, Union

from pydantic import BaseModel, Field
from sympy import isprime

from services.complex import DeltaComplex
from services.errors import InvalidArgument, InvariantViolation
from .matrix import boundary_matrix
from .smith import rank_mod, smith_normal_form

logger = logging.getLogger(__name__)

_FIELD_PATTERN = re.compile(r"^F(\d+)$")


def parse_coefficients(rings: Union[str, Iterable[str]]) -> List[str]:
    """Normalize a coefficient list such as "Z,Q,F2,F5"; F_q requires q prime."""
    tokens = rings.split(",") if isinstance(rings, str) else list(rings)
    out: List[str] = []
    for token in tokens:
        name = token.strip().upper()
        if not name:
            continue
        if name not in ("Z", "Q"):
            match = _FIELD_PATTERN.match(name)
            if not match:
                raise InvalidArgument(f"unknown coefficient ring: {token!r}")
            if not isprime(int(match.group(1))):
                raise InvalidArgument(f"{name} is not a field: {match.group(1)} is not prime")
        if name not in out:
            out.append(name)
    if not out:
        raise InvalidArgument("no coefficient ring requested")
    return out


class HomologyGroup(BaseModel):
    dim: int
    free_rank: int
    torsion: List[int] = Field(default_factory=list)

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


class HomologyReport(BaseModel):
    """Unreduced homology of a Delta-complex.

    groups holds the integral homology (empty when Z and Q were not
    requested); field_betti maps "Q", "F2", ... to Betti numbers per dimension.
    """
    coefficients: str
    dim: int
    max_dim: int
    f_vector: List[int]
    groups: List[HomologyGroup] = Field(default_factory=list)
    field_betti: Dict[str, List[int]] = Field(default_factory=dict)

    @property
    def is_truncated(self) -> bool:
        return self.max_dim < self.dim

    def group(self, dim: int) -> HomologyGroup:
        if not self.groups:
            raise InvalidArgument("report carries no integral homology")
        if 0 <= dim < len(self.groups):
            return self.groups[dim]
        if dim > self.max_dim and self.is_truncated:
            raise InvalidArgument(f"H_{dim} was not computed (report stops at dimension {self.max_dim})")
        return HomologyGroup(dim=dim, free_rank=0)

    def betti(self, field: str) -> List[int]:
        name = parse_coefficients(field)[0]
        if name not in self.field_betti:
            raise InvalidArgument(f"Betti numbers over {name} were not computed")
        return self.field_betti[name]

    def describe(self) -> List[str]:
        return [f"H_{g.dim} = {g.describe()}" for g in self.groups]


def check_boundary_squares(c: DeltaComplex) -> None:
    """Exact check that every composite of consecutive boundary maps vanishes."""
    for d in range(1, c.dim):
        if not (boundary_matrix(c, d) @ boundary_matrix(c, d + 1)).is_zero():
            raise InvariantViolation(f"boundary of boundary is nonzero in dimension {d + 1}")


def homology(c: DeltaComplex,
             coefficients: Union[str, Sequence[str]] = ("Z",),
             max_dim: Optional[int] = None) -> HomologyReport:
    """Unreduced homology H_i = ker d_i / im d_(i+1) for i = 0..max_dim.

    Over Z the free rank is f_i - rank d_i - rank d_(i+1) and the torsion is
    the invariant factors of d_(i+1) above 1; Q Betti numbers equal the free
    ranks; F_q Betti numbers come from ranks modulo q.
    """
    fields = parse_coefficients(coefficients)
    integral = "Z" in fields or "Q" in fields
    primes = [int(name[1:]) for name in fields if name.startswith("F")]
    if max_dim is not None and max_dim < 0:
        raise InvalidArgument(f"max_dim must be nonnegative, got {max_dim}")

    top = c.dim if max_dim is None else min(max_dim, c.dim)
    ranks_z: Dict[int, int] = {}
    torsion_from: Dict[int, List[int]] = {}
    ranks_q: Dict[int, Dict[int, int]] = {q: {} for q in primes}

    for d in range(1, min(top + 1, c.dim) + 1):
        matrix = boundary_matrix(c, d)
        logger.debug(f"Reducing boundary d_{d}: {matrix.rows}x{matrix.cols}, {matrix.nnz} nonzeros")
        if integral:
            form = smith_normal_form(matrix)
            ranks_z[d] = form.rank
            torsion_from[d] = list(form.torsion)
        for q in primes:
            ranks_q[q][d] = rank_mod(matrix, q)

    def betti_from(ranks: Dict[int, int], i: int) -> int:
        return c.num_simplices(i) - ranks.get(i, 0) - ranks.get(i + 1, 0)

    groups: List[HomologyGroup] = []
    field_betti: Dict[str, List[int]] = {}
    if integral:
        groups = [
            HomologyGroup(dim=i, free_rank=betti_from(ranks_z, i), torsion=torsion_from.get(i + 1, []))
            for i in range(top + 1)
        ]
        field_betti["Q"] = [g.free_rank for g in groups]
    for q in primes:
        field_betti[f"F{q}"] = [betti_from(ranks_q[q], i) for i in range(top + 1)]

    report = HomologyReport(
        coefficients=",".join(fields),
        dim=c.dim,
        max_dim=top,
        f_vector=[c.num_simplices(d) for d in range(c.dim + 1)],
        groups=groups,
        field_betti=field_betti,
    )
    if groups:
        logger.info("Homology: " + "; ".join(report.describe()))
    return report


def euler_from_betti(report: HomologyReport, field: str) -> int:
    """Alternating sum of the Betti numbers over the given field."""
    betti = report.betti(field)
    if report.is_truncated:
        raise InvalidArgument("Euler characteristic needs homology in every dimension")
    return sum((-1) ** i * b for i, b in enumerate(betti))
