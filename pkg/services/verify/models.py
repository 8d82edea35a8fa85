# services/verify/models.py

from enum import Enum
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class WedgeStatus(str, Enum):
    POSSIBLY_WEDGE = "possibly-wedge"
    NOT_WEDGE = "not-wedge"


class BettiPrediction(BaseModel):
    """Rational Betti numbers of a free quotient of a wedge of k spheres of dimension d"""
    k: int
    d: int
    group_order: int
    betti: List[int]

    def top(self) -> int:
        return self.betti[self.d]


class Verdict(BaseModel):
    """Outcome of one executable claim; passed holds iff expected == computed."""
    model_config = ConfigDict(populate_by_name=True)

    claim_id: str
    subject: str
    expected: Any
    computed: Any
    passed: bool = Field(..., alias="pass")
    assumptions: List[str] = Field(default_factory=list)
    note: Optional[str] = None
    millis: Optional[float] = None


class WedgeVerdict(BaseModel):
    status: WedgeStatus
    reason: str


class ExploratoryFinding(BaseModel):
    """Homology reported without an expected value"""
    subject: str
    dim: int
    group: str


class SuiteResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    p: int
    group: str
    targets: List[str]
    verdicts: List[Verdict] = Field(default_factory=list)
    findings: List[ExploratoryFinding] = Field(default_factory=list)
    complete: bool = True
    incomplete_reason: Optional[str] = None
    passed: bool = Field(False, alias="pass")

    def failed_verdicts(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.passed]
