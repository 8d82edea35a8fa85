# services/verify/checks.py

import logging
from typing import Any, List, Optional

from services.complex import DeltaComplex
from services.errors import InvalidArgument, NonFreeActionError
from services.group_action import GroupAction, is_free_action, quotient_complex
from services.homology import HomologyGroup, HomologyReport, homology
from .models import BettiPrediction, Verdict, WedgeStatus, WedgeVerdict

logger = logging.getLogger(__name__)

SIMPLY_CONNECTED = "assumes simply connected"
WEDGE_OF_SPHERES = "assumes the full complex is a wedge of spheres"


def make_verdict(claim_id: str,
                 subject: str,
                 expected: Any,
                 computed: Any,
                 assumptions: Optional[List[str]] = None) -> Verdict:
    verdict = Verdict(
        claim_id=claim_id,
        subject=subject,
        expected=expected,
        computed=computed,
        passed=expected == computed,
        assumptions=assumptions or [],
    )
    level = logging.INFO if verdict.passed else logging.WARNING
    logger.log(level, f"[{claim_id}] {subject}: expected {expected}, computed {computed} -> "
                      f"{'pass' if verdict.passed else 'FAIL'}")
    return verdict


def predict_quotient_betti(k: int, d: int, group_order: int) -> BettiPrediction:
    """Rational Betti numbers of X/G for X a wedge of k d-spheres and G acting freely.

    beta_0 = 1; beta_d = (k+1)/|G| - 1 for d even and (k-1)/|G| + 1 for d odd;
    every other Betti number vanishes.
    """
    if k < 0 or d <= 0 or group_order < 1:
        raise InvalidArgument(f"prediction needs k >= 0, d > 0, |G| >= 1; got k={k}, d={d}, |G|={group_order}")

    numerator = k + 1 if d % 2 == 0 else k - 1
    if numerator % group_order:
        raise InvalidArgument(
            f"no free action of a group of order {group_order} on a wedge of {k} spheres of dimension {d}: "
            f"{group_order} does not divide {numerator}"
        )
    top = numerator // group_order - 1 if d % 2 == 0 else numerator // group_order + 1

    betti = [0] * (d + 1)
    betti[0] = 1
    betti[d] += top
    return BettiPrediction(k=k, d=d, group_order=group_order, betti=betti)


def check_free_act_h1(c: DeltaComplex,
                      action: GroupAction,
                      claim_id: str = "free-act-h1",
                      subject: Optional[str] = None,
                      quotient_report: Optional[HomologyReport] = None) -> Verdict:
    """H_1 of the quotient by a free abelian action must be the group itself.

    Relies on the complex being simply connected, which is assumed, not computed.
    """
    verdict = is_free_action(action)
    if not verdict.free:
        raise NonFreeActionError(verdict.group_element, verdict.fixed_element)
    if not action.group.is_abelian:
        raise InvalidArgument(f"{action.group.describe()} is not abelian")

    if quotient_report is None:
        quotient_report = homology(quotient_complex(c, action), ("Z",), max_dim=1)

    expected = HomologyGroup(dim=1, free_rank=0, torsion=list(action.group.abelian_invariants()))
    computed = quotient_report.group(1)
    return make_verdict(
        claim_id,
        subject or f"H_1 of the quotient by {action.group.describe()}",
        expected.describe(),
        computed.describe(),
        [SIMPLY_CONNECTED],
    )


def check_wedge_obstruction(report: HomologyReport) -> WedgeVerdict:
    """Torsion in positive degree rules out a wedge of spheres; free homology proves nothing."""
    if not report.groups:
        raise InvalidArgument("wedge obstruction needs integral homology")
    for group in report.groups[1:]:
        if group.torsion:
            return WedgeVerdict(
                status=WedgeStatus.NOT_WEDGE,
                reason=f"H_{group.dim} = {group.describe()} has torsion; a wedge of spheres has free homology",
            )
    checked = f"H_1..H_{report.max_dim}" if report.max_dim >= 1 else "H_0"
    return WedgeVerdict(
        status=WedgeStatus.POSSIBLY_WEDGE,
        reason=f"{checked} torsion-free; this does not prove the complex is a wedge",
    )


def check_transfer_vanishing(full: HomologyReport,
                             quotient: HomologyReport,
                             subject: str = "transfer") -> Verdict:
    """Rational homology of a free quotient vanishes wherever the full complex's does."""
    full_betti = full.betti("Q")
    quotient_betti = quotient.betti("Q")
    if len(full_betti) != len(quotient_betti):
        raise InvalidArgument(
            f"reports cover different dimensions: {len(full_betti) - 1} and {len(quotient_betti) - 1}"
        )
    vanishing = [i for i, beta in enumerate(full_betti) if beta == 0]
    return make_verdict(
        "transfer-vanishing",
        subject,
        {str(i): 0 for i in vanishing},
        {str(i): quotient_betti[i] for i in vanishing},
    )
