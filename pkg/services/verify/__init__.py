# services/verify/__init__.py

from .models import BettiPrediction, ExploratoryFinding, SuiteResult, Verdict, WedgeStatus, WedgeVerdict
from .checks import (
    check_free_act_h1,
    check_transfer_vanishing,
    check_wedge_obstruction,
    predict_quotient_betti,
)
from .suite import ArtifactBuilder, CLAIM_ORDER, TARGETS, run_paper_suite

__all__ = [
    'BettiPrediction',
    'ExploratoryFinding',
    'SuiteResult',
    'Verdict',
    'WedgeStatus',
    'WedgeVerdict',
    'check_free_act_h1',
    'check_transfer_vanishing',
    'check_wedge_obstruction',
    'predict_quotient_betti',
    'ArtifactBuilder',
    'CLAIM_ORDER',
    'TARGETS',
    'run_paper_suite',
]
