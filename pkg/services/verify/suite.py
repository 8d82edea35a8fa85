# services/verify/suite.py

import logging
import time
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from services.complex import DeltaComplex, euler_characteristic, f_vector, order_complex, simplex_boundary_complex
from services.errors import InvalidArgument, ResourceCapExceeded
from services.group_action import GroupAction, PermutationGroup, is_free_action, quotient_complex
from services.group_action.permutation import DEFAULT_MAX_GROUP_ORDER
from services.homology import HomologyGroup, HomologyReport, check_boundary_squares, euler_from_betti, homology
from services.posets import (
    FinitePoset,
    build_reduced_partition_lattice,
    build_reduced_subset_lattice,
    stirling_element_count,
)
from .checks import (
    WEDGE_OF_SPHERES,
    check_free_act_h1,
    check_transfer_vanishing,
    check_wedge_obstruction,
    make_verdict,
    predict_quotient_betti,
)
from .models import ExploratoryFinding, SuiteResult, Verdict, WedgeStatus

logger = logging.getLogger(__name__)

TARGETS = ("subset", "partition")

CLAIM_ORDER = (
    "eq1", "eq2", "eq3", "eq4",
    "lemma-free-Lp", "lemma-free-Pip", "lemma-bettis", "thm-euler", "wedge-obstruction",
    "sphere-Lp", "wedge-Pip", "barycentric-Lp", "f-vector-division", "transfer-vanishing",
)

GroupKey = Optional[Tuple[str, ...]]


def group_key(group: Optional[PermutationGroup]) -> GroupKey:
    return None if group is None else tuple(str(gen) for gen in group.generators)


class ArtifactBuilder:
    """Builds lattices, order complexes, quotients and homology, memoized per process."""

    def __init__(self,
                 max_simplices: Optional[int] = None,
                 max_group_order: Optional[int] = DEFAULT_MAX_GROUP_ORDER):
        self.max_simplices = max_simplices
        self.max_group_order = max_group_order
        self._memo: Dict[tuple, object] = {}

    def _memoized(self, key: tuple, build: Callable[[], object]):
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    def lattice(self, kind: str, n: int) -> FinitePoset:
        if kind == "partition":
            build, size = build_reduced_partition_lattice, stirling_element_count(n)
        elif kind == "subset":
            build, size = build_reduced_subset_lattice, 2 ** n - 2 if n > 0 else 0
        else:
            raise InvalidArgument(f"Unknown lattice kind: {kind}")
        # every lattice element is a vertex of the order complex
        if self.max_simplices is not None and size > self.max_simplices:
            raise ResourceCapExceeded("simplices", self.max_simplices, size)
        return self._memoized(("lattice", kind, n), lambda: build(n))

    def order_complex(self, kind: str, n: int) -> DeltaComplex:
        return self._memoized(
            ("complex", kind, n),
            lambda: order_complex(self.lattice(kind, n), max_simplices=self.max_simplices),
        )

    def action(self, kind: str, n: int, group: PermutationGroup) -> GroupAction:
        return self._memoized(
            ("action", kind, n, group_key(group)),
            lambda: GroupAction.build(group, self.lattice(kind, n)),
        )

    def quotient(self, kind: str, n: int, group: PermutationGroup) -> DeltaComplex:
        return self._memoized(
            ("quotient", kind, n, group_key(group)),
            lambda: quotient_complex(self.order_complex(kind, n), self.action(kind, n, group)),
        )

    def homology(self,
                 kind: str,
                 n: int,
                 group: Optional[PermutationGroup],
                 coefficients: Sequence[str] = ("Z",),
                 max_dim: Optional[int] = None) -> HomologyReport:
        def build() -> HomologyReport:
            c = self.order_complex(kind, n) if group is None else self.quotient(kind, n, group)
            check_boundary_squares(c)
            return homology(c, coefficients, max_dim=max_dim)

        return self._memoized(("homology", kind, n, group_key(group), tuple(coefficients), max_dim), build)


class _SuiteRun:
    def __init__(self, record_timings: bool, time_budget_s: Optional[float]):
        self.record_timings = record_timings
        self.time_budget_s = time_budget_s
        self.started = time.perf_counter()
        self.verdicts: List[Verdict] = []
        self.findings: List[ExploratoryFinding] = []

    def check_budget(self) -> None:
        if self.time_budget_s is not None and time.perf_counter() - self.started > self.time_budget_s:
            raise ResourceCapExceeded("time budget (s)", self.time_budget_s)

    def add(self, produce: Callable[[], Verdict]) -> Verdict:
        self.check_budget()
        started = time.perf_counter()
        verdict = produce()
        if self.record_timings:
            verdict = verdict.model_copy(update={"millis": round((time.perf_counter() - started) * 1000, 3)})
        self.verdicts.append(verdict)
        return verdict


def _describe_all(report: HomologyReport) -> List[str]:
    return [group.describe() for group in report.groups]


def _sphere(dim: int, rank: int = 1) -> List[str]:
    groups = [HomologyGroup(dim=i, free_rank=0) for i in range(dim + 1)]
    groups[0] = HomologyGroup(dim=0, free_rank=1)
    groups[dim] = HomologyGroup(dim=dim, free_rank=rank)
    return [group.describe() for group in groups]


def _run_lattice(run: _SuiteRun,
                 artifacts: ArtifactBuilder,
                 kind: str,
                 p: int,
                 group: PermutationGroup,
                 group_label: str) -> None:
    subset = kind == "subset"
    name = f"L_{p}" if subset else f"Π̄_{p}"
    full_subject = f"Δ({name})"
    quotient_subject = f"Δ({name})/{group_label}"
    top = p - 2 if subset else p - 3
    wedge_rank = 1 if subset else factorial(p - 1)
    coefficients = ["Z", "Q", "F2", f"F{p}"]

    logger.info(f"Phase 1: building {name} and its order complex")
    run.check_budget()
    full = artifacts.order_complex(kind, p)
    action = artifacts.action(kind, p, group)

    logger.info(f"Phase 2: freeness of {group_label} on {name}")
    freeness = is_free_action(action)
    run.add(lambda: make_verdict(
        "lemma-free-Lp" if subset else "lemma-free-Pip",
        f"{group_label} on {name}",
        "free",
        freeness.describe(),
    ))
    if not freeness.free:
        logger.warning(f"Skipping the quotient of {full_subject}: {freeness.describe()}")
        return

    logger.info(f"Phase 3: quotient and homology over {', '.join(coefficients)}")
    run.check_budget()
    quotient = artifacts.quotient(kind, p, group)
    run.check_budget()
    full_report = artifacts.homology(kind, p, None, coefficients)
    run.check_budget()
    quotient_report = artifacts.homology(kind, p, group, coefficients)

    logger.info("Phase 4: predictions against computations")
    run.add(lambda: check_free_act_h1(
        full, action,
        claim_id="eq1" if subset else "eq3",
        subject=f"H_1({quotient_subject})",
        quotient_report=quotient_report,
    ))
    predicted_top = predict_quotient_betti(wedge_rank, top, group.order).top()
    run.add(lambda: make_verdict(
        "eq2" if subset else "eq4",
        f"H_{top}({quotient_subject})",
        HomologyGroup(dim=top, free_rank=predicted_top).describe(),
        quotient_report.group(top).describe(),
    ))
    run.add(lambda: make_verdict(
        "sphere-Lp" if subset else "wedge-Pip",
        f"H_*({full_subject})",
        _sphere(top, wedge_rank),
        _describe_all(full_report),
    ))
    if subset:
        run.add(lambda: make_verdict(
            "barycentric-Lp",
            f"H_*({full_subject}) vs boundary of the {p - 1}-simplex",
            _describe_all(homology(simplex_boundary_complex(p), ("Z",))),
            _describe_all(full_report),
        ))

    def betti_verdict() -> Verdict:
        k = full_report.group(top).free_rank
        prediction = predict_quotient_betti(k, top, group.order)
        return make_verdict(
            "lemma-bettis",
            f"β^Q({quotient_subject}) from k={k}, d={top}, |G|={group.order}",
            prediction.betti,
            quotient_report.betti("Q"),
            [WEDGE_OF_SPHERES],
        )

    run.add(betti_verdict)

    full_f = list(f_vector(full).counts)
    quotient_f = list(f_vector(quotient).counts)
    run.add(lambda: make_verdict(
        "f-vector-division",
        f"{quotient_subject} times |G|={group.order}",
        {"f": full_f, "euler": euler_characteristic(full)},
        {"f": [count * group.order for count in quotient_f],
         "euler": euler_characteristic(quotient) * group.order},
    ))
    run.add(lambda: check_transfer_vanishing(full_report, quotient_report, subject=quotient_subject))

    logger.info("Phase 5: Euler characteristics")
    fields = coefficients[1:]
    for subject, c, report in ((full_subject, full, full_report), (quotient_subject, quotient, quotient_report)):
        run.add(lambda subject=subject, c=c, report=report: make_verdict(
            "thm-euler",
            subject,
            {field: euler_characteristic(c) for field in fields},
            {field: euler_from_betti(report, field) for field in fields},
        ))

    logger.info("Phase 6: wedge obstruction")
    # H_1 of the quotient is the group itself
    has_torsion = bool(group.abelian_invariants())
    for subject, report, expected in (
        (full_subject, full_report, WedgeStatus.POSSIBLY_WEDGE),
        (quotient_subject, quotient_report, WedgeStatus.NOT_WEDGE if has_torsion else WedgeStatus.POSSIBLY_WEDGE),
    ):
        def wedge_verdict(subject=subject, report=report, expected=expected) -> Verdict:
            outcome = check_wedge_obstruction(report)
            verdict = make_verdict("wedge-obstruction", subject, expected.value, outcome.status.value)
            return verdict.model_copy(update={"note": outcome.reason})

        run.add(wedge_verdict)

    for dim in range(2, top):
        run.findings.append(ExploratoryFinding(
            subject=f"H_{dim}({quotient_subject})",
            dim=dim,
            group=quotient_report.group(dim).describe(),
        ))


def run_paper_suite(p: int,
                    include_partition: bool = True,
                    include_subset: bool = True,
                    group: Optional[PermutationGroup] = None,
                    artifacts: Optional[ArtifactBuilder] = None,
                    time_budget_s: Optional[float] = None,
                    record_timings: bool = False) -> SuiteResult:
    """Run every executable claim about the free C_p quotients of the reduced lattices for a prime p >= 5.

    A custom group replaces C_p. A non-free group yields a failing freeness
    verdict and stops that lattice's pipeline. Exceeding a resource cap or the
    time budget returns the verdicts gathered so far, flagged incomplete.
    """
    if not isinstance(p, int) or not isprime(p):
        raise InvalidArgument(f"p={p} is not prime")
    if p < 5:
        raise InvalidArgument(f"p must be a prime >= 5, got {p}")
    targets = [t for t, wanted in (("subset", include_subset), ("partition", include_partition)) if wanted]
    if not targets:
        raise InvalidArgument("nothing to verify: both lattices excluded")

    artifacts = artifacts or ArtifactBuilder()
    group_label = f"C_{p}"
    if group is None:
        group = PermutationGroup.cyclic(p)
    else:
        if group.degree != p:
            raise InvalidArgument(f"group of degree {group.degree} cannot act on lattices over [{p}]")
        group_label = f"<{', '.join(str(gen) for gen in group.generators) or '()'}>"

    logger.info(f"Running verification suite for p={p}, group {group_label}, targets {targets}")
    run = _SuiteRun(record_timings, time_budget_s)
    complete, reason = True, None
    try:
        for kind in targets:
            _run_lattice(run, artifacts, kind, p, group, group_label)
    except ResourceCapExceeded as e:
        logger.warning(f"Verification suite stopped early: {str(e)}")
        complete, reason = False, str(e)

    rank = {claim: i for i, claim in enumerate(CLAIM_ORDER)}
    verdicts = sorted(run.verdicts, key=lambda v: rank.get(v.claim_id, len(CLAIM_ORDER)))
    result = SuiteResult(
        p=p,
        group=group_label,
        targets=targets,
        verdicts=verdicts,
        findings=run.findings,
        complete=complete,
        incomplete_reason=reason,
        passed=complete and all(v.passed for v in verdicts),
    )
    logger.info(f"Suite finished: {len(verdicts)} verdicts, "
                f"{len(result.failed_verdicts())} failed, complete={complete}")
    return result
