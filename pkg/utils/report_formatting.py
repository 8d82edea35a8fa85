# report_formatting.py
import json
import logging
import os
import tempfile
from typing import Any, List

import pandas as pd
from pydantic import BaseModel

from services.homology import HomologyReport
from services.verify import SuiteResult

logger = logging.getLogger(__name__)


def to_canonical_json(document: Any) -> str:
    """Byte-stable JSON: sorted keys, two-space indent, UTF-8 text, trailing newline"""
    if isinstance(document, BaseModel):
        document = document.model_dump(mode="json", by_alias=True)
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write text to path through a temporary file in the same directory and os.replace"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    logger.info(f"Wrote {path}")


def _compact(value: Any) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


def homology_to_text(report: HomologyReport) -> str:
    """
    Render a homology report as lines "H_i = Z^r ⊕ Z/d" followed by the field Betti numbers.
    """
    lines: List[str] = [f"f-vector: {tuple(report.f_vector)}"]
    lines.extend(report.describe())
    for field, betti in sorted(report.field_betti.items()):
        lines.append(f"Betti over {field}: {tuple(betti)}")
    if report.is_truncated:
        lines.append(f"(computed through dimension {report.max_dim} of {report.dim})")
    return "\n".join(lines) + "\n"


def verdicts_frame(result: SuiteResult) -> pd.DataFrame:
    rows = [
        {
            "claim": v.claim_id,
            "subject": v.subject,
            "expected": _compact(v.expected),
            "computed": _compact(v.computed),
            "result": "PASS" if v.passed else "FAIL",
        }
        for v in result.verdicts
    ]
    frame = pd.DataFrame(rows, columns=["claim", "subject", "expected", "computed", "result"])
    if result.verdicts and any(v.millis is not None for v in result.verdicts):
        frame["ms"] = [v.millis for v in result.verdicts]
    return frame


def suite_report_to_text(result: SuiteResult) -> str:
    """Human-readable verification report: verdict table, findings, overall status"""
    lines = [f"Verification for p={result.p}, group {result.group}, targets {', '.join(result.targets)}", ""]
    if result.verdicts:
        lines.append(verdicts_frame(result).to_string(index=False))
    else:
        lines.append("No verdicts.")

    notes = [(v.claim_id, v.subject, v.note) for v in result.verdicts if v.note]
    assumptions = sorted({a for v in result.verdicts for a in v.assumptions})
    if notes or assumptions:
        lines.append("")
    for claim_id, subject, note in notes:
        lines.append(f"[{claim_id}] {subject}: {note}")
    for assumption in assumptions:
        lines.append(f"Some verdicts {assumption}.")

    if result.findings:
        lines.append("")
        lines.append("Exploratory (reported, not asserted):")
        for finding in result.findings:
            lines.append(f"  {finding.subject} = {finding.group}")

    lines.append("")
    if not result.complete:
        lines.append(f"INCOMPLETE: {result.incomplete_reason}")
    failed = len(result.failed_verdicts())
    lines.append(f"Overall: {'PASS' if result.passed else 'FAIL'} "
                 f"({len(result.verdicts) - failed}/{len(result.verdicts)} verdicts passed)")
    return "\n".join(lines) + "\n"
