"""Report receipts for verification runs."""

import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from distantline.export.models import CheckModel, ReportModel


class ReportLogger:
    """Collects the checks of one suite run and writes a JSON receipt.

    Every check records what was expected and what was computed. A check
    whose computation raised a theorem violation is recorded with status
    "violation" so the run can exit with its own code.
    """

    def __init__(self, suite: str):
        """Initialize the report logger.

        Args:
            suite: Name of the suite being run.
        """
        self.suite = suite
        self.started = datetime.now().isoformat()
        self.completed: Optional[str] = None
        self.checks: List[CheckModel] = []
        self.notes: Dict[str, Any] = {}

    def check(self, description: str, expected: Any, actual: Any) -> bool:
        """Record a comparison and return whether it passed."""
        passed = expected == actual
        self.checks.append(
            CheckModel(description=description, expected=expected, actual=actual, status="pass" if passed else "fail")
        )
        return passed

    def violation(self, description: str, error: Exception) -> None:
        self.checks.append(
            CheckModel(description=description, expected="no theorem violation", actual=str(error), status="violation")
        )

    def note(self, key: str, value: Any) -> None:
        self.notes[key] = value

    @property
    def status(self) -> str:
        statuses = {c.status for c in self.checks}
        if "violation" in statuses:
            return "violation"
        if "fail" in statuses:
            return "fail"
        return "pass"

    def report(self) -> ReportModel:
        if self.completed is None:
            self.completed = datetime.now().isoformat()
        return ReportModel(
            suite=self.suite,
            started=self.started,
            completed=self.completed,
            status=self.status,
            checks=self.checks,
            notes=self.notes,
        )

    def receipt_filename(self) -> str:
        """Timestamped file name for receipts kept in the reports directory."""
        timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        return f"{self.suite}_{timestamp}.json"

    def save(self, path: Union[str, Path]) -> str:
        """Save the receipt to a JSON file.

        Returns:
            Path to the saved receipt.
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.report().model_dump(), f, indent=2, ensure_ascii=False)
        return str(path)


def format_report(report: ReportModel) -> str:
    """Human-readable summary, one line per check."""
    marks = {"pass": "ok", "fail": "FAIL", "violation": "VIOLATION"}
    lines = [f"Suite: {report.suite}"]
    for check in report.checks:
        line = f"  [{marks[check.status]}] {check.description}"
        if check.status != "pass":
            line += f" (expected {check.expected!r}, got {check.actual!r})"
        lines.append(line)
    for key, value in report.notes.items():
        lines.append(f"  note: {key} = {value}")
    passed = sum(1 for c in report.checks if c.status == "pass")
    lines.append(f"Status: {report.status} ({passed}/{len(report.checks)} checks passed)")
    return "\n".join(lines)
