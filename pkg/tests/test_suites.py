"""Tests for the acceptance suites and their receipts."""

import json

import pytest

from distantline.core.errors import TheoremViolationError
from distantline.verify import SUITES, ReportLogger, format_report, run_suite, suite_names


@pytest.mark.parametrize(
    "name",
    [
        "cardinalities",
        "parallel-classes",
        "local-ring-laws",
        "annihilator",
        "product-theorem",
        "wreath-structure",
        "jordan-classification",
        "bartolone",
    ],
)
def test_quick_suites_pass(name):
    """Test that the quick suites pass every check."""
    report = run_suite(name)
    assert report.checks
    assert report.status == "pass", format_report(report.report())


@pytest.mark.slow
@pytest.mark.parametrize("name", ["psi-model", "automorphism-counts", "factorization", "appendix-decomposition"])
def test_heavy_suites_pass(name):
    """Test the suites that sweep larger lines."""
    report = run_suite(name, seed=7)
    assert report.status == "pass", format_report(report.report())


def test_suite_names():
    """Test that every suite is listed, plus "all"."""
    names = suite_names()
    assert names[-1] == "all"
    assert set(names[:-1]) == set(SUITES)


def test_unknown_suite():
    """Test that an unknown suite name raises KeyError."""
    with pytest.raises(KeyError):
        run_suite("no-such-suite")


def test_violation_is_recorded(monkeypatch):
    """Test that a theorem violation ends the suite and is recorded."""

    def broken(report, options):
        report.check("reached", True, True)
        raise TheoremViolationError("wreath identity fails")

    monkeypatch.setitem(SUITES, "wreath-structure", broken)
    report = run_suite("wreath-structure")
    assert report.status == "violation"
    assert [c.status for c in report.checks] == ["pass", "violation"]
    assert "wreath identity fails" in report.checks[-1].actual


def test_report_logger(tmp_path):
    """Test statuses, notes and the saved receipt."""
    report = ReportLogger("demo")
    assert report.status == "pass"
    assert report.check("sizes", [2], [2])
    assert not report.check("count", 48, 47)
    report.note("sampled", True)
    assert report.status == "fail"

    path = report.save(tmp_path / "receipts" / "demo.json")
    document = json.loads((tmp_path / "receipts" / "demo.json").read_text(encoding="utf-8"))
    assert path.endswith("demo.json")
    assert document["suite"] == "demo"
    assert document["status"] == "fail"
    assert document["notes"] == {"sampled": True}
    assert document["completed"] is not None


def test_format_report():
    """Test the human-readable summary."""
    report = ReportLogger("demo")
    report.check("sizes", [2], [2])
    report.check("count", 48, 47)
    text = format_report(report.report())
    assert text.splitlines()[0] == "Suite: demo"
    assert "  [ok] sizes" in text
    assert "  [FAIL] count (expected 48, got 47)" in text
    assert text.splitlines()[-1] == "Status: fail (1/2 checks passed)"
