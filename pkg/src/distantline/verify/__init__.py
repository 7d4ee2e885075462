"""Acceptance suites and their report receipts."""

from distantline.verify.report import ReportLogger, format_report
from distantline.verify.suites import SUITES, run_suite, suite_names

__all__ = ["ReportLogger", "SUITES", "format_report", "run_suite", "suite_names"]
