"""Bound verification over graph corpora and the command-line interface."""

from .const import ReportFormat, TheoremId, Verdict
from .report import BoundReport
from .runner import async_verify
from .theorems import TheoremParams, check_theorem, evaluate_case

__all__ = [
    "BoundReport",
    "ReportFormat",
    "TheoremId",
    "TheoremParams",
    "Verdict",
    "async_verify",
    "check_theorem",
    "evaluate_case",
]
