"""Report rows and their CSV / JSON serialization."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from typing import Any, TextIO

from .const import CSV_COLUMNS, UNKNOWN_VALUE, ReportFormat, TheoremId, Verdict


def _cell(value: int | None) -> str:
    return UNKNOWN_VALUE if value is None else str(value)


@dataclass(frozen=True)
class BoundReport:
    """One checked row: both sides of an inequality for one graph.

    ``slack`` is positive when the inequality holds with room to spare and
    ``None`` unless both sides are known.
    """

    graph_id: str
    theorem_id: TheoremId
    params: str
    lhs: int | None
    rhs: int | None
    holds: Verdict
    slack: int | None = None
    millis: int | None = None
    witness_path: str | None = None
    note: str = ""
    witnesses: tuple[str, ...] = field(default=(), compare=False, repr=False)

    @property
    def violated(self) -> bool:
        return self.holds is Verdict.FALSE

    def with_millis(self, millis: int) -> BoundReport:
        return replace(self, millis=millis)

    def with_witness_path(self, path: str) -> BoundReport:
        return replace(self, witness_path=path)

    def as_row(self, timings: bool = False) -> list[str]:
        return [
            self.graph_id,
            str(self.theorem_id),
            self.params,
            _cell(self.lhs),
            _cell(self.rhs),
            str(self.holds),
            "" if self.slack is None else str(self.slack),
            "" if not timings or self.millis is None else str(self.millis),
        ]

    def as_dict(self, timings: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "graph6": self.graph_id,
            "theorem": str(self.theorem_id),
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": str(self.holds),
            "slack": self.slack,
            "millis": self.millis if timings else None,
        }
        if self.note:
            data["note"] = self.note
        if self.witness_path:
            data["witness_path"] = self.witness_path
        return data


class ReportWriter:
    """Write report rows to a text stream as CSV or one JSON object per line."""

    def __init__(
        self, stream: TextIO, fmt: ReportFormat = ReportFormat.CSV, timings: bool = False
    ) -> None:
        self._stream = stream
        self._format = fmt
        self._timings = timings
        self._csv = csv.writer(stream, lineterminator="\n") if fmt is ReportFormat.CSV else None
        self._header_written = False
        self.rows = 0

    def write(self, report: BoundReport) -> None:
        if self._csv is not None:
            if not self._header_written:
                self._csv.writerow(CSV_COLUMNS)
                self._header_written = True
            self._csv.writerow(report.as_row(self._timings))
        else:
            self._stream.write(json.dumps(report.as_dict(self._timings), sort_keys=True))
            self._stream.write("\n")
        self.rows += 1

    def finish(self) -> None:
        if self._csv is not None and not self._header_written:
            self._csv.writerow(CSV_COLUMNS)
            self._header_written = True
        self._stream.flush()


def bundle_payload(report: BoundReport, details: dict[str, Any] | None = None) -> dict[str, Any]:
    """Reproduction data for a violated row."""
    return {
        **report.as_dict(timings=True),
        "note": report.note,
        "witnesses": list(report.witnesses),
        **(details or {}),
    }
