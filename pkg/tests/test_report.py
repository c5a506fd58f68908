import io
import json

from thetakit.verifier.const import CSV_COLUMNS, ReportFormat, TheoremId, Verdict
from thetakit.verifier.report import BoundReport, ReportWriter, bundle_payload


def _report(**kwargs) -> BoundReport:
    data = {
        "graph_id": "Bg",
        "theorem_id": TheoremId.MODULAR_PRODUCT,
        "params": "L=mod:2:1",
        "lhs": 2,
        "rhs": 3,
        "holds": Verdict.TRUE,
        "slack": 1,
        "millis": 7,
    }
    data.update(kwargs)
    return BoundReport(**data)


def test_report_row():
    report = _report()
    assert report.as_row() == ["Bg", "T3.1i", "L=mod:2:1", "2", "3", "true", "1", ""]
    assert report.as_row(timings=True)[-1] == "7"
    assert not report.violated


def test_report_unknown_cells():
    report = _report(lhs=None, holds=Verdict.INDETERMINATE, slack=None, millis=None)
    assert report.as_row(timings=True) == [
        "Bg", "T3.1i", "L=mod:2:1", "unknown", "3", "indeterminate", "", ""
    ]
    assert report.as_dict()["lhs"] is None


def test_report_dict():
    report = _report(holds=Verdict.FALSE, slack=-1, note="mr_p(G) 4")
    data = report.as_dict()
    assert data["theorem"] == "T3.1i"
    assert data["holds"] == "false"
    assert data["millis"] is None
    assert data["note"] == "mr_p(G) 4"
    assert "witness_path" not in data
    assert report.violated
    assert report.with_witness_path("x.json").as_dict()["witness_path"] == "x.json"
    assert report.with_millis(9).millis == 9


def test_witnesses_do_not_affect_equality():
    assert _report(witnesses=("a",)) == _report()


def test_csv_writer():
    stream = io.StringIO()
    writer = ReportWriter(stream)
    writer.write(_report())
    writer.write(_report(graph_id="Bw"))
    writer.finish()
    lines = stream.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1] == "Bg,T3.1i,L=mod:2:1,2,3,true,1,"
    assert lines[2].startswith("Bw,")
    assert writer.rows == 2


def test_csv_writer_header_only_when_empty():
    stream = io.StringIO()
    ReportWriter(stream).finish()
    assert stream.getvalue() == ",".join(CSV_COLUMNS) + "\n"


def test_json_writer():
    stream = io.StringIO()
    writer = ReportWriter(stream, ReportFormat.JSON, timings=True)
    writer.write(_report())
    writer.write(_report(graph_id="", params="x=2;s=2"))
    writer.finish()
    rows = [json.loads(line) for line in stream.getvalue().splitlines()]
    assert len(rows) == 2
    assert rows[0]["graph6"] == "Bg"
    assert rows[0]["millis"] == 7
    assert rows[1]["params"] == "x=2;s=2"


def test_bundle_payload():
    report = _report(holds=Verdict.FALSE, witnesses=("Θ_L(G)\nfinite:1",))
    payload = bundle_payload(report, {"seed": 1})
    assert payload["holds"] == "false"
    assert payload["millis"] == 7
    assert payload["witnesses"] == ["Θ_L(G)\nfinite:1"]
    assert payload["note"] == ""
    assert payload["seed"] == 1
    json.dumps(payload)
