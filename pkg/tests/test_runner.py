import io
import json
from unittest.mock import patch

import pytest

from tests.common import fixture_path
from thetakit.exceptions import ArgumentError, InvariantViolation
from thetakit.lspec import ModularL
from thetakit.verifier.const import (
    CSV_COLUMNS,
    DEFAULT_BUDGET_MS,
    ReportFormat,
    TheoremId,
    Verdict,
    VerifyConfig,
)
from thetakit.verifier.report import BoundReport
from thetakit.verifier.runner import (
    CorpusRunner,
    async_load_bipartite_corpus,
    async_load_corpus,
    async_verify,
    load_corpus,
    resolve_budget_ms,
)
from thetakit.verifier.theorems import TheoremParams

MOD2 = ModularL(2, frozenset({1}))


def test_resolve_budget_ms():
    assert resolve_budget_ms(5, {"THETAKIT_BUDGET_MS": "50"}) == 5
    assert resolve_budget_ms(None, {"THETAKIT_BUDGET_MS": "50"}) == 50
    assert resolve_budget_ms(None, {}) == DEFAULT_BUDGET_MS
    with pytest.raises(ArgumentError, match="THETAKIT_BUDGET_MS"):
        resolve_budget_ms(None, {"THETAKIT_BUDGET_MS": "soon"})


@pytest.mark.asyncio
async def test_async_load_corpus():
    graphs = await async_load_corpus(fixture_path("small_graphs.g6"))
    assert [g.graph6 for g in graphs] == ["@", "A_", "A?", "Bw", "BW", "Bg"]
    assert load_corpus(fixture_path("small_graphs.g6")) == graphs
    bipartite = await async_load_bipartite_corpus(fixture_path("two_bipartite.bip"))
    assert [g.rows for g in bipartite] == [(0b01, 0b10), (0b11, 0b10)]


@pytest.mark.asyncio
async def test_runner_writes_csv_in_corpus_order():
    stream = io.StringIO()
    config: VerifyConfig = {
        "theorem": TheoremId.MODULAR_PRODUCT,
        "params": TheoremParams(lspec=MOD2),
        "corpus": fixture_path("small_graphs.g6"),
    }
    summary = await async_verify(config, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert [line.split(",")[0] for line in lines[1:]] == ["@", "A_", "A?", "Bw", "BW", "Bg"]
    assert all(line.split(",")[5] == "true" for line in lines[1:])
    assert summary.rows == 6
    assert summary.indeterminate == 0


@pytest.mark.asyncio
async def test_runner_generates_graphs():
    stream = io.StringIO()
    config: VerifyConfig = {
        "theorem": TheoremId.MODULAR_PRODUCT,
        "params": TheoremParams(lspec=MOD2),
        "n_max": 2,
        "format": ReportFormat.JSON,
        "timings": True,
    }
    summary = await async_verify(config, stream)
    rows = [json.loads(line) for line in stream.getvalue().splitlines()]
    assert summary.rows == len(rows) == 3
    assert all(row["millis"] is not None for row in rows)


@pytest.mark.asyncio
async def test_runner_bipartite_and_grid_corpora():
    stream = io.StringIO()
    summary = await async_verify(
        {
            "theorem": TheoremId.ODD_TIGHTNESS,
            "params": TheoremParams(),
            "corpus": fixture_path("two_bipartite.bip"),
        },
        stream,
    )
    assert summary.rows == 2
    stream = io.StringIO()
    summary = await async_verify(
        {
            "theorem": TheoremId.BINOMIAL_POWER,
            "params": TheoremParams(x_max=3, s_max=3),
            "workers": 2,
        },
        stream,
    )
    assert summary.rows == 4
    assert stream.getvalue().splitlines()[1] == ",STAR-INEQ,x=2;s=2,4,4,true,0,"


@pytest.mark.asyncio
async def test_runner_rejects_bad_parameters():
    with pytest.raises(ArgumentError):
        CorpusRunner(
            {"theorem": TheoremId.UNIFORM, "params": TheoremParams(lspec=MOD2)}, io.StringIO()
        )
    runner = CorpusRunner(
        {
            "theorem": TheoremId.MODULAR_PRODUCT,
            "params": TheoremParams(lspec=MOD2),
            "n_min": 3,
            "n_max": 2,
        },
        io.StringIO(),
    )
    with pytest.raises(ArgumentError, match="vertex range"):
        await runner.async_run()


@pytest.mark.asyncio
async def test_runner_writes_bundle_on_violation(tmp_path):
    false_report = BoundReport(
        graph_id="A_",
        theorem_id=TheoremId.MODULAR_PRODUCT,
        params="L=mod:2:1",
        lhs=5,
        rhs=3,
        holds=Verdict.FALSE,
        slack=-2,
        witnesses=("Θ_L(G)\nmod:2:1\n1 2\n1\n1",),
    )
    stream = io.StringIO()
    config: VerifyConfig = {
        "theorem": TheoremId.MODULAR_PRODUCT,
        "params": TheoremParams(lspec=MOD2),
        "corpus": fixture_path("small_graphs.g6"),
        "bundle_dir": str(tmp_path),
    }
    with (
        patch("thetakit.verifier.runner.evaluate_case", return_value=false_report),
        pytest.raises(InvariantViolation) as excinfo,
    ):
        await async_verify(config, stream)
    bundle = tmp_path / "thetakit-repro-T3.1i.json"
    assert excinfo.value.details == {"bundle": str(bundle)}
    assert excinfo.value.report.witness_path == str(bundle)
    payload = json.loads(bundle.read_text())
    assert payload["lhs"] == 5
    assert payload["witnesses"] == ["Θ_L(G)\nmod:2:1\n1 2\n1\n1"]
    lines = stream.getvalue().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("A_,T3.1i,")
