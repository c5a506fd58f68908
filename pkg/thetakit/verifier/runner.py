"""Run a theorem check over a corpus and stream the reports."""

from __future__ import annotations

import asyncio
import json
import logging
import os
from collections import Counter
from collections.abc import Iterator, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import aiofiles

from ..bipartite import BipartiteGraph, enumerate_bipartite_graphs, iter_bipartite_text
from ..exceptions import ArgumentError, InvariantViolation
from ..graph import Graph, enumerate_graphs, iter_graph6_lines
from .const import (
    BUNDLE_FILENAME,
    CONF_BUDGET_MS,
    CONF_BUNDLE_DIR,
    CONF_CORPUS,
    CONF_FORMAT,
    CONF_N_MAX,
    CONF_N_MIN,
    CONF_PARAMS,
    CONF_PARTS_MAX,
    CONF_THEOREM,
    CONF_TIMINGS,
    CONF_WORKERS,
    DEFAULT_BUDGET_MS,
    DEFAULT_N_MAX,
    DEFAULT_PARTS_MAX,
    DEFAULT_WORKERS,
    ENV_BUDGET_MS,
    CorpusKind,
    ReportFormat,
    Verdict,
    VerifyConfig,
)
from .report import BoundReport, ReportWriter, bundle_payload
from .theorems import CORPUS_KIND, Case, evaluate_case, grid_cases, validate_params

_LOGGER = logging.getLogger(__name__)


def resolve_budget_ms(flag: int | None, environ: Mapping[str, str] | None = None) -> int:
    """Per-graph budget: command-line flag, then environment, then default."""
    if flag is not None:
        return flag
    env = os.environ if environ is None else environ
    if (raw := env.get(ENV_BUDGET_MS)) is not None:
        try:
            return int(raw)
        except ValueError as err:
            raise ArgumentError(f"{ENV_BUDGET_MS} must be an integer, got {raw!r}") from err
    return DEFAULT_BUDGET_MS


def load_corpus(path: str | Path) -> list[Graph]:
    with open(path, encoding="ascii") as file:
        return list(iter_graph6_lines(file))


async def async_load_corpus(path: str | Path) -> list[Graph]:
    """Read a newline-delimited graph6 corpus."""
    async with aiofiles.open(path, encoding="ascii") as file:
        text = await file.read()
    return list(iter_graph6_lines(text.splitlines()))


async def async_load_bipartite_corpus(path: str | Path) -> list[BipartiteGraph]:
    async with aiofiles.open(path, encoding="ascii") as file:
        text = await file.read()
    return list(iter_bipartite_text(text))


def generated_graphs(n_min: int, n_max: int) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_graphs(n)


def generated_bipartite_graphs(parts_max: int) -> Iterator[BipartiteGraph]:
    for n1 in range(1, parts_max + 1):
        for n2 in range(1, parts_max + 1):
            yield from enumerate_bipartite_graphs(n1, n2)


@dataclass
class RunSummary:
    rows: int = 0
    indeterminate: int = 0
    vacuous: int = 0


class CorpusRunner:
    """Evaluate one theorem over a corpus and write the rows in input order."""

    def __init__(self, config: VerifyConfig, stream: TextIO) -> None:
        self._theorem = config[CONF_THEOREM]
        self._params = validate_params(self._theorem, config[CONF_PARAMS])
        self._corpus = config.get(CONF_CORPUS)
        self._n_min = config.get(CONF_N_MIN, 1)
        self._n_max = config.get(CONF_N_MAX, DEFAULT_N_MAX)
        self._parts_max = config.get(CONF_PARTS_MAX, DEFAULT_PARTS_MAX)
        self._workers = max(1, config.get(CONF_WORKERS, DEFAULT_WORKERS))
        self._budget_ms = config.get(CONF_BUDGET_MS, DEFAULT_BUDGET_MS)
        self._bundle_dir = Path(config.get(CONF_BUNDLE_DIR, "."))
        self._writer = ReportWriter(
            stream,
            config.get(CONF_FORMAT, ReportFormat.CSV),
            config.get(CONF_TIMINGS, False),
        )

    async def async_load_cases(self) -> list[Case]:
        kind = CORPUS_KIND[self._theorem]
        if kind is CorpusKind.GRID:
            return list(grid_cases(self._theorem, self._params))
        if kind is CorpusKind.BIPARTITE:
            if self._corpus:
                return list(await async_load_bipartite_corpus(self._corpus))
            return list(generated_bipartite_graphs(self._parts_max))
        if self._corpus:
            return list(await async_load_corpus(self._corpus))
        if self._n_min < 1 or self._n_max < self._n_min:
            raise ArgumentError(f"invalid vertex range {self._n_min}..{self._n_max}")
        return list(generated_graphs(self._n_min, self._n_max))

    async def async_run(self) -> RunSummary:
        """Check every case; a false row writes a bundle and raises InvariantViolation."""
        cases = await self.async_load_cases()
        _LOGGER.info(
            "Checking %s on %s cases with %s worker(s)", self._theorem, len(cases), self._workers
        )
        summary = RunSummary()
        verdicts: Counter[Verdict] = Counter()
        if self._workers == 1:
            for case in cases:
                report = evaluate_case(self._theorem, case, self._params, self._budget_ms)
                await self._async_emit(report, summary, verdicts)
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=self._workers) as pool:
                futures = [
                    loop.run_in_executor(
                        pool, evaluate_case, self._theorem, case, self._params, self._budget_ms
                    )
                    for case in cases
                ]
                try:
                    for future in futures:
                        await self._async_emit(await future, summary, verdicts)
                finally:
                    for future in futures:
                        future.cancel()
        self._writer.finish()
        summary.indeterminate = verdicts[Verdict.INDETERMINATE]
        summary.vacuous = verdicts[Verdict.VACUOUS]
        if summary.indeterminate:
            _LOGGER.warning(
                "%s of %s rows are indeterminate (solver budget)",
                summary.indeterminate,
                summary.rows,
            )
        return summary

    async def _async_emit(
        self, report: BoundReport, summary: RunSummary, verdicts: Counter[Verdict]
    ) -> None:
        if report.violated:
            path = await self._async_write_bundle(report)
            report = report.with_witness_path(str(path))
        self._writer.write(report)
        summary.rows += 1
        verdicts[report.holds] += 1
        if report.violated:
            self._writer.finish()
            _LOGGER.error(
                "%s fails on %r (%s): lhs=%s rhs=%s; reproduction bundle at %s",
                report.theorem_id,
                report.graph_id,
                report.params,
                report.lhs,
                report.rhs,
                report.witness_path,
            )
            raise InvariantViolation(
                f"{report.theorem_id} fails on {report.graph_id!r}",
                report=report,
                details={"bundle": report.witness_path},
            )

    async def _async_write_bundle(self, report: BoundReport) -> Path:
        path = self._bundle_dir / BUNDLE_FILENAME.format(theorem=report.theorem_id)
        async with aiofiles.open(path, "w") as file:
            await file.write(json.dumps(bundle_payload(report), indent=2, sort_keys=True))
        return path


async def async_verify(config: VerifyConfig, stream: TextIO) -> RunSummary:
    return await CorpusRunner(config, stream).async_run()
