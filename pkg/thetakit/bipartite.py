"""Bipartite graphs with a fixed bipartition ``V1 x V2``."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import permutations
from typing import Any

from propcache.api import cached_property
from typing_extensions import Self

from .const import BIPARTITE_ENUMERATION_MAX_CELLS
from .exceptions import ArgumentError, FormatError, InvariantViolation, PreconditionError
from .graph import Graph, iter_bits

_LOGGER = logging.getLogger(__name__)


class BipartiteGraph:
    """Bipartite graph given by its biadjacency rows.

    ``rows[x]`` is a bitmask over ``V2`` of the neighbours of ``x in V1``.
    """

    def __init__(self, n1: int, n2: int, rows: Sequence[int]) -> None:
        if n1 < 1 or n2 < 1:
            raise ArgumentError(f"both parts must be nonempty, got n1={n1} n2={n2}")
        if len(rows) != n1:
            raise ArgumentError(f"expected {n1} rows, got {len(rows)}")
        full = (1 << n2) - 1
        for x, row in enumerate(rows):
            if row & ~full:
                raise ArgumentError(f"row {x} has a neighbour outside 0..{n2 - 1}")
        self._n1 = n1
        self._n2 = n2
        self._rows = tuple(rows)

    @classmethod
    def from_edges(cls, n1: int, n2: int, edges: Iterable[tuple[int, int]]) -> Self:
        rows = [0] * n1
        for x, y in edges:
            if not (0 <= x < n1 and 0 <= y < n2):
                raise ArgumentError(f"invalid edge ({x}, {y}) for parts {n1}x{n2}")
            rows[x] |= 1 << y
        return cls(n1, n2, rows)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> Self:
        """Build from a 0/1 biadjacency matrix."""
        if not matrix:
            raise ArgumentError("biadjacency matrix has no rows")
        n2 = len(matrix[0])
        rows = []
        for x, row in enumerate(matrix):
            if len(row) != n2:
                raise ArgumentError(f"row {x} has {len(row)} entries, expected {n2}")
            if any(entry not in (0, 1) for entry in row):
                raise ArgumentError(f"row {x} is not a 0/1 row")
            rows.append(sum(1 << y for y, entry in enumerate(row) if entry))
        return cls(len(matrix), n2, rows)

    @property
    def n1(self) -> int:
        return self._n1

    @property
    def n2(self) -> int:
        return self._n2

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self._rows[x] >> y & 1)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """``columns[y]`` is a bitmask over ``V1`` of the neighbours of ``y``."""
        cols = [0] * self._n2
        for x, row in enumerate(self._rows):
            for y in iter_bits(row):
                cols[y] |= 1 << x
        return tuple(cols)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, y) for x, row in enumerate(self._rows) for y in iter_bits(row))

    @cached_property
    def max_degree(self) -> int:
        return max(
            max(row.bit_count() for row in self._rows),
            max(col.bit_count() for col in self.columns),
        )

    @property
    def has_isolated_v1(self) -> bool:
        return any(row == 0 for row in self._rows)

    @property
    def has_isolated_vertex(self) -> bool:
        return self.has_isolated_v1 or any(col == 0 for col in self.columns)

    def to_matrix(self) -> list[list[int]]:
        return [[row >> y & 1 for y in range(self._n2)] for row in self._rows]

    def to_graph(self) -> Graph:
        """The underlying simple graph, ``V1`` first then ``V2``."""
        return Graph.from_edges(
            self._n1 + self._n2, ((x, self._n1 + y) for x, y in self.edges)
        )

    def complement(self) -> BipartiteGraph:
        """Bipartite complement: swap edges and non-edges across the parts."""
        full = (1 << self._n2) - 1
        return BipartiteGraph(self._n1, self._n2, [full & ~row for row in self._rows])

    def to_text(self) -> str:
        lines = [f"{self._n1} {self._n2}"]
        lines.extend("".join(str(bit) for bit in row) for row in self.to_matrix())
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self._n1, self._n2, self._rows) == (other._n1, other._n2, other._rows)

    def __hash__(self) -> int:
        return hash((self._n1, self._n2, self._rows))

    def __repr__(self) -> str:
        body = ",".join("".join(str(bit) for bit in row) for row in self.to_matrix())
        return f"BipartiteGraph({self._n1}x{self._n2}, rows={body})"

    def __getstate__(self) -> dict[str, Any]:
        return {"n1": self._n1, "n2": self._n2, "rows": self._rows}

    def __setstate__(self, state: dict[str, Any]) -> None:
        self._n1 = state["n1"]
        self._n2 = state["n2"]
        self._rows = state["rows"]


def parse_bipartite_rows(text: str) -> BipartiteGraph:
    """Parse the compact ``110,011`` row form used on the command line."""
    rows = [row.strip() for row in text.split(",")]
    if not rows or any(not row or set(row) - {"0", "1"} for row in rows):
        raise FormatError(f"invalid biadjacency rows {text!r}")
    return BipartiteGraph.from_matrix([[int(c) for c in row] for row in rows])


def _parse_block(lines: list[tuple[int, str]]) -> BipartiteGraph:
    header_line, header = lines[0]
    try:
        n1, n2 = (int(token) for token in header.split())
    except ValueError as err:
        raise FormatError(f"expected 'n1 n2', got {header!r}", header_line) from err
    body = lines[1:]
    if len(body) != n1:
        raise FormatError(f"expected {n1} rows, got {len(body)}", header_line)
    matrix = []
    for line_no, row in body:
        if len(row) != n2 or set(row) - {"0", "1"}:
            raise FormatError(f"expected {n2} characters of 0/1, got {row!r}", line_no)
        matrix.append([int(c) for c in row])
    try:
        return BipartiteGraph.from_matrix(matrix)
    except ArgumentError as err:
        raise FormatError(str(err), header_line) from err


def iter_bipartite_text(text: str) -> Iterator[BipartiteGraph]:
    """Decode blank-line separated ``n1 n2`` blocks of 0/1 rows."""
    block: list[tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                yield _parse_block(block)
                block = []
            continue
        block.append((line_no, line))
    if block:
        yield _parse_block(block)


def parse_bipartite_text(text: str) -> BipartiteGraph:
    graphs = list(iter_bipartite_text(text))
    if len(graphs) != 1:
        raise FormatError(f"expected exactly one bipartite graph, found {len(graphs)}")
    return graphs[0]


@dataclass(frozen=True)
class BipartiteTwinReduction:
    graph: BipartiteGraph
    kept_v1: tuple[int, ...]
    kept_v2: tuple[int, ...]


def twin_reduce_bipartite(g: BipartiteGraph) -> BipartiteTwinReduction:
    """Keep the first vertex of each part with a given neighbourhood."""
    kept_v1 = tuple(_first_occurrences(g.rows))
    kept_v2 = tuple(_first_occurrences(g.columns))
    rows = [
        sum(1 << b for b, y in enumerate(kept_v2) if g.rows[x] >> y & 1) for x in kept_v1
    ]
    return BipartiteTwinReduction(
        BipartiteGraph(len(kept_v1), len(kept_v2), rows), kept_v1, kept_v2
    )


def _first_occurrences(masks: Sequence[int]) -> Iterator[int]:
    seen: set[int] = set()
    for index, mask in enumerate(masks):
        if mask not in seen:
            seen.add(mask)
            yield index


def _permute_row(row: int, column_order: Sequence[int]) -> int:
    return sum((row >> old & 1) << new for new, old in enumerate(column_order))


def canonical_bipartite_labeling(
    g: BipartiteGraph,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row and column orders of the canonical form.

    Row ``i`` of the canonical graph is row ``row_order[i]`` of ``g`` and
    column ``j`` is column ``column_order[j]``. Tries every column order and
    sorts the rows; the lexicographically largest row tuple wins. Intended
    for small ``n2``.
    """
    best: tuple[int, ...] | None = None
    best_orders: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    for column_order in permutations(range(g.n2)):
        permuted = [_permute_row(row, column_order) for row in g.rows]
        row_order = tuple(sorted(range(g.n1), key=lambda x: permuted[x], reverse=True))
        rows = tuple(permuted[x] for x in row_order)
        if best is None or rows > best:
            best, best_orders = rows, (row_order, column_order)
    return best_orders


def canonical_bipartite(g: BipartiteGraph) -> BipartiteGraph:
    """Canonical form under independent permutations of ``V1`` and ``V2``."""
    row_order, column_order = canonical_bipartite_labeling(g)
    return BipartiteGraph(
        g.n1, g.n2, [_permute_row(g.rows[x], column_order) for x in row_order]
    )


def enumerate_bipartite_graphs(n1: int, n2: int) -> Iterator[BipartiteGraph]:
    """Yield every labeled bipartite graph with parts of the given sizes."""
    cells = n1 * n2
    if n1 < 1 or n2 < 1:
        raise ArgumentError(f"both parts must be nonempty, got n1={n1} n2={n2}")
    if cells > BIPARTITE_ENUMERATION_MAX_CELLS:
        raise ArgumentError(
            f"bipartite enumeration is limited to n1*n2 <= {BIPARTITE_ENUMERATION_MAX_CELLS}"
        )
    row_mask = (1 << n2) - 1
    for mask in range(1 << cells):
        yield BipartiteGraph(n1, n2, [mask >> (x * n2) & row_mask for x in range(n1)])


def find_increasing_subgraph(g: BipartiteGraph) -> list[tuple[int, int]]:
    """Greedy increasing subgraph of size at least ``ceil(n1 / max_degree)``.

    Takes the lowest remaining ``x`` and its lowest remaining neighbour ``y``,
    then drops ``y`` from ``V2`` and ``N(y)`` from ``V1``.
    """
    if g.has_isolated_v1:
        raise PreconditionError("every vertex of V1 needs a neighbour")
    remaining_v1 = (1 << g.n1) - 1
    remaining_v2 = (1 << g.n2) - 1
    pairs: list[tuple[int, int]] = []
    while remaining_v1:
        x = (remaining_v1 & -remaining_v1).bit_length() - 1
        candidates = g.rows[x] & remaining_v2
        if not candidates:
            raise InvariantViolation(f"vertex {x} lost all neighbours during the greedy pass")
        y = (candidates & -candidates).bit_length() - 1
        pairs.append((x, y))
        remaining_v1 &= ~g.columns[y]
        remaining_v2 &= ~(1 << y)
    _LOGGER.debug("increasing subgraph of size %s in %r", len(pairs), g)
    return pairs


def is_increasing(g: BipartiteGraph, pairs: Sequence[tuple[int, int]]) -> bool:
    """Whether ``pairs`` is an increasing subgraph of ``g``.

    Every ``x_i y_i`` must be an edge and ``x_i y_j`` a non-edge for ``j < i``.
    """
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        return False
    for i, (x_i, y_i) in enumerate(pairs):
        if not g.has_edge(x_i, y_i):
            return False
        if any(g.has_edge(x_i, y_j) for y_j in ys[:i]):
            return False
    return True
