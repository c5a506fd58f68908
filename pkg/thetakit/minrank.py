"""Minimum rank of graphs over GF(p) and closed forms over the reals."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product

import networkx as nx

from .bipartite import BipartiteGraph, find_increasing_subgraph
from .budget import Deadline, as_deadline
from .const import (
    DEFAULT_MINRANK_BUDGET,
    DEFAULT_REAL_SEARCH_ENTRIES,
    GraphClass,
    SolveStatus,
)
from .exceptions import ArgumentError, InvariantViolation
from .graph import Graph
from .linalg import (
    GF,
    QQ,
    ExactMatrix,
    Field,
    rank_gf2_masks,
    rank_integer,
    rank_mod_p,
    require_prime,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinRankResult:
    """Outcome of a minimum-rank enumeration.

    ``value`` is ``None`` when the node budget or deadline ran out first.
    """

    value: int | None
    witness: ExactMatrix | None
    nodes: int
    status: SolveStatus

    @property
    def known(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return f"unknown ({self.status} after {self.nodes} nodes)"


@dataclass(frozen=True)
class ClosedForm:
    value: int | None
    graph_class: GraphClass

    @property
    def known(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return f"unsupported ({self.graph_class})" if self.value is None else str(self.value)


def _spanning_forest(edges: Sequence[tuple[int, int]], n: int) -> list[tuple[int, int]]:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(n))
    nx_graph.add_edges_from(edges)
    return sorted(
        (min(u, v), max(u, v))
        for u, v in nx.minimum_spanning_edges(nx_graph, algorithm="kruskal", data=False)
    )


def _is_clique_plus_isolated(g: Graph) -> bool:
    support = [v for v in range(g.n) if g.adj[v]]
    mask = sum(1 << v for v in support)
    return all(g.adj[v] | 1 << v == mask for v in support)


def _symmetric_lower_bound(g: Graph) -> int:
    """Rank one matrices only realise a clique plus isolated vertices."""
    return 1 if _is_clique_plus_isolated(g) else 2


class _Enumeration:
    """Shared node accounting for the exhaustive searches."""

    def __init__(self, budget: int, deadline: Deadline) -> None:
        if budget < 1:
            raise ArgumentError(f"budget must be positive, got {budget}")
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0
        self.best: int | None = None
        self.best_rows: list[list[int]] | None = None

    def step(self) -> SolveStatus | None:
        self.nodes += 1
        if self.nodes > self.budget:
            return SolveStatus.BUDGET
        if self.deadline.expired():
            return SolveStatus.TIMED_OUT
        return None

    def offer(self, rank: int, rows: list[list[int]]) -> None:
        if self.best is None or rank < self.best:
            self.best = rank
            self.best_rows = [list(row) for row in rows]

    def result(self, field: Field, status: SolveStatus = SolveStatus.SOLVED) -> MinRankResult:
        if status is not SolveStatus.SOLVED or self.best_rows is None:
            return MinRankResult(None, None, self.nodes, status)
        return MinRankResult(self.best, ExactMatrix(self.best_rows, field), self.nodes, status)


def _check_symmetric_witness(g: Graph, result: MinRankResult) -> MinRankResult:
    matrix = result.witness
    if matrix is None:
        return result
    pattern = matrix.nonzero_pattern()
    off_diagonal = tuple(row & ~(1 << v) for v, row in enumerate(pattern))
    if not matrix.is_symmetric or off_diagonal != g.adj or matrix.rank != result.value:
        raise InvariantViolation(
            f"minimum-rank witness does not realise {g!r}",
            details={"matrix": matrix.to_text()},
        )
    return result


def _edge_value_choices(
    forest: Sequence[tuple[int, int]],
    free: Sequence[tuple[int, int]],
    forest_values: Sequence[int],
    free_values: Sequence[int],
) -> Iterator[dict[tuple[int, int], int]]:
    for forest_choice in product(forest_values, repeat=len(forest)):
        for free_choice in product(free_values, repeat=len(free)):
            values = dict(zip(forest, forest_choice, strict=True))
            values.update(zip(free, free_choice, strict=True))
            yield values


def _symmetric_search(
    g: Graph,
    forest_values: Sequence[int],
    free_values: Sequence[int],
    diagonal_values: Sequence[int],
    rank_of: Callable[[list[list[int]]], int],
    enumeration: _Enumeration,
    stop_at: int = 0,
) -> SolveStatus:
    n = g.n
    forest = _spanning_forest(g.edges, n)
    forest_set = set(forest)
    free = [e for e in g.edges if e not in forest_set]
    active = [v for v in range(n) if g.adj[v]]
    lower = max(_symmetric_lower_bound(g), stop_at)
    rows = [[0] * n for _ in range(n)]
    for values in _edge_value_choices(forest, free, forest_values, free_values):
        for (u, v), value in values.items():
            rows[u][v] = rows[v][u] = value
        for diagonal in product(diagonal_values, repeat=len(active)):
            status = enumeration.step()
            if status is not None:
                return status
            for v, d in zip(active, diagonal, strict=True):
                rows[v][v] = d
            enumeration.offer(rank_of(rows), rows)
            if enumeration.best is not None and enumeration.best <= lower:
                return SolveStatus.SOLVED
    return SolveStatus.SOLVED


def minrank_gfp(
    g: Graph,
    p: int,
    budget: int = DEFAULT_MINRANK_BUDGET,
    *,
    deadline: Deadline | None = None,
) -> MinRankResult:
    """Minimum rank over symmetric GF(p) matrices whose off-diagonal support is ``E(g)``.

    Over GF(2) the off-diagonal entries are forced, so only the diagonal is
    enumerated. For odd ``p`` the entries on a spanning forest are scaled to 1
    and the remaining edges and the diagonal are enumerated. Isolated vertices
    keep a zero diagonal.
    """
    require_prime(p)
    field = GF(p)
    enumeration = _Enumeration(budget, as_deadline(deadline))
    if not g.edge_count:
        return MinRankResult(0, ExactMatrix.zeros(g.n, g.n, field), 0, SolveStatus.SOLVED)
    if p == 2:
        status = _gf2_search(g, enumeration)
    else:
        status = _symmetric_search(
            g,
            (1,),
            range(1, p),
            range(p),
            lambda rows: rank_mod_p(rows, p),
            enumeration,
        )
    _LOGGER.debug(
        "minrank over GF(%s) of %r: %s after %s nodes", p, g, enumeration.best, enumeration.nodes
    )
    return _check_symmetric_witness(g, enumeration.result(field, status))


def _gf2_search(g: Graph, enumeration: _Enumeration) -> SolveStatus:
    active = [v for v in range(g.n) if g.adj[v]]
    lower = _symmetric_lower_bound(g)
    for choice in range(1 << len(active)):
        status = enumeration.step()
        if status is not None:
            return status
        masks = list(g.adj)
        for index, v in enumerate(active):
            if choice >> index & 1:
                masks[v] |= 1 << v
        rank = rank_gf2_masks(masks)
        if enumeration.best is None or rank < enumeration.best:
            enumeration.offer(rank, [[mask >> j & 1 for j in range(g.n)] for mask in masks])
        if enumeration.best == lower:
            break
    return SolveStatus.SOLVED


def minrank_real_upper_bound(
    g: Graph,
    entries: Sequence[int] = DEFAULT_REAL_SEARCH_ENTRIES,
    budget: int = DEFAULT_MINRANK_BUDGET,
    *,
    stop_at: int = 0,
    deadline: Deadline | None = None,
) -> MinRankResult:
    """Smallest rank of a real symmetric matrix with bounded integer entries.

    Edge entries range over ``entries``, with spanning-forest edges kept
    positive; diagonal entries range over ``entries`` and zero. The value is
    an upper bound on the real minimum rank, not a certificate. The search
    stops early once a rank of at most ``stop_at`` is found.
    """
    values = sorted(set(entries) - {0})
    if not values:
        raise ArgumentError("entry range needs a nonzero value")
    positive = [v for v in values if v > 0] or [abs(values[0])]
    enumeration = _Enumeration(budget, as_deadline(deadline))
    if not g.edge_count:
        return MinRankResult(0, ExactMatrix.zeros(g.n, g.n, QQ), 0, SolveStatus.SOLVED)
    status = _symmetric_search(
        g, positive, values, [0, *values], rank_integer, enumeration, stop_at
    )
    return _check_symmetric_witness(g, enumeration.result(QQ, status))


def _check_bipartite_witness(g: BipartiteGraph, result: MinRankResult) -> MinRankResult:
    matrix = result.witness
    if matrix is not None and (matrix.nonzero_pattern() != g.rows or matrix.rank != result.value):
        raise InvariantViolation(
            f"bipartite minimum-rank witness does not realise {g!r}",
            details={"matrix": matrix.to_text()},
        )
    return result


def _bipartite_lower_bound(g: BipartiteGraph) -> int:
    """Length of a greedy increasing subgraph on the non-isolated rows."""
    rows = [row for row in g.rows if row]
    return len(find_increasing_subgraph(BipartiteGraph(len(rows), g.n2, rows)))


def bipartite_minrank_gfp(
    g: BipartiteGraph,
    p: int,
    budget: int = DEFAULT_MINRANK_BUDGET,
    *,
    deadline: Deadline | None = None,
) -> MinRankResult:
    """Minimum rank over GF(p) of matrices whose support is the biadjacency pattern."""
    require_prime(p)
    field = GF(p)
    enumeration = _Enumeration(budget, as_deadline(deadline))
    if not g.edges:
        return MinRankResult(0, ExactMatrix.zeros(g.n1, g.n2, field), 0, SolveStatus.SOLVED)
    if p == 2:
        enumeration.step()
        enumeration.offer(rank_gf2_masks(g.rows), g.to_matrix())
        return _check_bipartite_witness(g, enumeration.result(field))

    n1 = g.n1
    forest = [(u, v - n1) for u, v in _spanning_forest(g.to_graph().edges, n1 + g.n2)]
    forest_set = set(forest)
    free = [e for e in g.edges if e not in forest_set]
    lower = _bipartite_lower_bound(g)
    status = SolveStatus.SOLVED
    rows = [[0] * g.n2 for _ in range(n1)]
    for values in _edge_value_choices(forest, free, (1,), range(1, p)):
        step = enumeration.step()
        if step is not None:
            status = step
            break
        for (x, y), value in values.items():
            rows[x][y] = value
        enumeration.offer(rank_mod_p(rows, p), rows)
        if enumeration.best == lower:
            break
    _LOGGER.debug("bipartite minrank over GF(%s) of %r: %s", p, g, enumeration.best)
    return _check_bipartite_witness(g, enumeration.result(field, status))


_CLOSED_FORMS = {
    GraphClass.EDGELESS: lambda n: 0,
    GraphClass.COMPLETE: lambda n: 1,
    GraphClass.PATH: lambda n: n - 1,
    GraphClass.CYCLE: lambda n: n - 2,
    GraphClass.STAR: lambda n: 2,
    GraphClass.COMPLETE_BIPARTITE: lambda n: 2,
}


def classify_graph(g: Graph) -> GraphClass:
    """Structural class of ``g`` among those with a known real minimum rank."""
    n, m = g.n, g.edge_count
    if m == 0:
        return GraphClass.EDGELESS
    if m == n * (n - 1) // 2:
        return GraphClass.COMPLETE
    nx_graph = g.to_networkx()
    if not nx.is_connected(nx_graph):
        return GraphClass.UNSUPPORTED
    if m == n - 1 and g.max_degree <= 2:
        return GraphClass.PATH
    if m == n and all(d == 2 for d in g.degrees):
        return GraphClass.CYCLE
    if nx.is_bipartite(nx_graph):
        left, right = nx.bipartite.sets(nx_graph)
        if m == len(left) * len(right):
            if min(len(left), len(right)) == 1:
                return GraphClass.STAR
            return GraphClass.COMPLETE_BIPARTITE
    return GraphClass.UNSUPPORTED


def minrank_real_closed_form(g: Graph) -> ClosedForm:
    graph_class = classify_graph(g)
    formula = _CLOSED_FORMS.get(graph_class)
    return ClosedForm(None if formula is None else formula(g.n), graph_class)
