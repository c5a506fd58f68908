"""One checker per inequality, evaluated exactly on a single graph."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, replace
from math import ceil
from typing import NamedTuple, Union

from ..bipartite import (
    BipartiteGraph,
    canonical_bipartite,
    canonical_bipartite_labeling,
    find_increasing_subgraph,
)
from ..budget import Deadline
from ..const import DEFAULT_MINRANK_BUDGET, SolveStatus
from ..exceptions import ArgumentError
from ..graph import Graph, canonical_labeling, complement, induced_subgraph, relabel
from ..linalg import ExactMatrix, binomial, binomial_sum, require_prime
from ..lspec import FiniteL, LSpec, ModularL, ThresholdL, below, odd_numbers
from ..minrank import (
    MinRankResult,
    bipartite_minrank_gfp,
    minrank_gfp,
    minrank_real_closed_form,
)
from ..set_systems import (
    SetFamily,
    all_k_subsets,
    fermat_rank_cap,
    inclusion_identity_defect,
    product_rank_cap,
    restricted_rank_cap,
)
from ..theta import ThetaResult, theta_bipartite_exact, theta_exact, theta_uniform_exact
from .const import (
    DEFAULT_GRID_L_MAX,
    DEFAULT_S_MAX,
    DEFAULT_X_MAX,
    CorpusKind,
    TheoremId,
    Verdict,
)
from .report import BoundReport

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridCase:
    """A parameter point for the checks that need no graph."""

    label: str
    values: tuple[int, ...]


Case = Union[Graph, BipartiteGraph, GridCase]


CORPUS_KIND: dict[TheoremId, CorpusKind] = {
    TheoremId.CLIQUE_COVER_ROOT: CorpusKind.GRAPHS,
    TheoremId.BIPARTITE_DEGREE_ROOT: CorpusKind.BIPARTITE,
    TheoremId.BIPARTITE_DEGREE_FERMAT_ROOT: CorpusKind.BIPARTITE,
    TheoremId.MINRANK_SUBADDITIVE: CorpusKind.GRAPHS,
    TheoremId.MINRANK_INDUCED: CorpusKind.GRAPHS,
    TheoremId.INCLUSION_IDENTITY: CorpusKind.GRID,
    TheoremId.MODULAR_PRODUCT: CorpusKind.GRAPHS,
    TheoremId.MODULAR_FERMAT: CorpusKind.GRAPHS,
    TheoremId.MODULAR_PRODUCT_ROOT: CorpusKind.GRAPHS,
    TheoremId.MODULAR_FERMAT_ROOT: CorpusKind.GRAPHS,
    TheoremId.FINITE_REAL_ROOT: CorpusKind.GRAPHS,
    TheoremId.BIPARTITE_PRODUCT: CorpusKind.BIPARTITE,
    TheoremId.BIPARTITE_FERMAT: CorpusKind.BIPARTITE,
    TheoremId.BIPARTITE_PRODUCT_ROOT: CorpusKind.BIPARTITE,
    TheoremId.BIPARTITE_FERMAT_ROOT: CorpusKind.BIPARTITE,
    TheoremId.ODD_TIGHTNESS: CorpusKind.BIPARTITE,
    TheoremId.UNIFORM: CorpusKind.GRAPHS,
    TheoremId.RESTRICTED_SIZES: CorpusKind.GRAPHS,
    TheoremId.BINOMIAL_POWER: CorpusKind.GRID,
    TheoremId.INCREASING_SUBGRAPH: CorpusKind.BIPARTITE,
}

_MODULAR_THEOREMS = frozenset(
    {
        TheoremId.BIPARTITE_DEGREE_ROOT,
        TheoremId.BIPARTITE_DEGREE_FERMAT_ROOT,
        TheoremId.MODULAR_PRODUCT,
        TheoremId.MODULAR_FERMAT,
        TheoremId.MODULAR_PRODUCT_ROOT,
        TheoremId.MODULAR_FERMAT_ROOT,
        TheoremId.BIPARTITE_PRODUCT,
        TheoremId.BIPARTITE_FERMAT,
        TheoremId.BIPARTITE_PRODUCT_ROOT,
        TheoremId.BIPARTITE_FERMAT_ROOT,
        TheoremId.UNIFORM,
    }
)
_ROOT_NEEDS_S_ABOVE_ONE = frozenset(
    {
        TheoremId.MODULAR_PRODUCT_ROOT,
        TheoremId.BIPARTITE_PRODUCT_ROOT,
        TheoremId.FINITE_REAL_ROOT,
    }
)
_PRIME_ONLY = frozenset(
    {
        TheoremId.MINRANK_SUBADDITIVE,
        TheoremId.MINRANK_INDUCED,
        TheoremId.INCREASING_SUBGRAPH,
    }
)


@dataclass(frozen=True)
class TheoremParams:
    """Parameters of a verification run."""

    lspec: LSpec | None = None
    p: int | None = None
    k: int | None = None
    sizes: frozenset[int] | None = None
    l_max: int | None = None
    budget: int = DEFAULT_MINRANK_BUDGET
    x_max: int = DEFAULT_X_MAX
    s_max: int = DEFAULT_S_MAX
    grid_l_max: int = DEFAULT_GRID_L_MAX

    @property
    def s(self) -> int:
        if isinstance(self.lspec, ModularL):
            return self.lspec.s
        if isinstance(self.lspec, FiniteL):
            return self.lspec.s
        raise ArgumentError("this check needs a finite or modular L")

    @property
    def prime(self) -> int:
        if self.p is not None:
            return self.p
        if isinstance(self.lspec, ModularL):
            return self.lspec.p
        raise ArgumentError("this check needs a prime p")

    @property
    def modular(self) -> ModularL:
        if not isinstance(self.lspec, ModularL):
            raise ArgumentError("this check needs a modular L (--p and --R)")
        return self.lspec

    def describe(self, theorem: TheoremId) -> str:
        parts: list[str] = []
        if theorem is TheoremId.CLIQUE_COVER_ROOT:
            parts.append(f"k={self.k}")
        elif theorem in _PRIME_ONLY:
            parts.append(f"p={self.prime}")
        elif self.lspec is not None:
            parts.append(f"L={self.lspec.descriptor}")
        if theorem is TheoremId.UNIFORM:
            parts.append(f"k={self.k}")
        if theorem is TheoremId.RESTRICTED_SIZES and self.sizes is not None:
            parts.append("K=" + ",".join(str(k) for k in sorted(self.sizes)))
        if theorem is TheoremId.RESTRICTED_SIZES and isinstance(self.lspec, ModularL):
            parts.append("field=gf")
        elif theorem is TheoremId.RESTRICTED_SIZES:
            parts.append("field=real")
        return ";".join(parts)


def validate_params(theorem: TheoremId, params: TheoremParams) -> TheoremParams:
    """Check ``params`` against the theorem's hypotheses before any solving.

    Returns the params with theorem-implied values filled in.
    """
    if theorem is TheoremId.ODD_TIGHTNESS:
        return TheoremParams(
            lspec=odd_numbers(), p=2, l_max=params.l_max, budget=params.budget
        )
    if theorem is TheoremId.CLIQUE_COVER_ROOT:
        if params.k is None or params.k < 1:
            raise ArgumentError(f"{theorem} needs --k >= 1")
        return params
    if theorem in _PRIME_ONLY:
        prime = params.p if params.p is not None else 2
        if params.p is None and isinstance(params.lspec, ModularL):
            prime = params.lspec.p
        require_prime(prime)
        return TheoremParams(
            lspec=params.lspec,
            p=prime,
            l_max=params.l_max,
            budget=params.budget,
        )
    if theorem is TheoremId.BINOMIAL_POWER:
        if params.x_max < 2 or params.s_max < 2:
            raise ArgumentError(f"{theorem} needs x_max >= 2 and s_max >= 2")
        return params
    if theorem is TheoremId.INCLUSION_IDENTITY:
        if params.grid_l_max < 0:
            raise ArgumentError(f"{theorem} needs l_max >= 0")
        return params
    if theorem in _MODULAR_THEOREMS:
        lspec = params.modular
        if params.p is not None and params.p != lspec.p:
            raise ArgumentError(f"--p {params.p} disagrees with L={lspec.descriptor}")
        if theorem in _ROOT_NEEDS_S_ABOVE_ONE and lspec.s <= 1:
            raise ArgumentError(f"{theorem} needs s > 1, got R of size {lspec.s}")
        if theorem is TheoremId.UNIFORM:
            if params.k is None or params.k < 1:
                raise ArgumentError(f"{theorem} needs --k >= 1")
            if params.k < lspec.s:
                raise ArgumentError(f"{theorem} needs k >= s, got k={params.k} s={lspec.s}")
        return params
    if theorem is TheoremId.FINITE_REAL_ROOT:
        if not isinstance(params.lspec, FiniteL):
            raise ArgumentError(f"{theorem} needs a finite L (--L finite:...)")
        if params.lspec.s <= 1:
            raise ArgumentError(f"{theorem} needs s > 1, got |L| = {params.lspec.s}")
        return params
    if theorem is TheoremId.RESTRICTED_SIZES:
        if not isinstance(params.lspec, (FiniteL, ModularL)):
            raise ArgumentError(f"{theorem} needs a finite or modular L")
        if not params.sizes:
            raise ArgumentError(f"{theorem} needs a nonempty --K")
        s, r = params.s, len(params.sizes)
        if any(k <= s - r for k in params.sizes):
            raise ArgumentError(f"{theorem} needs every k_i > s - r = {s - r}")
        return params
    raise ArgumentError(f"unknown theorem {theorem}")


class Outcome(NamedTuple):
    lhs: int | None
    rhs: int | None
    holds: Verdict
    slack: int | None = None
    note: str = ""


def at_most(lhs: int | None, rhs: int | None) -> Outcome:
    """``lhs <= rhs``; slack is ``rhs - lhs``."""
    if lhs is None or rhs is None:
        return Outcome(lhs, rhs, Verdict.INDETERMINATE)
    slack = rhs - lhs
    return Outcome(lhs, rhs, Verdict.TRUE if slack >= 0 else Verdict.FALSE, slack)


def power_at_least(
    base: int | None,
    exponent: int,
    target: int | None,
    *,
    factor: int = 1,
    estimate: bool = True,
) -> Outcome:
    """``base >= (target / factor) ** (1 / exponent)`` checked as ``base**exponent * factor >= target``.

    With ``estimate`` the row is vacuous unless ``base >= 2`` and
    ``exponent >= 2``, where the binomial-sum estimate applies.
    """
    if base is None or target is None:
        return Outcome(base, target, Verdict.INDETERMINATE)
    slack = base**exponent * factor - target
    if estimate and (base < 2 or exponent < 2):
        return Outcome(base, target, Verdict.VACUOUS, slack, "binomial estimate needs x >= 2, s >= 2")
    return Outcome(base, target, Verdict.TRUE if slack >= 0 else Verdict.FALSE, slack)


def equal(lhs: int | None, rhs: int | None) -> Outcome:
    if lhs is None or rhs is None:
        return Outcome(lhs, rhs, Verdict.INDETERMINATE)
    return Outcome(lhs, rhs, Verdict.TRUE if lhs == rhs else Verdict.FALSE, rhs - lhs)


class SolverCache:
    """Per-process memo of solver results keyed by canonical form.

    Each miss is solved on the canonical graph itself and stored in canonical
    coordinates; witnesses are relabeled onto the caller's graph on the way
    out. Only definite outcomes are stored; a timed-out solve is retried for
    the next isomorphic graph.
    """

    def __init__(self) -> None:
        self._theta: dict[tuple[object, ...], ThetaResult] = {}
        self._minrank: dict[tuple[object, ...], MinRankResult] = {}

    def clear(self) -> None:
        self._theta.clear()
        self._minrank.clear()

    def theta(
        self,
        g: Graph,
        lspec: LSpec,
        l_max: int | None,
        sizes: frozenset[int] | None,
        deadline: Deadline,
    ) -> ThetaResult:
        order = canonical_labeling(g)
        canonical = relabel(g, order)
        key = ("theta", canonical, lspec, l_max, sizes)
        if (result := self._theta.get(key)) is None:
            if sizes is None:
                result = theta_exact(canonical, lspec, l_max, deadline=deadline)
            else:
                result = theta_uniform_exact(canonical, lspec, sizes, l_max, deadline=deadline)
            self._store_theta(key, result)
        return _relabel_theta(result, order)

    def theta_bipartite(
        self, g: BipartiteGraph, lspec: LSpec, l_max: int | None, deadline: Deadline
    ) -> ThetaResult:
        row_order, column_order = canonical_bipartite_labeling(g)
        canonical = canonical_bipartite(g)
        key = ("theta-bip", canonical, lspec, l_max)
        if (result := self._theta.get(key)) is None:
            result = theta_bipartite_exact(canonical, lspec, l_max, deadline=deadline)
            self._store_theta(key, result)
        return _relabel_theta(result, row_order + tuple(g.n1 + y for y in column_order))

    def _store_theta(self, key: tuple[object, ...], result: ThetaResult) -> None:
        if result.status is not SolveStatus.TIMED_OUT:
            self._theta[key] = result

    def minrank(self, g: Graph, p: int, budget: int, deadline: Deadline) -> MinRankResult:
        order = canonical_labeling(g)
        canonical = relabel(g, order)
        key = ("mr", canonical, p, budget)
        if (result := self._minrank.get(key)) is None:
            result = minrank_gfp(canonical, p, budget, deadline=deadline)
            self._store_minrank(key, result)
        return _relabel_minrank(result, order, order)

    def bipartite_minrank(
        self, g: BipartiteGraph, p: int, budget: int, deadline: Deadline
    ) -> MinRankResult:
        row_order, column_order = canonical_bipartite_labeling(g)
        canonical = canonical_bipartite(g)
        key = ("bmr", canonical, p, budget)
        if (result := self._minrank.get(key)) is None:
            result = bipartite_minrank_gfp(canonical, p, budget, deadline=deadline)
            self._store_minrank(key, result)
        return _relabel_minrank(result, row_order, column_order)

    def _store_minrank(self, key: tuple[object, ...], result: MinRankResult) -> None:
        if result.status is not SolveStatus.TIMED_OUT:
            self._minrank[key] = result


def _relabel_theta(result: ThetaResult, order: Sequence[int]) -> ThetaResult:
    """Move a canonical witness back: canonical vertex ``i`` is vertex ``order[i]``."""
    if result.witness is None:
        return result
    family = result.witness.family
    sets = [0] * len(order)
    for i, v in enumerate(order):
        sets[v] = family[i]
    witness = replace(result.witness, family=SetFamily(family.l, tuple(sets)))
    return replace(result, witness=witness)


def _relabel_minrank(
    result: MinRankResult, row_order: Sequence[int], column_order: Sequence[int]
) -> MinRankResult:
    if result.witness is None:
        return result
    matrix = result.witness
    row_at = {v: i for i, v in enumerate(row_order)}
    column_at = {v: j for j, v in enumerate(column_order)}
    witness = ExactMatrix.from_function(
        matrix.nrows,
        matrix.ncols,
        lambda i, j: matrix[row_at[i], column_at[j]],
        matrix.field,
    )
    return replace(result, witness=witness)


_CACHE = SolverCache()


class _Solves:
    """Solver calls for one report row, sharing its deadline and collecting witnesses."""

    def __init__(self, params: TheoremParams, deadline: Deadline, cache: SolverCache) -> None:
        self.params = params
        self.deadline = deadline
        self.cache = cache
        self.witnesses: list[str] = []
        self.notes: list[str] = []

    def _theta_value(self, label: str, result: ThetaResult) -> int | None:
        if result.witness is not None:
            self.witnesses.append(f"{label}\n{result.witness.to_text()}")
        if result.value is None:
            self.notes.append(f"{label} {result}")
        return result.value

    def theta(
        self, label: str, g: Graph, lspec: LSpec, sizes: frozenset[int] | None = None
    ) -> int | None:
        return self._theta_value(
            label, self.cache.theta(g, lspec, self.params.l_max, sizes, self.deadline)
        )

    def theta_bipartite(self, label: str, g: BipartiteGraph, lspec: LSpec) -> int | None:
        return self._theta_value(
            label, self.cache.theta_bipartite(g, lspec, self.params.l_max, self.deadline)
        )

    def _minrank_value(self, label: str, result: MinRankResult) -> int | None:
        if result.witness is not None:
            self.witnesses.append(f"{label}\n{result.witness.to_text()}")
        if result.value is None:
            self.notes.append(f"{label} {result}")
        return result.value

    def minrank(self, label: str, g: Graph, p: int) -> int | None:
        return self._minrank_value(
            label, self.cache.minrank(g, p, self.params.budget, self.deadline)
        )

    def bipartite_minrank(self, label: str, g: BipartiteGraph, p: int) -> int | None:
        return self._minrank_value(
            label, self.cache.bipartite_minrank(g, p, self.params.budget, self.deadline)
        )

    def real_minrank(self, label: str, g: Graph) -> int | None:
        closed = minrank_real_closed_form(g)
        if closed.value is None:
            self.notes.append(f"{label} has no closed form ({closed.graph_class})")
        return closed.value


def _cap(value: int | None, cap: Callable[[int], int]) -> int | None:
    return None if value is None else cap(value)


def _split_edges(g: Graph) -> tuple[Graph, Graph]:
    """Alternate the edges (in graph6 order) between two graphs."""
    return (
        Graph.from_edges(g.n, g.edges[0::2]),
        Graph.from_edges(g.n, g.edges[1::2]),
    )


def _check_graph(theorem: TheoremId, g: Graph, params: TheoremParams, solves: _Solves) -> Outcome:
    co_g = complement(g)
    if theorem is TheoremId.CLIQUE_COVER_ROOT:
        k = params.k or 1
        return power_at_least(
            solves.theta("Θ_L(G^c)", co_g, below(k)),
            k,
            solves.theta("Θ_1(G)", g, ThresholdL()),
            estimate=False,
        )
    if theorem is TheoremId.MINRANK_SUBADDITIVE:
        first, second = _split_edges(g)
        p = params.prime
        parts = (solves.minrank("mr(G1)", first, p), solves.minrank("mr(G2)", second, p))
        total = None if None in parts else sum(v for v in parts if v is not None)
        return at_most(solves.minrank("mr(G)", g, p), total)
    if theorem is TheoremId.MINRANK_INDUCED:
        if g.n == 1:
            return Outcome(0, 0, Verdict.VACUOUS, 0, "no proper induced subgraph")
        p = params.prime
        values = [
            solves.minrank(f"mr(G-{v})", induced_subgraph(g, set(range(g.n)) - {v}), p)
            for v in range(g.n)
        ]
        largest = None if None in values else max(v for v in values if v is not None)
        return at_most(largest, solves.minrank("mr(G)", g, p))
    if theorem is TheoremId.FINITE_REAL_ROOT:
        return power_at_least(
            solves.theta("Θ_L(G^c)", co_g, params.lspec),  # type: ignore[arg-type]
            params.s,
            solves.real_minrank("mr_R(G)", g),
        )
    if theorem is TheoremId.RESTRICTED_SIZES:
        sizes = params.sizes or frozenset()
        lspec = params.lspec
        assert lspec is not None
        if isinstance(lspec, ModularL):
            lhs = solves.minrank("mr_p(G^c)", co_g, lspec.p)
        else:
            lhs = solves.real_minrank("mr_R(G^c)", co_g)
        theta = solves.theta("Θ_L,K(G)", g, lspec, sizes)
        s, r = params.s, len(sizes)
        return at_most(lhs, _cap(theta, lambda x: restricted_rank_cap(x, s, r)))

    lspec = params.modular
    p, s = lspec.p, lspec.s
    if theorem is TheoremId.MODULAR_PRODUCT:
        return at_most(
            solves.minrank("mr_p(G^c)", co_g, p),
            _cap(solves.theta("Θ_L(G)", g, lspec), lambda x: product_rank_cap(x, s)),
        )
    if theorem is TheoremId.MODULAR_FERMAT:
        return at_most(
            solves.minrank("mr_p(G)", g, p),
            _cap(solves.theta("Θ_L(G)", g, lspec), lambda x: fermat_rank_cap(x, p)),
        )
    if theorem is TheoremId.MODULAR_PRODUCT_ROOT:
        return power_at_least(
            solves.theta("Θ_L(G^c)", co_g, lspec), s, solves.minrank("mr_p(G)", g, p)
        )
    if theorem is TheoremId.MODULAR_FERMAT_ROOT:
        return power_at_least(
            solves.theta("Θ_L(G)", g, lspec), p - 1, solves.minrank("mr_p(G)", g, p)
        )
    if theorem is TheoremId.UNIFORM:
        k = params.k or s
        return at_most(
            solves.minrank("mr_p(G^c)", co_g, p),
            _cap(solves.theta("Θ_L,k(G)", g, lspec, frozenset({k})), lambda x: binomial(x, s)),
        )
    raise ArgumentError(f"{theorem} is not checked on graphs")


def _check_bipartite(
    theorem: TheoremId, g: BipartiteGraph, params: TheoremParams, solves: _Solves
) -> Outcome:
    if theorem is TheoremId.INCREASING_SUBGRAPH:
        if g.has_isolated_v1:
            return Outcome(None, None, Verdict.VACUOUS, None, "V1 has an isolated vertex")
        length = len(find_increasing_subgraph(g))
        outcome = at_most(length, solves.bipartite_minrank("bmr_p(G)", g, params.prime))
        guaranteed = ceil(g.n1 / g.max_degree)
        if length < guaranteed:
            return outcome._replace(
                holds=Verdict.FALSE, note=f"greedy found {length} < ceil(n1/Δ) = {guaranteed}"
            )
        return outcome
    if theorem is TheoremId.ODD_TIGHTNESS:
        return equal(
            solves.theta_bipartite("θ_L(G)", g, odd_numbers()),
            solves.bipartite_minrank("bmr_2(G)", g, 2),
        )

    lspec = params.modular
    p, s = lspec.p, lspec.s
    co_g = g.complement()
    if theorem in (TheoremId.BIPARTITE_DEGREE_ROOT, TheoremId.BIPARTITE_DEGREE_FERMAT_ROOT):
        if g.n1 != g.n2 or g.has_isolated_vertex:
            return Outcome(
                None, None, Verdict.VACUOUS, None, "needs n1 = n2 and no isolated vertices"
            )
        if theorem is TheoremId.BIPARTITE_DEGREE_ROOT:
            return power_at_least(
                solves.theta_bipartite("θ_L(G^c)", co_g, lspec),
                s,
                g.n1,
                factor=g.max_degree,
            )
        return power_at_least(
            solves.theta_bipartite("θ_L(G)", g, lspec),
            p - 1,
            g.n1,
            factor=s * g.max_degree,
        )
    if theorem is TheoremId.BIPARTITE_PRODUCT:
        return at_most(
            solves.bipartite_minrank("bmr_p(G^c)", co_g, p),
            _cap(solves.theta_bipartite("θ_L(G)", g, lspec), lambda x: product_rank_cap(x, s)),
        )
    if theorem is TheoremId.BIPARTITE_FERMAT:
        return at_most(
            solves.bipartite_minrank("bmr_p(G)", g, p),
            _cap(solves.theta_bipartite("θ_L(G)", g, lspec), lambda x: fermat_rank_cap(x, p)),
        )
    if theorem is TheoremId.BIPARTITE_PRODUCT_ROOT:
        return power_at_least(
            solves.theta_bipartite("θ_L(G^c)", co_g, lspec),
            s,
            solves.bipartite_minrank("bmr_p(G)", g, p),
        )
    if theorem is TheoremId.BIPARTITE_FERMAT_ROOT:
        return power_at_least(
            solves.theta_bipartite("θ_L(G)", g, lspec),
            p - 1,
            solves.bipartite_minrank("bmr_p(G)", g, p),
        )
    raise ArgumentError(f"{theorem} is not checked on bipartite graphs")


def _check_grid(theorem: TheoremId, case: GridCase) -> Outcome:
    if theorem is TheoremId.BINOMIAL_POWER:
        x, s = case.values
        return at_most(binomial_sum(x, 0, s), x**s)
    if theorem is TheoremId.INCLUSION_IDENTITY:
        l, k, i, t = case.values  # noqa: E741
        return at_most(inclusion_identity_defect(all_k_subsets(l, k), k, i, t), 0)
    raise ArgumentError(f"{theorem} needs a graph corpus")


def grid_cases(theorem: TheoremId, params: TheoremParams) -> Iterator[GridCase]:
    """Parameter points for the graph-free checks, in a fixed order."""
    if theorem is TheoremId.BINOMIAL_POWER:
        for x in range(2, params.x_max + 1):
            for s in range(2, params.s_max + 1):
                yield GridCase(f"x={x};s={s}", (x, s))
    elif theorem is TheoremId.INCLUSION_IDENTITY:
        for l in range(params.grid_l_max + 1):  # noqa: E741
            for k in range(l + 1):
                for i in range(k + 1):
                    for t in range(i + 1):
                        yield GridCase(f"l={l};k={k};i={i};t={t}", (l, k, i, t))
    else:
        raise ArgumentError(f"{theorem} needs a graph corpus")


def evaluate_case(
    theorem: TheoremId,
    case: Case,
    params: TheoremParams,
    budget_ms: int | None = None,
    cache: SolverCache | None = None,
) -> BoundReport:
    """Check one theorem on one corpus item within a wall-clock budget."""
    start = time.perf_counter()
    solves = _Solves(params, Deadline.after_ms(budget_ms), cache or _CACHE)
    description = params.describe(theorem)
    if isinstance(case, GridCase):
        graph_id = ""
        description = ";".join(filter(None, (description, case.label)))
        outcome = _check_grid(theorem, case)
    elif isinstance(case, BipartiteGraph):
        graph_id = case.to_graph().graph6
        description = ";".join(filter(None, (description, f"n1={case.n1};n2={case.n2}")))
        outcome = _check_bipartite(theorem, case, params, solves)
    else:
        graph_id = case.graph6
        outcome = _check_graph(theorem, case, params, solves)
    note = "; ".join(filter(None, (outcome.note, *solves.notes)))
    millis = int((time.perf_counter() - start) * 1000)
    if outcome.holds is Verdict.INDETERMINATE:
        _LOGGER.debug("%s on %r indeterminate: %s", theorem, case, note)
    return BoundReport(
        graph_id=graph_id,
        theorem_id=theorem,
        params=description,
        lhs=outcome.lhs,
        rhs=outcome.rhs,
        holds=outcome.holds,
        slack=outcome.slack,
        millis=millis,
        note=note,
        witnesses=tuple(solves.witnesses),
    )


def check_theorem(
    corpus: Iterable[Case],
    theorem: TheoremId,
    params: TheoremParams,
    budget_ms: int | None = None,
) -> Iterator[BoundReport]:
    """One report per corpus item. Parameters are validated before any solving."""
    checked = validate_params(theorem, params)
    return (evaluate_case(theorem, case, checked, budget_ms) for case in corpus)
