"""Exact L-intersection numbers by incremental-universe backtracking."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from math import ceil, log2

from .bipartite import BipartiteGraph, twin_reduce_bipartite
from .budget import Deadline, as_deadline
from .const import UNIVERSE_CAP, RepresentationMode, SolveStatus
from .exceptions import ArgumentError, InvariantViolation
from .graph import Graph, degeneracy_order, twin_reduce
from .lspec import LSpec
from .set_systems import SetFamily

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Representation:
    """A set family realising a graph under an intersection rule."""

    family: SetFamily
    lspec: LSpec
    mode: RepresentationMode = RepresentationMode.FULL
    sizes: frozenset[int] | None = None
    n1: int | None = None

    @property
    def universe_size(self) -> int:
        return self.family.l

    def to_text(self) -> str:
        return f"{self.lspec.descriptor}\n{self.family.to_text()}"


@dataclass(frozen=True)
class ThetaResult:
    """Outcome of an exact search.

    ``value`` is ``None`` when the search stopped without an answer; every
    universe size below ``lower_bound`` has then been ruled out.
    """

    value: int | None
    witness: Representation | None
    lower_bound: int
    l_max: int
    status: SolveStatus
    nodes: int = 0

    @property
    def known(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return f"unknown (l_max={self.l_max}, {self.status})"


def verify_representation(g: Graph, family: SetFamily, lspec: LSpec) -> bool:
    """Whether ``family`` realises ``g``: ``uv`` is an edge iff ``|A_u & A_v|`` is in ``L``."""
    if len(family) != g.n:
        raise ArgumentError(f"family has {len(family)} sets for {g.n} vertices")
    return all(
        g.has_edge(u, v) == lspec.contains((family[u] & family[v]).bit_count())
        for v in range(g.n)
        for u in range(v)
    )


def verify_bipartite_representation(
    g: BipartiteGraph, family: SetFamily, lspec: LSpec
) -> bool:
    """Like :func:`verify_representation`, checking only pairs across the parts.

    The first ``n1`` sets belong to ``V1``, the rest to ``V2``.
    """
    if len(family) != g.n1 + g.n2:
        raise ArgumentError(f"family has {len(family)} sets for {g.n1 + g.n2} vertices")
    return all(
        g.has_edge(x, y) == lspec.contains((family[x] & family[g.n1 + y]).bit_count())
        for x in range(g.n1)
        for y in range(g.n2)
    )


def default_l_max(n: int, lspec: LSpec) -> int:
    return max(1, min(UNIVERSE_CAP, n * (n - 1) // 2 + lspec.max_finite))


def _log2_ceil(count: int) -> int:
    return ceil(log2(count)) if count > 1 else 0


class _Search:
    """Depth-first assignment of sets to vertices in a fixed order.

    ``checks[i]`` lists ``(j, wanted)`` for earlier positions ``j`` whose pair
    with position ``i`` is constrained. New elements are always introduced in
    increasing order, which removes relabelings of the universe.
    """

    def __init__(
        self,
        checks: Sequence[Sequence[tuple[int, bool]]],
        sizes: frozenset[int] | None,
        deadline: Deadline,
    ) -> None:
        self._checks = checks
        self._sizes = sizes
        self._deadline = deadline
        self._assigned = [0] * len(checks)
        self._allowed: tuple[bool, ...] = ()
        self._l = 0
        self.nodes = 0
        self.timed_out = False

    def run(self, l: int, allowed: tuple[bool, ...]) -> list[int] | None:  # noqa: E741
        self._l = l
        self._allowed = allowed
        return list(self._assigned) if self._extend(0, 0) else None

    def _extend(self, position: int, used: int) -> bool:
        if position == len(self._checks):
            return True
        if self._deadline.expired():
            self.timed_out = True
            return False
        checks = self._checks[position]
        allowed = self._allowed
        assigned = self._assigned
        for new in range(self._l - used + 1):
            fresh = ((1 << new) - 1) << used
            for old in range(1 << used):
                candidate = old | fresh
                if self._sizes is not None and candidate.bit_count() not in self._sizes:
                    continue
                self.nodes += 1
                if all(
                    allowed[(candidate & assigned[j]).bit_count()] == wanted
                    for j, wanted in checks
                ):
                    assigned[position] = candidate
                    if self._extend(position + 1, used + new):
                        return True
                if self.timed_out:
                    return False
        return False


def _solve(
    order: Sequence[int],
    wanted: Callable[[int, int], bool | None],
    lspec: LSpec,
    lower: int,
    l_max: int,
    sizes: frozenset[int] | None,
    deadline: Deadline,
) -> tuple[ThetaResult, list[int] | None]:
    position = {v: i for i, v in enumerate(order)}
    checks: list[list[tuple[int, bool]]] = []
    for i, v in enumerate(order):
        row = []
        for u in order[:i]:
            edge = wanted(min(u, v), max(u, v))
            if edge is not None:
                row.append((position[u], edge))
        checks.append(row)

    search = _Search(checks, sizes, deadline)
    for l in range(lower, l_max + 1):  # noqa: E741
        assignment = search.run(l, lspec.table(l))
        if search.timed_out:
            _LOGGER.debug("timed out at l=%s after %s nodes", l, search.nodes)
            return ThetaResult(None, None, l, l_max, SolveStatus.TIMED_OUT, search.nodes), None
        if assignment is not None:
            _LOGGER.debug("found a representation at l=%s after %s nodes", l, search.nodes)
            by_vertex = [0] * len(order)
            for i, v in enumerate(order):
                by_vertex[v] = assignment[i]
            return ThetaResult(l, None, l, l_max, SolveStatus.SOLVED, search.nodes), by_vertex
        _LOGGER.debug("no representation with l=%s", l)
    return (
        ThetaResult(None, None, max(lower, l_max + 1), l_max, SolveStatus.EXHAUSTED, search.nodes),
        None,
    )


def _resolve_l_max(l_max: int | None, n: int, lspec: LSpec) -> int:
    if l_max is None:
        return default_l_max(n, lspec)
    if l_max < 1:
        raise ArgumentError(f"l_max must be at least 1, got {l_max}")
    return l_max


def _attach(result: ThetaResult, witness: Representation) -> ThetaResult:
    return ThetaResult(
        result.value, witness, result.lower_bound, result.l_max, result.status, result.nodes
    )


def _full_graph_search(
    g: Graph,
    lspec: LSpec,
    l_max: int | None,
    sizes: frozenset[int] | None,
    deadline: Deadline | None,
) -> ThetaResult:
    limit = _resolve_l_max(l_max, g.n, lspec)
    lower = _log2_ceil(twin_reduce(g).graph.n)
    if sizes is not None:
        lower = max(lower, min(sizes))
    result, sets = _solve(
        degeneracy_order(g),
        g.has_edge,
        lspec,
        lower,
        limit,
        sizes,
        as_deadline(deadline),
    )
    if sets is None:
        return result
    family = SetFamily(result.lower_bound, tuple(sets))
    if not verify_representation(g, family, lspec):
        raise InvariantViolation(
            f"search returned an invalid representation of {g!r} for {lspec}",
            details={"family": family.to_text()},
        )
    if sizes is None:
        mode = RepresentationMode.FULL
    elif len(sizes) == 1:
        mode = RepresentationMode.UNIFORM
    else:
        mode = RepresentationMode.SIZES
    return _attach(result, Representation(family, lspec, mode, sizes))


def theta_exact(
    g: Graph, lspec: LSpec, l_max: int | None = None, *, deadline: Deadline | None = None
) -> ThetaResult:
    """Smallest universe size of an ``L``-intersection representation of ``g``."""
    return _full_graph_search(g, lspec, l_max, None, deadline)


def theta_uniform_exact(
    g: Graph,
    lspec: LSpec,
    sizes: Iterable[int],
    l_max: int | None = None,
    *,
    deadline: Deadline | None = None,
) -> ThetaResult:
    """As :func:`theta_exact` with every set size restricted to ``sizes``."""
    allowed_sizes = frozenset(sizes)
    if not allowed_sizes:
        raise ArgumentError("the set of allowed sizes must be nonempty")
    if min(allowed_sizes) < 0:
        raise ArgumentError("set sizes must be non-negative")
    limit = _resolve_l_max(l_max, g.n, lspec)
    if l_max is None:
        limit = min(UNIVERSE_CAP, max(limit, max(allowed_sizes)))
    if max(allowed_sizes) > limit:
        raise ArgumentError(f"set size {max(allowed_sizes)} exceeds l_max={limit}")
    return _full_graph_search(g, lspec, limit, allowed_sizes, deadline)


def _interleaved_order(n1: int, n2: int) -> list[int]:
    order: list[int] = []
    for i in range(max(n1, n2)):
        if i < n1:
            order.append(i)
        if i < n2:
            order.append(n1 + i)
    return order


def theta_bipartite_exact(
    g: BipartiteGraph,
    lspec: LSpec,
    l_max: int | None = None,
    *,
    deadline: Deadline | None = None,
) -> ThetaResult:
    """Bipartite version: only pairs across the parts are constrained.

    The witness family lists the ``V1`` sets first.
    """
    n1 = g.n1
    limit = _resolve_l_max(l_max, n1 + g.n2, lspec)
    reduced = twin_reduce_bipartite(g)
    lower = _log2_ceil(max(len(reduced.kept_v1), len(reduced.kept_v2)))

    def wanted(u: int, v: int) -> bool | None:
        if u < n1 <= v:
            return g.has_edge(u, v - n1)
        return None

    result, sets = _solve(
        _interleaved_order(n1, g.n2),
        wanted,
        lspec,
        lower,
        limit,
        None,
        as_deadline(deadline),
    )
    if sets is None:
        return result
    family = SetFamily(result.lower_bound, tuple(sets))
    if not verify_bipartite_representation(g, family, lspec):
        raise InvariantViolation(
            f"search returned an invalid representation of {g!r} for {lspec}",
            details={"family": family.to_text()},
        )
    return _attach(
        result, Representation(family, lspec, RepresentationMode.BIPARTITE, n1=n1)
    )
