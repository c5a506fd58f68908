"""Simple graphs on vertices 0..n-1 stored as adjacency bitsets."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import chain, permutations, product
from typing import TYPE_CHECKING, Any

import networkx as nx
from propcache.api import cached_property
from typing_extensions import Self

from .const import ENUMERATION_MAX_VERTICES, GRAPH6_HEADER, GRAPH6_MAX_VERTICES, GRAPH6_OFFSET
from .exceptions import ArgumentError, Graph6Error, UnsupportedSizeError

if TYPE_CHECKING:
    from .bipartite import BipartiteGraph

_LOGGER = logging.getLogger(__name__)


def _upper_pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 bit order (column-wise upper triangle)."""
    return [(i, j) for j in range(1, n) for i in range(j)]


class Graph:
    """A finite simple graph.

    ``adj[v]`` is a bitmask of the neighbours of ``v``. Instances are
    immutable; every operation returns a new graph.
    """

    def __init__(self, n: int, adj: Sequence[int]) -> None:
        if n < 1:
            raise ArgumentError(f"a graph needs at least one vertex, got n={n}")
        if len(adj) != n:
            raise ArgumentError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ArgumentError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if row >> v & 1:
                raise ArgumentError(f"vertex {v} has a loop")
            for u in iter_bits(row):
                if not adj[u] >> v & 1:
                    raise ArgumentError(f"edge {v}-{u} is not symmetric")
        self._n = n
        self._adj = tuple(adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Self:
        adj = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"invalid edge {u}-{v} for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> Self:
        """Build a graph from networkx, relabelling nodes in sorted order."""
        nodes = sorted(nx_graph.nodes)
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(
            len(nodes), ((index[u], index[v]) for u, v in nx_graph.edges if u != v)
        )

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self._adj)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v`` in graph6 bit order."""
        return tuple((i, j) for i, j in _upper_pairs(self._n) if self.has_edge(i, j))

    @cached_property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    @cached_property
    def graph6(self) -> str:
        return to_graph6(self)

    def union(self, other: Graph) -> Graph:
        """Edge union of two graphs on the same vertex set."""
        if other.n != self._n:
            raise ArgumentError(f"vertex counts differ: {self._n} != {other.n}")
        return Graph(self._n, [a | b for a, b in zip(self._adj, other.adj, strict=True)])

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self._n))
        nx_graph.add_edges_from(self.edges)
        return nx_graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        if self._n <= GRAPH6_MAX_VERTICES:
            return f"Graph(n={self._n}, graph6={self.graph6!r})"
        return f"Graph(n={self._n}, m={self.edge_count})"

    def __getstate__(self) -> dict[str, Any]:
        return {"n": self._n, "adj": self._adj}

    def __setstate__(self, state: dict[str, Any]) -> None:
        self._n = state["n"]
        self._adj = state["adj"]


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parse_graph6(text: str) -> Graph:
    """Decode a short-form graph6 string (n <= 62)."""
    data = text.rstrip("\r\n")
    start = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER) else 0
    if len(data) <= start:
        raise Graph6Error("missing size byte", start)
    size_byte = ord(data[start])
    if size_byte == GRAPH6_OFFSET + GRAPH6_MAX_VERTICES + 1:
        raise UnsupportedSizeError("long-form graph6 (n > 62) is not supported")
    if not GRAPH6_OFFSET <= size_byte < GRAPH6_OFFSET + 64:
        raise Graph6Error(f"invalid size byte {data[start]!r}", start)
    n = size_byte - GRAPH6_OFFSET
    if n == 0:
        raise Graph6Error("graph6 string encodes zero vertices", start)

    pairs = _upper_pairs(n)
    body_start = start + 1
    body = data[body_start:]
    expected = -(-len(pairs) // 6)
    if len(body) < expected:
        raise Graph6Error("truncated adjacency vector", body_start + len(body))
    if len(body) > expected:
        raise Graph6Error("trailing data after adjacency vector", body_start + expected)

    adj = [0] * n
    bit = 0
    for offset, char in enumerate(body, start=body_start):
        value = ord(char) - GRAPH6_OFFSET
        if not 0 <= value < 64:
            raise Graph6Error(f"invalid data byte {char!r}", offset)
        for shift in range(5, -1, -1):
            if not value >> shift & 1:
                bit += 1
                continue
            if bit >= len(pairs):
                raise Graph6Error("non-zero padding bit", offset)
            i, j = pairs[bit]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            bit += 1
    return Graph(n, adj)


def to_graph6(g: Graph) -> str:
    """Encode a graph in short-form graph6."""
    if g.n > GRAPH6_MAX_VERTICES:
        raise UnsupportedSizeError(f"graph6 short form supports n <= 62, got {g.n}")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _upper_pairs(g.n)]
    bits.extend([0] * (-len(bits) % 6))
    chars = [chr(GRAPH6_OFFSET + g.n)]
    for start in range(0, len(bits), 6):
        value = 0
        for b in bits[start : start + 6]:
            value = value << 1 | b
        chars.append(chr(GRAPH6_OFFSET + value))
    return "".join(chars)


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode a newline-delimited graph6 corpus, skipping blanks and ``#`` comments."""
    for line in lines:
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield parse_graph6(stripped)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled 0..|S|-1 in sorted order."""
    keep = sorted(set(vertices))
    if not keep:
        raise ArgumentError("induced subgraph needs a nonempty vertex set")
    if keep[0] < 0 or keep[-1] >= g.n:
        raise ArgumentError(f"vertex set {keep} is out of range for n={g.n}")
    adj = [0] * len(keep)
    for a, u in enumerate(keep):
        for b, v in enumerate(keep):
            if g.has_edge(u, v):
                adj[a] |= 1 << b
    return Graph(len(keep), adj)


def max_degree(g: Graph | BipartiteGraph) -> int:
    return g.max_degree


def _are_twins(g: Graph, u: int, v: int, alive: int) -> bool:
    return (g.adj[u] & alive & ~(1 << v)) == (g.adj[v] & alive & ~(1 << u))


def is_twin_free(g: Graph) -> bool:
    full = (1 << g.n) - 1
    return not any(_are_twins(g, u, v, full) for u, v in _upper_pairs(g.n))


@dataclass(frozen=True)
class TwinReduction:
    """A twin-free induced subgraph and where every original vertex went.

    ``kept`` lists the surviving original vertices in order (vertex ``i`` of
    ``graph`` is ``kept[i]``). ``representative[v]`` is the surviving original
    vertex that ``v`` was merged into.
    """

    graph: Graph
    kept: tuple[int, ...]
    representative: tuple[int, ...]

    @property
    def classes(self) -> dict[int, tuple[int, ...]]:
        groups: dict[int, list[int]] = {v: [] for v in self.kept}
        for v, rep in enumerate(self.representative):
            groups[rep].append(v)
        return {rep: tuple(members) for rep, members in groups.items()}


def twin_reduce(g: Graph) -> TwinReduction:
    """Delete twins until none remain.

    Pairs are scanned in lexicographic order and the higher-indexed vertex of
    the first twin pair is deleted, until a fixpoint is reached.
    """
    alive = list(range(g.n))
    alive_mask = (1 << g.n) - 1
    parent = list(range(g.n))
    while True:
        found = next(
            (
                (u, v)
                for a, u in enumerate(alive)
                for v in alive[a + 1 :]
                if _are_twins(g, u, v, alive_mask)
            ),
            None,
        )
        if found is None:
            break
        u, v = found
        alive.remove(v)
        alive_mask &= ~(1 << v)
        parent[v] = u

    def _root(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    return TwinReduction(
        graph=induced_subgraph(g, alive),
        kept=tuple(alive),
        representative=tuple(_root(v) for v in range(g.n)),
    )


def degeneracy_order(g: Graph) -> list[int]:
    """Vertices ordered so that dense cores come first.

    Repeatedly removes a minimum-degree vertex (lowest index on ties) and
    returns the removal order reversed.
    """
    remaining = (1 << g.n) - 1
    removed: list[int] = []
    while remaining:
        v = min(iter_bits(remaining), key=lambda u: ((g.adj[u] & remaining).bit_count(), u))
        removed.append(v)
        remaining &= ~(1 << v)
    removed.reverse()
    return removed


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is ``order[i]`` of ``g``."""
    position = {old: new for new, old in enumerate(order)}
    return Graph.from_edges(g.n, ((position[u], position[v]) for u, v in g.edges))


def _edge_code(g: Graph, order: Sequence[int]) -> int:
    code = 0
    for i, j in _upper_pairs(g.n):
        code = code << 1 | (g.adj[order[i]] >> order[j] & 1)
    return code


def canonical_labeling(g: Graph) -> tuple[int, ...]:
    """Naive canonical labelling, as the vertex order passed to :func:`relabel`.

    Vertices are grouped by decreasing degree and the labelling with the
    largest graph6 bit code among degree-respecting permutations wins.
    Intended for n <= 7.
    """
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(g.degree(v), []).append(v)
    cells = [by_degree[d] for d in sorted(by_degree, reverse=True)]
    best_code = -1
    best_order: tuple[int, ...] = ()
    for parts in product(*(permutations(cell) for cell in cells)):
        order = tuple(chain.from_iterable(parts))
        code = _edge_code(g, order)
        if code > best_code:
            best_code, best_order = code, order
    return best_order


def canonical_form(g: Graph) -> Graph:
    """Isomorphic graphs map to the identical graph."""
    return relabel(g, canonical_labeling(g))


def enumerate_graphs(n: int, *, dedupe: bool = False) -> Iterator[Graph]:
    """Yield every labeled simple graph on ``n`` vertices exactly once.

    With ``dedupe`` only the first graph of every isomorphism class is
    yielded (by canonical form).
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    if n > ENUMERATION_MAX_VERTICES:
        raise UnsupportedSizeError(
            f"labeled enumeration is limited to n <= {ENUMERATION_MAX_VERTICES}, got {n}"
        )
    pairs = _upper_pairs(n)
    seen: set[Graph] = set()
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        g = Graph(n, adj)
        if dedupe:
            canonical = canonical_form(g)
            if canonical in seen:
                continue
            seen.add(canonical)
        yield g
    if dedupe:
        _LOGGER.debug("n=%s: %s isomorphism classes", n, len(seen))


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ArgumentError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, ((0, v) for v in range(1, leaves + 1)))


def complete_bipartite_graph(m: int, n: int) -> Graph:
    return Graph.from_edges(m + n, ((u, m + v) for u in range(m) for v in range(n)))
