from __future__ import annotations

import os
from collections.abc import Sequence

from hypothesis import strategies as st
from sympy import GF as SympyGF
from sympy import QQ as SympyQQ
from sympy.polys.matrices import DomainMatrix

from thetakit.bipartite import BipartiteGraph
from thetakit.graph import Graph


def fixture_path(filename: str) -> str:
    return os.path.join(os.path.dirname(__file__), "fixtures", filename)


def load_fixture(filename: str) -> str:
    """Load a fixture."""
    with open(fixture_path(filename)) as fptr:
        return fptr.read()


def sympy_rank(rows: Sequence[Sequence[int]], p: int | None = None) -> int:
    """Rank from sympy, used as an independent oracle."""
    if not rows or not rows[0]:
        return 0
    domain = SympyQQ if p is None else SympyGF(p)
    matrix = DomainMatrix(
        [[domain(int(value)) for value in row] for row in rows],
        (len(rows), len(rows[0])),
        domain,
    )
    return matrix.rank()


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 1, max_n: int = 5) -> Graph:
    """Random labeled graphs on a few vertices."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (pair for pair, keep in zip(pairs, chosen) if keep))


@st.composite
def bipartite_graphs(draw: st.DrawFn, max_part: int = 4) -> BipartiteGraph:
    n1 = draw(st.integers(1, max_part))
    n2 = draw(st.integers(1, max_part))
    rows = draw(st.lists(st.integers(0, (1 << n2) - 1), min_size=n1, max_size=n1))
    return BipartiteGraph(n1, n2, rows)


def int_matrices(max_rows: int = 4, max_cols: int = 4, low: int = -3, high: int = 3) -> st.SearchStrategy[list[list[int]]]:
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(low, high), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )
