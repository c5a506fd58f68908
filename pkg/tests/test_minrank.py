from unittest import mock

import pytest
from hypothesis import given, settings

from tests.common import bipartite_graphs, graphs, sympy_rank
from thetakit.bipartite import BipartiteGraph
from thetakit.budget import Deadline
from thetakit.const import GraphClass, SolveStatus
from thetakit.exceptions import ArgumentError
from thetakit.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)
from thetakit.linalg import GF, QQ, ExactMatrix
from thetakit.minrank import (
    bipartite_minrank_gfp,
    classify_graph,
    minrank_gfp,
    minrank_real_closed_form,
    minrank_real_upper_bound,
)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_minrank_complete_and_empty(p):
    assert minrank_gfp(complete_graph(4), p).value == 1
    empty = minrank_gfp(empty_graph(3), p)
    assert empty.value == 0
    assert empty.witness == ExactMatrix.zeros(3, 3, GF(p))


def test_minrank_path_of_three_over_gf2():
    result = minrank_gfp(path_graph(3), 2)
    assert result.value == 2
    assert result.status is SolveStatus.SOLVED
    assert str(result) == "2"
    witness = result.witness
    assert witness is not None
    assert witness.field == GF(2)
    assert witness.is_symmetric
    assert witness.rank == 2


@pytest.mark.parametrize("p", [3, 5])
def test_minrank_paths_over_odd_fields(p):
    assert minrank_gfp(path_graph(3), p).value == 2
    assert minrank_gfp(path_graph(4), p).value == 3


def test_minrank_clique_plus_isolated_vertex():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2)])
    result = minrank_gfp(g, 3)
    assert result.value == 1
    assert result.witness.rows[3] == (0, 0, 0, 0)


def test_minrank_budget_gives_unknown():
    result = minrank_gfp(cycle_graph(5), 3, budget=5)
    assert result.value is None
    assert result.witness is None
    assert result.status is SolveStatus.BUDGET
    assert str(result).startswith("unknown (budget after")
    with pytest.raises(ArgumentError):
        minrank_gfp(cycle_graph(5), 3, budget=0)


def test_minrank_deadline_gives_unknown():
    deadline = mock.create_autospec(Deadline, instance=True)
    deadline.expired.return_value = True
    result = minrank_gfp(path_graph(4), 3, deadline=deadline)
    assert result.value is None
    assert result.status is SolveStatus.TIMED_OUT


def test_minrank_rejects_non_prime():
    with pytest.raises(ArgumentError):
        minrank_gfp(path_graph(3), 4)


@settings(max_examples=30)
@given(graphs(max_n=4))
def test_minrank_gf2_witness_matches_sympy(g):
    result = minrank_gfp(g, 2)
    assert result.value is not None
    assert result.value <= g.n
    assert sympy_rank(result.witness.rows, 2) == result.value
    assert (result.value == 0) == (g.edge_count == 0)


def test_real_closed_forms():
    assert minrank_real_closed_form(path_graph(4)).value == 3
    assert minrank_real_closed_form(complete_graph(5)).value == 1
    assert minrank_real_closed_form(cycle_graph(5)).value == 3
    assert minrank_real_closed_form(empty_graph(3)).value == 0
    assert minrank_real_closed_form(star_graph(3)).value == 2
    assert minrank_real_closed_form(complete_bipartite_graph(2, 3)).value == 2
    unsupported = minrank_real_closed_form(Graph.from_edges(3, [(0, 1)]))
    assert not unsupported.known
    assert str(unsupported) == "unsupported (unsupported)"


@pytest.mark.parametrize(
    ("g", "graph_class"),
    [
        (path_graph(5), GraphClass.PATH),
        (cycle_graph(4), GraphClass.CYCLE),
        (complete_graph(2), GraphClass.COMPLETE),
        (star_graph(4), GraphClass.STAR),
        (complete_bipartite_graph(3, 3), GraphClass.COMPLETE_BIPARTITE),
        (Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), GraphClass.UNSUPPORTED),
    ],
)
def test_classify_graph(g, graph_class):
    assert classify_graph(g) is graph_class


def test_real_upper_bound_matches_closed_forms():
    p4 = minrank_real_upper_bound(path_graph(4))
    assert p4.value == 3
    assert p4.witness.field == QQ
    c5 = minrank_real_upper_bound(cycle_graph(5), stop_at=3)
    assert c5.value == 3
    assert sympy_rank(c5.witness.rows) == 3
    assert minrank_real_upper_bound(empty_graph(2)).value == 0
    with pytest.raises(ArgumentError):
        minrank_real_upper_bound(path_graph(3), entries=(0,))


def test_minrank_gf_large_prime_agrees_with_real_path():
    assert minrank_gfp(path_graph(4), 5).value == minrank_real_closed_form(path_graph(4)).value


@pytest.mark.parametrize("p", [2, 3])
def test_bipartite_minrank_examples(p):
    matching = BipartiteGraph.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert bipartite_minrank_gfp(matching, p).value == 3
    full = BipartiteGraph.from_matrix([[1, 1], [1, 1]])
    assert bipartite_minrank_gfp(full, p).value == 1
    empty = BipartiteGraph.from_matrix([[0, 0]])
    assert bipartite_minrank_gfp(empty, p).value == 0


def test_bipartite_minrank_depends_on_field():
    g = BipartiteGraph.from_matrix([[1, 1, 1], [1, 1, 0], [1, 0, 1]])
    assert bipartite_minrank_gfp(g, 2).value == 3
    assert bipartite_minrank_gfp(g, 3).value == 2


@settings(max_examples=30)
@given(bipartite_graphs(max_part=3))
def test_bipartite_minrank_witness_pattern(g):
    result = bipartite_minrank_gfp(g, 3)
    assert result.value is not None
    assert result.witness.nonzero_pattern() == g.rows
    assert result.value <= min(g.n1, g.n2)


@settings(max_examples=30)
@given(bipartite_graphs(max_part=3))
def test_minrank_of_bipartite_graph_within_twice_its_bipartite_minrank(g):
    for p in (2, 3):
        bmr = bipartite_minrank_gfp(g, p).value
        mr = minrank_gfp(g.to_graph(), p).value
        assert bmr is not None and mr is not None
        assert bmr <= mr <= 2 * bmr
