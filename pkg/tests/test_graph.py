import pickle

import networkx as nx
import pytest
from hypothesis import given

from tests.common import graphs, load_fixture
from thetakit.exceptions import ArgumentError, Graph6Error, UnsupportedSizeError
from thetakit.graph import (
    Graph,
    canonical_form,
    canonical_labeling,
    complement,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    degeneracy_order,
    empty_graph,
    enumerate_graphs,
    induced_subgraph,
    is_twin_free,
    iter_graph6_lines,
    max_degree,
    parse_graph6,
    path_graph,
    relabel,
    star_graph,
    to_graph6,
    twin_reduce,
)


def test_parse_graph6_small_examples():
    assert parse_graph6("A_") == complete_graph(2)
    assert parse_graph6("Bw") == complete_graph(3)
    assert parse_graph6("A?") == empty_graph(2)
    assert parse_graph6("@") == empty_graph(1)


def test_parse_graph6_accepts_header_and_newline():
    assert parse_graph6(">>graph6<<Bw\n") == complete_graph(3)


def test_graph6_column_wise_bit_order():
    # bits for (0,1), (0,2), (1,2): only 0-2 set
    g = parse_graph6("BO")
    assert g.edges == ((0, 2),)
    assert to_graph6(g) == "BO"


@given(graphs(max_n=7))
def test_graph6_agrees_with_networkx(g):
    encoded = nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()
    assert g.graph6 == encoded
    assert parse_graph6(encoded) == g


@pytest.mark.parametrize(
    ("text", "offset"),
    [
        ("", 0),
        ("?", 0),
        ("B", 1),
        ("Bww", 2),
        ("B\x01", 1),
        ("A`", 1),
    ],
)
def test_parse_graph6_errors_report_offset(text, offset):
    with pytest.raises(Graph6Error) as exc_info:
        parse_graph6(text)
    assert exc_info.value.offset == offset
    assert f"byte offset {offset}" in str(exc_info.value)


def test_parse_graph6_long_form_unsupported():
    with pytest.raises(UnsupportedSizeError):
        parse_graph6("~?@?")


def test_graph_rejects_invalid_adjacency():
    with pytest.raises(ArgumentError, match="loop"):
        Graph(2, [0b01, 0])
    with pytest.raises(ArgumentError, match="not symmetric"):
        Graph(2, [0b10, 0])
    with pytest.raises(ArgumentError):
        Graph(0, [])
    with pytest.raises(ArgumentError):
        Graph.from_edges(3, [(0, 3)])


def test_graph_accessors():
    g = path_graph(4)
    assert g.n == 4
    assert g.edges == ((0, 1), (1, 2), (2, 3))
    assert g.edge_count == 3
    assert g.neighbors(1) == [0, 2]
    assert g.degrees == (1, 2, 2, 1)
    assert g.max_degree == 2
    assert max_degree(g) == 2
    assert max_degree(empty_graph(3)) == 0
    assert repr(g) == "Graph(n=4, graph6='Ch')"


def test_graph_pickles_and_hashes():
    g = cycle_graph(5)
    restored = pickle.loads(pickle.dumps(g))
    assert restored == g
    assert hash(restored) == hash(g)
    assert len({g, restored, path_graph(5)}) == 2


def test_union_requires_same_vertex_set():
    g = Graph.from_edges(3, [(0, 1)])
    h = Graph.from_edges(3, [(1, 2)])
    assert g.union(h) == path_graph(3)
    with pytest.raises(ArgumentError):
        g.union(path_graph(4))


def test_networkx_round_trip_relabels_sorted():
    nx_graph = nx.Graph([("b", "c"), ("a", "b")])
    assert Graph.from_networkx(nx_graph) == path_graph(3)


@given(graphs())
def test_complement_is_involution(g):
    c = complement(g)
    assert complement(c) == g
    assert c.edge_count + g.edge_count == g.n * (g.n - 1) // 2


def test_induced_subgraph_relabels_in_sorted_order():
    g = cycle_graph(5)
    sub = induced_subgraph(g, [4, 0, 1])
    assert sub == Graph.from_edges(3, [(0, 1), (0, 2)])
    with pytest.raises(ArgumentError):
        induced_subgraph(g, [])


def test_twin_reduce_complete_graph_collapses():
    reduction = twin_reduce(complete_graph(4))
    assert reduction.graph.n == 1
    assert reduction.kept == (0,)
    assert reduction.representative == (0, 0, 0, 0)
    assert reduction.classes == {0: (0, 1, 2, 3)}


def test_twin_reduce_path_of_four_is_twin_free():
    reduction = twin_reduce(path_graph(4))
    assert reduction.graph == path_graph(4)
    assert is_twin_free(path_graph(4))


def test_twin_reduce_star_keeps_centre_and_one_leaf():
    reduction = twin_reduce(star_graph(3))
    assert reduction.kept == (0, 1)
    assert reduction.representative == (0, 1, 1, 1)


@given(graphs(max_n=6))
def test_twin_reduce_reaches_fixpoint(g):
    reduction = twin_reduce(g)
    assert is_twin_free(reduction.graph)
    assert induced_subgraph(g, reduction.kept) == reduction.graph
    for v, rep in enumerate(reduction.representative):
        assert rep in reduction.kept
        assert v == rep or v not in reduction.kept


def test_degeneracy_order_is_permutation():
    order = degeneracy_order(star_graph(3))
    assert sorted(order) == [0, 1, 2, 3]


@given(graphs(max_n=5))
def test_canonical_form_respects_isomorphism(g):
    canonical = canonical_form(g)
    assert nx.is_isomorphic(canonical.to_networkx(), g.to_networkx())
    reversed_labels = relabel(g, list(reversed(range(g.n))))
    assert canonical_form(reversed_labels) == canonical


@given(graphs(max_n=5))
def test_canonical_labeling_is_a_permutation_onto_the_canonical_form(g):
    order = canonical_labeling(g)
    assert sorted(order) == list(range(g.n))
    assert relabel(g, order) == canonical_form(g)


@pytest.mark.parametrize(("n", "count"), [(1, 1), (2, 2), (3, 4), (4, 11)])
def test_enumerate_graphs_dedupe_counts(n, count):
    assert sum(1 for _ in enumerate_graphs(n, dedupe=True)) == count


def test_enumerate_graphs_labeled_count():
    graphs_on_four = list(enumerate_graphs(4))
    assert len(graphs_on_four) == 64
    assert len(set(graphs_on_four)) == 64


def test_enumerate_graphs_limits():
    with pytest.raises(ArgumentError):
        list(enumerate_graphs(0))
    with pytest.raises(UnsupportedSizeError):
        list(enumerate_graphs(8))


def test_named_constructors():
    assert cycle_graph(4).degrees == (2, 2, 2, 2)
    assert star_graph(3).degrees == (3, 1, 1, 1)
    assert nx.is_isomorphic(complete_bipartite_graph(2, 2).to_networkx(), cycle_graph(4).to_networkx())
    with pytest.raises(ArgumentError):
        cycle_graph(2)


def test_iter_graph6_lines_skips_comments():
    corpus = list(iter_graph6_lines(load_fixture("small_graphs.g6").splitlines()))
    assert [g.graph6 for g in corpus] == ["@", "A_", "A?", "Bw", "BW", "Bg"]
