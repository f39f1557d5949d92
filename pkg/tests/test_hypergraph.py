import pytest
from hypothesis import given

from hypereuler.hypergraph import (
    EmptyEdgeError,
    Hypergraph,
    HypergraphError,
    ParseError,
    VertexRangeError,
    connected_components,
    delete_vertices,
    incidence_graph,
    induced_subhypergraph,
    is_connected,
    parse_expectations,
    parse_hypergraph,
    remove_edges,
    serialize_hypergraph,
)

from conftest import components_by_bfs, hypergraphs

TRIANGLE = "hg 3 3\n1 2\n2 3\n1 3\n"


def test_parse_triangle():
    h = parse_hypergraph(TRIANGLE)
    assert h.n == 3 and h.m == 3
    assert h.edges == (frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 3}))
    assert h.degrees() == {1: 2, 2: 2, 3: 2}


def test_parse_comments_and_expectations():
    text = "# expect family=YES tour=NO\n# made by hand\nhg 2 2\n1 2\n2 1\n"
    h = parse_hypergraph(text)
    assert h.edges == (frozenset({1, 2}),) * 2
    assert parse_expectations(text) == {"family": "YES", "tour": "NO"}


def test_parse_empty_edge():
    with pytest.raises(EmptyEdgeError) as err:
        parse_hypergraph("hg 3 2\n1 2\n\n")
    assert err.value.line == 3


def test_parse_vertex_out_of_range():
    with pytest.raises(VertexRangeError) as err:
        parse_hypergraph("hg 3 1\n1 4\n")
    assert (err.value.line, err.value.column) == (2, 3)


@pytest.mark.parametrize(
    "text",
    ["", "graph 3 1\n1 2\n", "hg 3\n", "hg 3 2\n1 2\n", "hg 3 1\n1 2\n2 3\n", "hg 3 1\n1 x\n", "hg 3 1\n1 1\n", "hg -1 0\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_hypergraph(text)


def test_zero_vertices_allowed():
    h = parse_hypergraph("hg 0 0\n")
    assert h.n == 0 and h.m == 0


def test_invalid_construction():
    with pytest.raises(HypergraphError):
        Hypergraph((1, 2), (frozenset(),))
    with pytest.raises(HypergraphError):
        Hypergraph((1, 2), (frozenset({3}),))
    with pytest.raises(HypergraphError):
        Hypergraph((2, 1), ())


@given(hypergraphs())
def test_serialize_round_trip(h):
    assert parse_hypergraph(serialize_hypergraph(h)) == h


def test_serialize_rejects_nonstandard_labels():
    h = induced_subhypergraph(parse_hypergraph(TRIANGLE), {2, 3})
    with pytest.raises(HypergraphError):
        serialize_hypergraph(h)


def test_incidence_graph():
    g = incidence_graph(parse_hypergraph("hg 3 2\n1 2 3\n2 3\n"))
    assert g.flags == frozenset({(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)})
    assert g.node_count == 5
    assert g.degree((1, 1)) == 3 and g.degree((0, 2)) == 2
    assert g.adjacency()[(0, 2)] == [(1, 1), (1, 2)]


@given(hypergraphs())
def test_components_match_bfs(h):
    comps = connected_components(h)
    assert len(comps) == components_by_bfs(h)
    assert set().union(*(c.vertices for c in comps)) == set(h.vertices) if comps else h.n == 0
    assert sorted(j for c in comps for j in c.edges) == list(h.edge_indices())


def test_induced_and_deletion_keep_origins():
    h = parse_hypergraph("hg 4 3\n1 2\n2 3 4\n4 1\n")
    sub = delete_vertices(h, [4])
    assert sub.vertices == (1, 2, 3)
    assert sub.edges == (frozenset({1, 2}), frozenset({2, 3}), frozenset({1}))
    assert [sub.parent_index(j) for j in sub.edge_indices()] == [1, 2, 3]
    sub2 = induced_subhypergraph(h, {1, 2})
    assert [sub2.parent_index(j) for j in sub2.edge_indices()] == [1, 2, 3]
    pruned = remove_edges(h, [2])
    assert pruned.edges == (frozenset({1, 2}), frozenset({1, 4}))
    assert pruned.parent_index(2) == 3
    assert not is_connected(pruned)


def test_key_ignores_origin():
    h = parse_hypergraph(TRIANGLE)
    same = Hypergraph(h.vertices, h.edges, (7, 8, 9))
    assert h == same and h.key() == same.key()


def test_star_and_neighbourhood():
    h = parse_hypergraph("hg 4 3\n1 2\n2 3 4\n4 1\n")
    assert h.star(2) == (1, 2)
    assert h.neighbourhood(1) == frozenset({2, 4})
    assert h.flag_count() == 7
