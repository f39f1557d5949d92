import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypereuler.matching import (
    DegreeConstraintProblem,
    Graph,
    has_perfect_matching,
    maximum_matching,
    parity_factor_subgraph,
)


def path(k):
    return Graph(tuple(range(k)), tuple((i, i + 1) for i in range(k - 1)))


def brute_max_matching(g: Graph) -> int:
    for size in range(len(g.nodes) // 2, 0, -1):
        for combo in itertools.combinations(g.edges, size):
            ends = [x for e in combo for x in e]
            if len(ends) == len(set(ends)):
                return size
    return 0


def brute_parity_factor(p: DegreeConstraintProblem) -> bool:
    g = p.graph
    for r in range(len(g.edges) + 1):
        for combo in itertools.combinations(g.edges, r):
            deg = dict.fromkeys(g.nodes, 0)
            for a, b in combo:
                deg[a] += 1
                deg[b] += 1
            if all(p.allows(x, deg[x]) for x in g.nodes):
                return True
    return False


@st.composite
def graphs(draw, max_nodes=8, max_edges=12):
    k = draw(st.integers(1, max_nodes))
    pairs = list(itertools.combinations(range(k), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges)) if pairs else []
    return Graph(tuple(range(k)), tuple(chosen))


@st.composite
def problems(draw):
    g = draw(graphs(max_nodes=7, max_edges=10))
    bounds = {}
    for x in g.nodes:
        d = g.degree(x)
        lo = draw(st.integers(0, d))
        hi = draw(st.integers(lo, d))
        if (hi - lo) % 2:
            hi -= 1
        bounds[x] = (lo, hi)
    return DegreeConstraintProblem(g, bounds)


def test_even_path_and_triangle():
    assert len(maximum_matching(path(4))) == 2
    tri = Graph((0, 1, 2), ((0, 1), (1, 2), (0, 2)))
    assert len(maximum_matching(tri)) == 1
    assert not has_perfect_matching(tri)


def test_blossom_needed():
    # odd cycle with a stem: greedy-free augmentation has to shrink the 5-cycle
    g = Graph(tuple(range(7)), ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (3, 6)))
    assert len(maximum_matching(g)) == 3


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph((0, 1), ((0, 0),))
    with pytest.raises(ValueError):
        Graph((0, 1), ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Graph((0,), ((0, 1),))


def test_four_cycle_two_factor():
    g = Graph((0, 1, 2, 3), ((0, 1), (1, 2), (2, 3), (3, 0)))
    sub = parity_factor_subgraph(DegreeConstraintProblem(g, dict.fromkeys(g.nodes, (2, 2))))
    assert sorted(sub) == sorted(g.edges)


def test_single_edge_degree_cap():
    g = Graph((0, 1), ((0, 1),))
    with pytest.raises(ValueError):
        DegreeConstraintProblem(g, {0: (2, 2), 1: (2, 2)})
    assert parity_factor_subgraph(DegreeConstraintProblem(g, {0: (1, 1), 1: (1, 1)})) == [(0, 1)]
    assert parity_factor_subgraph(DegreeConstraintProblem(g, {0: (1, 1), 1: (0, 0)})) is None


def test_malformed_degree_sets():
    g = path(3)
    with pytest.raises(ValueError):
        DegreeConstraintProblem(g, {0: (0, 1), 1: (0, 2), 2: (0, 0)})
    with pytest.raises(ValueError):
        DegreeConstraintProblem(g, {0: (0, 0), 1: (0, 2)})


@given(graphs())
def test_matching_is_maximum(g):
    m = maximum_matching(g)
    ends = [x for e in m for x in e]
    assert len(ends) == len(set(ends))
    assert set(m) <= set(g.edges)
    assert len(m) == brute_max_matching(g)


@given(problems())
def test_parity_factor_matches_enumeration(p):
    sub = parity_factor_subgraph(p)
    assert (sub is not None) == brute_parity_factor(p)
    if sub is not None:
        deg = dict.fromkeys(p.graph.nodes, 0)
        for a, b in sub:
            deg[a] += 1
            deg[b] += 1
        assert all(p.allows(x, deg[x]) for x in p.graph.nodes)
