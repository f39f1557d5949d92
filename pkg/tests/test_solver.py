import pytest
from hypothesis import given, settings

from hypereuler.hypergraph import Hypergraph
from hypereuler.oracle import brute_force_all, verify_witness
from hypereuler.solver import (
    Decision,
    DisconnectedError,
    Verdict,
    check_condition_iv,
    check_necessary_conditions,
    decide_any,
    decide_direct,
    decide_euler_family,
    decide_euler_tour,
    decide_spanning_euler_family,
    decide_spanning_euler_tour,
    search_tour_flags,
)
from hypereuler.trails import ClosedTrail

from conftest import condition_iv_by_definition, hypergraphs

H = Hypergraph.from_edges
TRIANGLE = H(3, [{1, 2}, {2, 3}, {1, 3}])


def test_necessary_condition_examples():
    assert check_necessary_conditions(H(3, [{1, 2}, {2, 3}])).failed == "ii"
    assert check_necessary_conditions(H(3, [{1, 2, 3}, {1, 2, 3}])).failed == "iii"
    assert check_necessary_conditions(TRIANGLE).passed
    assert check_necessary_conditions(H(2, [{1}, {1, 2}])).failed == "i"
    nc = check_necessary_conditions(H(3, [{1, 2}, {2, 3}]))
    assert nc.reason == "necessary condition (ii)"


def test_condition_iv_failure():
    # three degree-2 vertices in the same two edges, padded so (i)-(iii) hold
    h = H(4, [{1, 2, 3}, {1, 2, 3, 4}, {4, 1}, {4, 2}])
    assert check_condition_iv(h) is None or not condition_iv_by_definition(h)
    h = H(3, [{1, 2, 3}, {1, 2, 3}, {1, 2}])
    assert condition_iv_by_definition(h) == (check_condition_iv(h) is None)


@settings(max_examples=300)
@given(hypergraphs(max_n=5, max_m=6, min_size=1))
def test_condition_iv_is_exact(h):
    assert (check_condition_iv(h) is None) == condition_iv_by_definition(h)


def test_spec_examples():
    doubled = H(2, [{1, 2}, {1, 2}])
    d = decide_spanning_euler_family(doubled)
    assert d and d.witness.trails == (ClosedTrail((1, 2), (1, 2)),)
    d = decide_spanning_euler_family(H(4, [{1, 2}, {2, 3}, {1, 3, 4}]))
    assert not d and d.reason == "necessary condition (ii)"
    pendant_in_edge = H(4, [{1, 2, 4}, {2, 3}, {1, 3}])
    assert not decide_spanning_euler_family(pendant_in_edge)
    assert decide_euler_family(pendant_in_edge)
    assert not decide_euler_family(H(2, [{1, 2}]))
    t = decide_spanning_euler_tour(TRIANGLE)
    assert t and t.witness.trails == (ClosedTrail((1, 2, 3), (1, 2, 3)),)
    assert decide_spanning_euler_tour(doubled)


def test_decision_invariants():
    with pytest.raises(ValueError):
        Decision(Verdict.YES)
    with pytest.raises(ValueError):
        Decision(Verdict.NO, decide_euler_family(TRIANGLE).witness)
    assert not Decision.no("x")


def test_disconnected_input_rejected():
    two = H(4, [{1, 2}, {1, 2}, {3, 4}, {3, 4}])
    for fn in (decide_spanning_euler_family, decide_euler_family, decide_spanning_euler_tour, decide_euler_tour):
        with pytest.raises(DisconnectedError):
            fn(two)
    assert decide_any(two, "family", True)
    assert not decide_any(two, "tour", True)
    assert decide_any(H(4, [{1, 2}, {1, 2}]), "tour", False)
    assert not decide_any(H(4, [{1, 2}, {1, 2}]), "family", True)


def test_no_edges():
    single = H(1, [])
    assert decide_euler_family(single)
    assert not decide_euler_tour(single)
    assert not decide_spanning_euler_family(single)


def test_tour_may_revisit_anchors():
    # the only spanning tour passes through vertex 2 twice
    h = H(3, [{1, 2}, {1, 2}, {2, 3}, {2, 3}])
    d = decide_spanning_euler_tour(h)
    assert d and d.witness.trails[0].anchors.count(2) == 2


def test_family_without_tour():
    # the doubled edge {1,2} must form its own trail, so vertex 1 cannot join {3,4}
    h = H(4, [{1, 2}, {1, 2}, {3, 4}, {1, 3, 4}])
    bf = brute_force_all(h)
    assert bf.spanning_family is not None and bf.spanning_tour is None
    assert decide_spanning_euler_family(h) and not decide_spanning_euler_tour(h)


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=7, max_m=7, min_size=1, max_size=4, connected=True))
def test_all_four_decisions_match_brute_force(h):
    bf = brute_force_all(h, budget=28)
    for mode in ("family", "tour"):
        for spanning in (True, False):
            d = decide_direct(h, mode, spanning)
            assert bool(d) == (bf.flags_for(mode, spanning) is not None)
            if d:
                verify_witness(h, d.witness, mode, spanning)
    if not check_necessary_conditions(h).passed:
        assert bf.spanning_family is None
    if bf.spanning_family is not None:
        assert bf.family is not None


def test_tour_search_is_deterministic():
    h = H(5, [{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 3}, {1, 3}])
    assert search_tour_flags(h, True) == search_tour_flags(h, True)


def test_identical_edges_handled():
    h = H(4, [{1, 2, 3, 4}] * 4 + [{1, 2}])
    bf = brute_force_all(h, budget=28)
    assert (search_tour_flags(h, True) is not None) == (bf.spanning_tour is not None)
