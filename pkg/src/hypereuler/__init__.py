"""Spanning Euler families and tours in hypergraphs, with cut-based reductions."""

from .cuts import VertexCut, derive, derived_hypergraphs, find_degree2_cuts, find_vertex_cuts
from .generate import GeneratorParams, random_hypergraph, random_instance
from .hypergraph import Hypergraph, incidence_graph, parse_hypergraph, serialize_hypergraph
from .matching import DegreeConstraintProblem, Graph, maximum_matching, parity_factor_subgraph
from .oracle import brute_force_decide, verify_witness
from .reducer import Reducer, ReductionTrace, assemble_witness, decide_reduced, normalize_cycle_decomposition
from .solver import (
    Decision,
    Verdict,
    check_necessary_conditions,
    decide_direct,
    decide_euler_family,
    decide_euler_tour,
    decide_spanning_euler_family,
    decide_spanning_euler_tour,
)
from .trails import ClosedTrail, EulerFamily, cycle_decomposition, family_from_even_subgraph, s_type

__all__ = [
    "ClosedTrail",
    "Decision",
    "DegreeConstraintProblem",
    "EulerFamily",
    "GeneratorParams",
    "Graph",
    "Hypergraph",
    "Reducer",
    "ReductionTrace",
    "Verdict",
    "VertexCut",
    "assemble_witness",
    "brute_force_decide",
    "check_necessary_conditions",
    "cycle_decomposition",
    "decide_direct",
    "decide_euler_family",
    "decide_euler_tour",
    "decide_reduced",
    "decide_spanning_euler_family",
    "decide_spanning_euler_tour",
    "derive",
    "derived_hypergraphs",
    "family_from_even_subgraph",
    "find_degree2_cuts",
    "find_vertex_cuts",
    "incidence_graph",
    "maximum_matching",
    "normalize_cycle_decomposition",
    "parity_factor_subgraph",
    "parse_hypergraph",
    "random_hypergraph",
    "random_instance",
    "s_type",
    "serialize_hypergraph",
    "verify_witness",
]
