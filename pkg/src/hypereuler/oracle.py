"""Brute-force ground truth and witness verification.

The brute force enumerates, for every edge, every unordered pair of its
vertices (the two flags the edge contributes to a subgraph of the incidence
graph where e-vertices have degree 2), and accepts a choice iff the resulting
v-vertex degrees are even (positive when spanning) and, for tours, the chosen
flags form one connected graph. Degree vectors of all choices are computed at
once with numpy broadcasting; the first accepted choice in
``itertools.product`` order is returned as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .hypergraph import Flag, Hypergraph, graph_components
from .solver import Decision
from .trails import EulerFamily, TrailError, family_from_even_subgraph, validate_trail

FLAG_BUDGET = 24
MODES = ("family", "tour")


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class BruteForceResult:
    """All four verdicts for one hypergraph, with first-found witness flags."""

    family: frozenset[Flag] | None
    spanning_family: frozenset[Flag] | None
    tour: frozenset[Flag] | None
    spanning_tour: frozenset[Flag] | None

    def flags_for(self, mode: str, spanning: bool) -> frozenset[Flag] | None:
        if mode == "family":
            return self.spanning_family if spanning else self.family
        if mode == "tour":
            return self.spanning_tour if spanning else self.tour
        raise ValueError(f"unknown mode {mode!r}")


def _connected(flags: frozenset[Flag]) -> bool:
    return len(graph_components((), flags)) == 1


def brute_force_all(h: Hypergraph, budget: int = FLAG_BUDGET) -> BruteForceResult:
    if h.flag_count() > budget:
        raise BudgetExceeded(f"{h.flag_count()} flags exceed the brute-force budget of {budget}")
    index = {v: i for i, v in enumerate(h.vertices)}
    pairs = [list(combinations(sorted(e), 2)) for e in h.edges]
    if any(not p for p in pairs):
        return BruteForceResult(None, None, None, None)
    n = h.n
    deg = np.zeros((1, n), dtype=np.int16)
    for options in pairs:
        step = np.zeros((len(options), n), dtype=np.int16)
        for r, (a, b) in enumerate(options):
            step[r, index[a]] += 1
            step[r, index[b]] += 1
        deg = (deg[:, None, :] + step[None, :, :]).reshape(-1, n)
    even = np.all(deg % 2 == 0, axis=1)
    positive = np.all(deg > 0, axis=1)
    shape = [len(p) for p in pairs]

    def flags_of(row: int) -> frozenset[Flag]:
        choice = np.unravel_index(row, shape) if shape else ()
        return frozenset(
            f for j, c in enumerate(choice, 1) for f in ((pairs[j - 1][c][0], j), (pairs[j - 1][c][1], j))
        )

    def first(mask: np.ndarray, need_connected: bool) -> frozenset[Flag] | None:
        for row in np.flatnonzero(mask):
            flags = flags_of(int(row))
            if not need_connected or (h.m > 0 and _connected(flags)):
                return flags
        return None

    return BruteForceResult(
        family=first(even, False),
        spanning_family=first(even & positive, False),
        tour=first(even, True),
        spanning_tour=first(even & positive, True),
    )


def brute_force_decide(h: Hypergraph, mode: str, spanning: bool, budget: int = FLAG_BUDGET) -> Decision:
    flags = brute_force_all(h, budget).flags_for(mode, spanning)
    if flags is None:
        return Decision.no("brute force exhausted")
    return Decision.yes(family_from_even_subgraph(h, flags, require_spanning=spanning))


# -- verification ------------------------------------------------------------------------


class WitnessViolation(ValueError):
    def __init__(self, clause: str, detail: str):
        super().__init__(f"{clause}: {detail}")
        self.clause = clause
        self.detail = detail


def verify_witness(h: Hypergraph, w: EulerFamily, mode: str, spanning: bool) -> None:
    """Raise :class:`WitnessViolation` unless ``w`` is a valid witness for the mode."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    for i, t in enumerate(w.trails, 1):
        try:
            validate_trail(h, t)
        except TrailError as exc:
            raise WitnessViolation("trail-invalid", f"trail {i}: {exc}") from None
    edge_owner: dict[int, int] = {}
    anchor_owner: dict[int, int] = {}
    for i, t in enumerate(w.trails, 1):
        for e in t.edges:
            if e in edge_owner:
                raise WitnessViolation("edge-disjoint", f"edge {e} in trails {edge_owner[e]} and {i}")
            edge_owner[e] = i
        for v in set(t.anchors):
            if v in anchor_owner:
                raise WitnessViolation("anchor-disjoint", f"vertex {v} anchors trails {anchor_owner[v]} and {i}")
            anchor_owner[v] = i
    for e in h.edge_indices():
        if e not in edge_owner:
            raise WitnessViolation("edge-untraversed", f"edge {e} is not traversed")
    if spanning:
        for v in h.vertices:
            if v not in anchor_owner:
                raise WitnessViolation("vertex-unanchored", f"vertex {v} is not an anchor")
    if mode == "tour" and len(w.trails) != 1:
        raise WitnessViolation("tour-size", f"a tour is one closed trail, got {len(w.trails)}")


def witness_ok(h: Hypergraph, w: EulerFamily, mode: str, spanning: bool) -> bool:
    try:
        verify_witness(h, w, mode, spanning)
    except WitnessViolation:
        return False
    return True
