"""Direct decision procedures for (spanning) Euler families and tours.

Families are decided in polynomial time: a hypergraph has a (spanning) Euler
family iff its incidence graph has a subgraph in which every e-vertex has
degree 2 and every v-vertex has even (positive) degree, which is a parity
degree-constrained subgraph problem. Tours additionally need that subgraph
to be connected; that part is NP-complete and is decided by backtracking.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .hypergraph import Flag, Hypergraph, connected_components, induced_subhypergraph
from .matching import DegreeConstraintProblem, Graph, parity_factor_subgraph
from .trails import EulerFamily, family_from_even_subgraph


class Verdict(str, enum.Enum):
    YES = "YES"
    NO = "NO"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    witness: EulerFamily | None = None
    reason: str | None = None

    def __post_init__(self):
        if self.verdict is Verdict.YES and self.witness is None:
            raise ValueError("a YES decision needs a witness")
        if self.verdict is Verdict.NO and self.witness is not None:
            raise ValueError("a NO decision carries no witness")

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES

    @classmethod
    def yes(cls, witness: EulerFamily) -> Decision:
        return cls(Verdict.YES, witness)

    @classmethod
    def no(cls, reason: str) -> Decision:
        return cls(Verdict.NO, None, reason)


class DisconnectedError(ValueError):
    pass


def _require_connected(h: Hypergraph) -> None:
    if len(connected_components(h)) > 1:
        raise DisconnectedError("input hypergraph is disconnected; decide each component separately")


# -- necessary conditions ----------------------------------------------------------


@dataclass(frozen=True)
class NecessaryConditions:
    failed: str | None  # "i", "ii", "iii" or "iv"
    detail: str = ""
    partial: bool = False

    @property
    def passed(self) -> bool:
        return self.failed is None

    @property
    def reason(self) -> str | None:
        return None if self.failed is None else f"necessary condition ({self.failed})"


def check_condition_iv(h: Hypergraph) -> str | None:
    """Condition (iv), exactly.

    A vertex of degree ``k`` lies in all edges of a ``k``-subset ``E'`` only if
    ``E'`` is its star, so it is enough to bound, for each star of size
    ``k >= 2``, how many vertices share it.
    """
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for v in h.vertices:
        groups[h.star(v)].append(v)
    for star, verts in sorted(groups.items()):
        k = len(star)
        if k >= 2 and len(verts) > k:
            return f"{len(verts)} vertices of degree {k} all lie in edges {list(star)}"
    return None


def check_necessary_conditions(h: Hypergraph, include_iv: bool = True) -> NecessaryConditions:
    for j, e in enumerate(h.edges, 1):
        if len(e) < 2:
            return NecessaryConditions("i", f"edge {j} has {len(e)} vertex")
    for v, d in h.degrees().items():
        if d < 2:
            return NecessaryConditions("ii", f"vertex {v} has degree {d}")
    if not 2 <= h.n <= h.m:
        return NecessaryConditions("iii", f"|V|={h.n}, |E|={h.m}")
    if include_iv:
        detail = check_condition_iv(h)
        if detail:
            return NecessaryConditions("iv", detail)
    return NecessaryConditions(None)


# -- families via parity factors -------------------------------------------------------


def _even_subgraph(h: Hypergraph, spanning: bool) -> frozenset[Flag] | None:
    """Flags of a subgraph with e-degrees 2 and even (positive) v-degrees, if any."""
    if any(len(e) < 2 for e in h.edges):
        return None
    deg = h.degrees()
    lo_v = 2 if spanning else 0
    bounds: dict = {}
    for v, d in deg.items():
        hi = 2 * (d // 2)
        if hi < lo_v:
            return None
        bounds[(0, v)] = (lo_v, hi)
    for j in h.edge_indices():
        bounds[(1, j)] = (2, 2)
    nodes = tuple((0, v) for v in h.vertices) + tuple((1, j) for j in h.edge_indices())
    edges = tuple(((0, v), (1, j)) for j, e in enumerate(h.edges, 1) for v in sorted(e))
    chosen = parity_factor_subgraph(DegreeConstraintProblem(Graph(nodes, edges), bounds))
    if chosen is None:
        return None
    return frozenset((a[1], b[1]) for a, b in chosen)


def decide_spanning_euler_family(h: Hypergraph) -> Decision:
    _require_connected(h)
    nc = check_necessary_conditions(h, include_iv=False)
    if not nc.passed:
        return Decision.no(nc.reason)
    flags = _even_subgraph(h, spanning=True)
    if flags is None:
        return Decision.no("no parity factor")
    return Decision.yes(family_from_even_subgraph(h, flags, require_spanning=True))


def decide_euler_family(h: Hypergraph) -> Decision:
    _require_connected(h)
    if any(len(e) < 2 for e in h.edges):
        return Decision.no("necessary condition (i)")
    flags = _even_subgraph(h, spanning=False)
    if flags is None:
        return Decision.no("no parity factor")
    return Decision.yes(family_from_even_subgraph(h, flags))


# -- tours by backtracking ----------------------------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _completion_exists(h: Hypergraph, order, depth: int, deg: dict, remaining: dict, spanning: bool) -> bool:
    """Can the unassigned edges still be given anchor pairs so all degrees end even (and positive)?"""
    bounds: dict = {}
    rest = order[depth:]
    for v in h.vertices:
        d, r = deg[v], remaining[v]
        lo = max(0, 2 - d) if spanning else 0
        lo += (d + lo) % 2
        hi = r - (d + r) % 2
        if lo > hi:
            return False
        if r:
            bounds[(0, v)] = (lo, hi)
    if not rest:
        return True
    for j in rest:
        bounds[(1, j)] = (2, 2)
    nodes = tuple(bounds)
    edges = tuple(((0, v), (1, j)) for j in rest for v in sorted(h.edges[j - 1]))
    return parity_factor_subgraph(DegreeConstraintProblem(Graph(nodes, edges), bounds)) is not None


def search_tour_flags(h: Hypergraph, spanning: bool) -> frozenset[Flag] | None:
    """Exhaustive search for a connected even subgraph choosing one anchor pair per edge.

    Edges are branched in ascending size order (ties by vertex set, then
    index) and pairs in lexicographic order, so the first solution found is
    deterministic. A
    branch is cut when the used vertices can no longer end up in one
    component (even if every unassigned edge joined all of its vertices), or
    when no parity-feasible completion of the remaining edges exists.
    """
    if h.m == 0 or any(len(e) < 2 for e in h.edges):
        return None
    order = sorted(h.edge_indices(), key=lambda j: (len(h.edges[j - 1]), sorted(h.edges[j - 1]), j))
    options = [list(combinations(sorted(h.edges[j - 1]), 2)) for j in order]
    # copies of one edge are interchangeable: their pair choices are kept non-decreasing
    same_as_prev = [d > 0 and h.edges[order[d] - 1] == h.edges[order[d - 1] - 1] for d in range(len(order))]
    picked = [0] * len(order)
    deg = dict.fromkeys(h.vertices, 0)
    remaining = h.degrees()
    if spanning and any(d < 2 for d in remaining.values()):
        return None
    chosen: list[tuple[int, int]] = []

    def can_connect(depth: int) -> bool:
        uf = _UnionFind(h.vertices)
        for a, b in chosen:
            uf.union(a, b)
        for j in order[depth:]:
            first, *others = sorted(h.edges[j - 1])
            for x in others:
                uf.union(first, x)
        need = h.vertices if spanning else [v for v in h.vertices if deg[v]]
        return len({uf.find(v) for v in need}) <= 1

    def feasible(touched) -> bool:
        for v in touched:
            if remaining[v] == 0:
                if deg[v] % 2 or (spanning and deg[v] == 0):
                    return False
            elif spanning and deg[v] + remaining[v] < 2:
                return False
        return True

    def rec(depth: int) -> bool:
        if depth == len(order):
            return can_connect(depth)
        j = order[depth]
        members = h.edges[j - 1]
        for v in members:
            remaining[v] -= 1
        first = picked[depth - 1] if same_as_prev[depth] else 0
        for pos in range(first, len(options[depth])):
            a, b = options[depth][pos]
            picked[depth] = pos
            deg[a] += 1
            deg[b] += 1
            chosen.append((a, b))
            if (
                feasible(members)
                and can_connect(depth + 1)
                and _completion_exists(h, order, depth + 1, deg, remaining, spanning)
                and rec(depth + 1)
            ):
                return True
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
        for v in members:
            remaining[v] += 1
        return False

    if not rec(0):
        return None
    return frozenset(f for j, (a, b) in zip(order, chosen) for f in ((a, j), (b, j)))


def decide_spanning_euler_tour(h: Hypergraph) -> Decision:
    _require_connected(h)
    fam = decide_spanning_euler_family(h)
    if not fam:
        return fam
    if len(fam.witness) == 1:
        return Decision.yes(fam.witness)
    flags = search_tour_flags(h, spanning=True)
    if flags is None:
        return Decision.no("search exhausted")
    return Decision.yes(family_from_even_subgraph(h, flags, require_spanning=True))


def decide_euler_tour(h: Hypergraph) -> Decision:
    _require_connected(h)
    if h.m == 0:
        return Decision.no("no edges")
    fam = decide_euler_family(h)
    if not fam:
        return fam
    if len(fam.witness) == 1:
        return Decision.yes(fam.witness)
    flags = search_tour_flags(h, spanning=False)
    if flags is None:
        return Decision.no("search exhausted")
    return Decision.yes(family_from_even_subgraph(h, flags))


_DIRECT = {
    ("family", True): decide_spanning_euler_family,
    ("family", False): decide_euler_family,
    ("tour", True): decide_spanning_euler_tour,
    ("tour", False): decide_euler_tour,
}


def decide_direct(h: Hypergraph, mode: str, spanning: bool) -> Decision:
    """Direct decision on a connected hypergraph."""
    try:
        fn = _DIRECT[(mode, spanning)]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}") from None
    return fn(h)


def decide_any(h: Hypergraph, mode: str, spanning: bool, solve=decide_direct) -> Decision:
    """Decide a possibly disconnected hypergraph by splitting it into components.

    ``solve(component, mode, spanning)`` decides one connected component; its
    witness is translated back to the edge indices of ``h``.
    """
    comps = connected_components(h)
    if len(comps) <= 1:
        return solve(h, mode, spanning)
    parts = [induced_subhypergraph(h, c.vertices) for c in comps]
    if mode == "tour":
        if spanning:
            return Decision.no("disconnected")
        with_edges = [p for p in parts if p.m]
        if len(with_edges) != 1:
            return Decision.no("disconnected" if with_edges else "no edges")
        d = solve(with_edges[0], mode, spanning)
        if not d:
            return d
        return Decision.yes(EulerFamily.of((t.relabel_edges(with_edges[0].parent_index) for t in d.witness.trails)))
    trails = []
    for p in parts:
        if not spanning and p.m == 0:
            continue
        d = solve(p, mode, spanning)
        if not d:
            return d
        trails += [t.relabel_edges(p.parent_index) for t in d.witness.trails]
    return Decision.yes(EulerFamily.of(trails, spanning))
