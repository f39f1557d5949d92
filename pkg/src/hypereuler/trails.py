"""Closed trails, Euler families, cycle decompositions and S-types.

A closed trail ``v0 e1 v1 ... v(k-1) ek v0`` is stored as two equal-length
tuples: ``anchors = (v0, ..., v(k-1))`` and ``edges = (e1, ..., ek)``; edge
``edges[i]`` joins ``anchors[i]`` and ``anchors[(i + 1) % k]``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hypergraph import Flag, Hypergraph, connected_components, delete_vertices, graph_components


class TrailError(ValueError):
    def __init__(self, clause: str, detail: str):
        super().__init__(f"{clause}: {detail}")
        self.clause = clause
        self.detail = detail


@dataclass(frozen=True)
class ClosedTrail:
    anchors: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.anchors) != len(self.edges):
            raise ValueError("a closed trail needs as many anchors as edges")

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> ClosedTrail:
        """Build from ``[v0, e1, v1, e2, ..., v(k-1), ek]``."""
        return cls(tuple(seq[0::2]), tuple(seq[1::2]))

    def __len__(self) -> int:
        return len(self.edges)

    def steps(self) -> Iterable[tuple[int, int, int]]:
        k = len(self.edges)
        for i in range(k):
            yield self.anchors[i], self.edges[i], self.anchors[(i + 1) % k]

    def flags(self) -> frozenset[Flag]:
        out = set()
        for a, e, b in self.steps():
            out.add((a, e))
            out.add((b, e))
        return frozenset(out)

    def anchor_set(self) -> frozenset[int]:
        return frozenset(self.anchors)

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def is_cycle(self) -> bool:
        return len(set(self.anchors)) == len(self.anchors)

    def rotated(self, start: int) -> ClosedTrail:
        return ClosedTrail(self.anchors[start:] + self.anchors[:start], self.edges[start:] + self.edges[:start])

    def reversed(self) -> ClosedTrail:
        anchors = (self.anchors[0],) + self.anchors[:0:-1]
        return ClosedTrail(anchors, self.edges[::-1])

    def canonical(self) -> ClosedTrail:
        """Least anchor first, then the lexicographically least direction."""
        if not self.anchors:
            return self
        low = min(self.anchors)
        best = None
        for t in (self, self.reversed()):
            for i, a in enumerate(t.anchors):
                if a == low:
                    cand = t.rotated(i)
                    if best is None or cand._seq() < best._seq():
                        best = cand
        return best

    def relabel_edges(self, mapping) -> ClosedTrail:
        return ClosedTrail(self.anchors, tuple(mapping(e) for e in self.edges))

    def _seq(self) -> tuple[int, ...]:
        out = []
        for a, e in zip(self.anchors, self.edges):
            out += [a, e]
        return tuple(out)

    def __str__(self) -> str:
        return " ".join(f"{a} e{e}" for a, e in zip(self.anchors, self.edges))


@dataclass(frozen=True)
class OpenTrail:
    """A ``(v0, vk)``-trail: ``k + 1`` anchors and ``k`` edges."""

    anchors: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.anchors) != len(self.edges) + 1:
            raise ValueError("an open trail needs one more anchor than edges")

    @property
    def ends(self) -> tuple[int, int]:
        return self.anchors[0], self.anchors[-1]

    def steps(self) -> Iterable[tuple[int, int, int]]:
        for i, e in enumerate(self.edges):
            yield self.anchors[i], e, self.anchors[i + 1]

    def flags(self) -> frozenset[Flag]:
        out = set()
        for a, e, b in self.steps():
            out.add((a, e))
            out.add((b, e))
        return frozenset(out)

    def reversed(self) -> OpenTrail:
        return OpenTrail(self.anchors[::-1], self.edges[::-1])


@dataclass(frozen=True)
class EulerFamily:
    trails: tuple[ClosedTrail, ...]
    spanning: bool = False

    @classmethod
    def of(cls, trails: Iterable[ClosedTrail], spanning: bool = False) -> EulerFamily:
        return cls(tuple(sorted((t.canonical() for t in trails), key=lambda t: t._seq())), spanning)

    def flags(self) -> frozenset[Flag]:
        return family_incidence_graph(self.trails)

    def __len__(self) -> int:
        return len(self.trails)


@dataclass(frozen=True)
class SType:
    a: int
    b: int
    c: int

    def requires_completion(self) -> bool:
        return (self.a, self.b, self.c) in {(2, 0, 2), (2, 1, 1)}

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


CYCLE_STYPES = frozenset({(0, 0, 1), (1, 0, 1), (2, 0, 1), (2, 0, 2), (2, 1, 1), (2, 2, 0)})


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[ClosedTrail, ...]
    S: frozenset[int] | None = None

    @classmethod
    def of(cls, cycles: Iterable[ClosedTrail], S: Iterable[int] | None = None) -> CycleDecomposition:
        ordered = tuple(sorted((c.canonical() for c in cycles), key=lambda c: c._seq()))
        return cls(ordered, None if S is None else frozenset(S))

    def flags(self) -> frozenset[Flag]:
        return family_incidence_graph(self.cycles)


# -- validation ----------------------------------------------------------------


def validate_trail(h: Hypergraph, t: ClosedTrail | OpenTrail) -> None:
    """Raise :class:`TrailError` naming the first violated trail invariant."""
    closed = isinstance(t, ClosedTrail)
    if closed and len(t.edges) < 2:
        raise TrailError("too-short", f"closed trail has {len(t.edges)} edges, needs at least 2")
    if not closed and len(t.edges) < 1:
        raise TrailError("too-short", "trail has no edges")
    vset = set(h.vertices)
    for a in t.anchors:
        if a not in vset:
            raise TrailError("unknown-vertex", f"anchor {a} is not a vertex")
    seen: set[int] = set()
    for a, e, b in t.steps():
        if not 1 <= e <= h.m:
            raise TrailError("unknown-edge", f"edge index {e} out of range 1..{h.m}")
        if e in seen:
            raise TrailError("repeated-edge", f"edge {e} traversed twice")
        seen.add(e)
        if a == b:
            raise TrailError("equal-consecutive-anchors", f"anchors {a} and {b} around edge {e} are equal")
        edge = h.edges[e - 1]
        if a not in edge or b not in edge:
            raise TrailError("not-in-edge", f"edge {e} does not contain both {a} and {b}")


def family_incidence_graph(trails: Iterable[ClosedTrail | OpenTrail]) -> frozenset[Flag]:
    """Edge set (flags) of the incidence graph of a family of edge-disjoint trails."""
    owner: dict[int, int] = {}
    flags: set[Flag] = set()
    for i, t in enumerate(trails):
        for e in set(t.edges):
            if e in owner:
                raise TrailError("edge-disjoint", f"edge {e} shared by trails {owner[e] + 1} and {i + 1}")
            owner[e] = i
        flags |= t.flags()
    return frozenset(flags)


def equivalent(a: Iterable[ClosedTrail | OpenTrail], b: Iterable[ClosedTrail | OpenTrail]) -> bool:
    return family_incidence_graph(a) == family_incidence_graph(b)


# -- cycle decompositions --------------------------------------------------------


def _node_sequence_to_trail(seq: list[tuple[int, int]]) -> ClosedTrail:
    # seq alternates (0, v) / (1, e) and starts with a v-node; closing node omitted
    return ClosedTrail(tuple(x for _, x in seq[0::2]), tuple(x for _, x in seq[1::2]))


def decompose_even_flags(flags: Iterable[Flag]) -> list[ClosedTrail]:
    """Split an even bipartite flag graph into cycles by walking until a node repeats."""
    adj: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for v, e in flags:
        adj[(0, v)].append((1, e))
        adj[(1, e)].append((0, v))
    for x, nbrs in adj.items():
        if len(nbrs) % 2:
            raise ValueError(f"graph is not even at node {x}")
        nbrs.sort(reverse=True)  # pop() yields the least neighbour
    cycles = []
    for start in sorted(x for x in adj if x[0] == 0):
        while adj[start]:
            walk = [start]
            where = {start: 0}
            while True:
                x = walk[-1]
                y = adj[x].pop()
                adj[y].remove(x)
                if y in where:
                    cut = where[y]
                    loop = walk[cut:]
                    for z in loop[1:]:
                        del where[z]
                    del walk[cut + 1:]
                    if loop[0][0] == 1:  # rotate so the cycle starts at a v-node
                        loop = loop[1:] + loop[:1]
                    cycles.append(_node_sequence_to_trail(loop).canonical())
                    if len(walk) == 1 and not adj[walk[0]]:
                        break
                    if not adj[walk[-1]]:
                        # the walk prefix is exhausted only when it is back at start
                        break
                else:
                    where[y] = len(walk)
                    walk.append(y)
    return cycles


def cycle_decomposition(
    h: Hypergraph, family: Iterable[ClosedTrail], S: Iterable[int] | None = None
) -> CycleDecomposition:
    """Cycle decomposition equivalent to a family of edge-disjoint closed trails."""
    trails = list(family)
    for t in trails:
        validate_trail(h, t)
    return CycleDecomposition.of(decompose_even_flags(family_incidence_graph(trails)), S)


# -- S-types ---------------------------------------------------------------------


@dataclass(frozen=True)
class SContext:
    """Fixed component indexing of ``H \\ S`` for a 2-set ``S``."""

    S: frozenset[int]
    components: tuple[frozenset[int], ...]
    es: tuple[int, ...]
    edge_component: dict[int, int]  # edge index -> 1-based component it meets (absent for E_S edges)

    @classmethod
    def build(cls, h: Hypergraph, S: Iterable[int]) -> SContext:
        S = frozenset(S)
        if len(S) != 2:
            raise ValueError(f"S must have exactly two vertices, got {sorted(S)}")
        if not S <= set(h.vertices):
            raise ValueError(f"S={sorted(S)} is not a vertex subset")
        rest = set(h.vertices) - S
        comps = tuple(c.vertices for c in connected_components(delete_vertices(h, S))) if rest else ()
        where = {v: i for i, c in enumerate(comps, 1) for v in c}
        edge_component = {}
        for j, e in enumerate(h.edges, 1):
            outside = e - S
            if outside:
                edge_component[j] = where[next(iter(outside))]
        es = tuple(j for j, e in enumerate(h.edges, 1) if e == S)
        return cls(S, comps, es, edge_component)

    def s_type(self, t: ClosedTrail) -> SType:
        a = sum(1 for x in t.anchors if x in self.S)
        es = set(self.es)
        b = sum(1 for e in t.edges if e in es)
        c = len({self.edge_component[e] for e in t.edges if e in self.edge_component})
        return SType(a, b, c)

    def members(self, t: ClosedTrail) -> frozenset[int]:
        """Components ``i`` with ``t`` in the membership set of component ``i``."""
        return frozenset(self.edge_component[e] for e in t.edges if e in self.edge_component)

    def rc_counts(self, cycles: Iterable[ClosedTrail]) -> dict[int, int]:
        counts = dict.fromkeys(range(1, len(self.components) + 1), 0)
        for c in cycles:
            if self.s_type(c).requires_completion():
                for i in self.members(c):
                    counts[i] += 1
        return counts


def s_type(h: Hypergraph, S: Iterable[int], t: ClosedTrail) -> SType:
    return SContext.build(h, S).s_type(t)


# -- concatenation and Euler families ----------------------------------------------


def concatenate(t1: ClosedTrail, t2: ClosedTrail, at: int) -> ClosedTrail:
    """Splice ``t2`` into ``t1`` at the shared anchor ``at``."""
    if at not in t1.anchors or at not in t2.anchors:
        raise TrailError("not-shared", f"vertex {at} is not an anchor of both trails")
    overlap = set(t1.edges) & set(t2.edges)
    if overlap:
        raise TrailError("edge-disjoint", f"trails share edges {sorted(overlap)}")
    r1 = t1.rotated(t1.anchors.index(at))
    r2 = t2.rotated(t2.anchors.index(at))
    return ClosedTrail(r1.anchors + r2.anchors, r1.edges + r2.edges)


def join_paths(p: OpenTrail, q: OpenTrail) -> ClosedTrail:
    """Close two edge-disjoint trails with the same ends into one closed trail."""
    if p.ends != q.ends:
        if p.ends == q.ends[::-1]:
            q = q.reversed()
        else:
            raise TrailError("ends-mismatch", f"trails end at {p.ends} and {q.ends}")
    back = q.reversed()
    return ClosedTrail(p.anchors[:-1] + back.anchors[:-1], p.edges + back.edges)


def _euler_circuit(adj: dict[tuple[int, int], list[tuple[int, int]]], start: tuple[int, int]) -> list:
    """Hierholzer on a connected even graph; consumes ``adj`` (lists sorted descending)."""
    stack, circuit = [start], []
    while stack:
        x = stack[-1]
        if adj[x]:
            y = adj[x].pop()
            adj[y].remove(x)
            stack.append(y)
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return circuit


def family_from_even_subgraph(h: Hypergraph, flags: Iterable[Flag], require_spanning: bool = False) -> EulerFamily:
    """One closed trail per connected component of the flag subgraph ``G'``.

    ``G'`` must give every edge of ``h`` degree 2 and every vertex an even
    degree; the family is spanning iff no vertex has degree 0.
    """
    flags = frozenset(flags)
    full = h.flags()
    stray = flags - full
    if stray:
        raise ValueError(f"flags {sorted(stray)} are not flags of the hypergraph")
    vdeg = dict.fromkeys(h.vertices, 0)
    edeg = dict.fromkeys(h.edge_indices(), 0)
    for v, e in flags:
        vdeg[v] += 1
        edeg[e] += 1
    bad_e = [e for e, d in edeg.items() if d != 2]
    if bad_e:
        raise ValueError(f"edges {bad_e} do not have degree 2 in the subgraph")
    odd = [v for v, d in vdeg.items() if d % 2]
    if odd:
        raise ValueError(f"vertices {odd} have odd degree in the subgraph")
    spanning = all(vdeg.values())
    if require_spanning and not spanning:
        raise ValueError(f"vertices {[v for v, d in vdeg.items() if not d]} are not covered")
    adj: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for v, e in flags:
        adj[(0, v)].append((1, e))
        adj[(1, e)].append((0, v))
    for nbrs in adj.values():
        nbrs.sort(reverse=True)
    trails = []
    for comp in graph_components(adj.keys(), flags):
        start = min(x for x in comp if x[0] == 0)
        circuit = _euler_circuit(adj, start)
        trails.append(_node_sequence_to_trail(circuit[:-1]))
    return EulerFamily.of(trails, spanning)


# -- witness text format -------------------------------------------------------------


def format_witness(family: EulerFamily | Iterable[ClosedTrail]) -> str:
    trails = family.trails if isinstance(family, EulerFamily) else tuple(family)
    return "".join(str(t) + "\n" for t in trails)


def parse_witness(text: str) -> EulerFamily:
    """Parse one trail per line, ``v0 e<i1> v1 ... e<ik>``; ``#`` lines are comments."""
    trails = []
    for number, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) % 2:
            raise ValueError(f"line {number}: a trail must alternate vertex and edge tokens")
        anchors, edges = [], []
        for pos, tok in enumerate(toks):
            if pos % 2 == 0:
                if not tok.isdigit():
                    raise ValueError(f"line {number}: expected a vertex id, got {tok!r}")
                anchors.append(int(tok))
            else:
                if not (tok.startswith("e") and tok[1:].isdigit()):
                    raise ValueError(f"line {number}: expected an edge token e<i>, got {tok!r}")
                edges.append(int(tok[1:]))
        trails.append(ClosedTrail(tuple(anchors), tuple(edges)))
    return EulerFamily(tuple(trails))
