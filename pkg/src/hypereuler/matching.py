"""Maximum matching in general graphs and parity-interval degree-constrained subgraphs.

``parity_factor_subgraph`` decides whether a graph has a spanning subgraph in
which each vertex ``x`` has degree in ``{lo(x), lo(x) + 2, ..., hi(x)}``. Each
vertex is replaced by a gadget (outer nodes, a core, and core-core edges),
each edge by a pair of connector nodes, and the question becomes whether the
gadget graph has a perfect matching.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping

Node = Hashable


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph."""

    nodes: tuple[Node, ...]
    edges: tuple[tuple[Node, Node], ...]

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise ValueError("duplicate nodes")
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"loop at {a!r}")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a!r}, {b!r}) uses an unknown node")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError(f"parallel edge ({a!r}, {b!r})")
            seen.add(key)

    def degree(self, x: Node) -> int:
        return sum(1 for a, b in self.edges if x in (a, b))


def _edmonds(n: int, adj: list[list[int]]) -> list[int]:
    """Maximum cardinality matching on nodes ``0..n-1``; returns the mate array (-1 = free)."""
    mate = [-1] * n
    # greedy start
    for x in range(n):
        if mate[x] == -1:
            for y in adj[x]:
                if mate[y] == -1:
                    mate[x], mate[y] = y, x
                    break

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(x: int, b: int, child: int, base, parent, blossom) -> None:
        while base[x] != b:
            blossom[base[x]] = blossom[base[mate[x]]] = True
            parent[x] = child
            child = mate[x]
            x = parent[mate[x]]

    def augment_from(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if base[x] == base[y] or mate[x] == y:
                    continue
                if y == root or (mate[y] != -1 and parent[mate[y]] != -1):
                    b = lca(x, y, base, parent)
                    blossom = [False] * n
                    mark_path(x, b, y, base, parent, blossom)
                    mark_path(y, b, x, base, parent, blossom)
                    for z in range(n):
                        if blossom[base[z]]:
                            base[z] = b
                            if not used[z]:
                                used[z] = True
                                queue.append(z)
                elif parent[y] == -1:
                    parent[y] = x
                    if mate[y] == -1:
                        while y != -1:
                            px = parent[y]
                            nxt = mate[px]
                            mate[y], mate[px] = px, y
                            y = nxt
                        return True
                    used[mate[y]] = True
                    queue.append(mate[y])
        return False

    for x in range(n):
        if mate[x] == -1 and adj[x]:
            augment_from(x)
    return mate


def maximum_matching(g: Graph) -> list[tuple[Node, Node]]:
    """A maximum-cardinality matching, as a sublist of ``g.edges``."""
    index = {x: i for i, x in enumerate(g.nodes)}
    adj: list[list[int]] = [[] for _ in g.nodes]
    for a, b in g.edges:
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    mate = _edmonds(len(g.nodes), adj)
    return [(a, b) for a, b in g.edges if mate[index[a]] == index[b]]


def has_perfect_matching(g: Graph) -> bool:
    return 2 * len(maximum_matching(g)) == len(g.nodes)


@dataclass(frozen=True)
class DegreeConstraintProblem:
    """Find a subgraph with ``deg(x)`` in ``range(lo, hi + 1, 2)`` for every node."""

    graph: Graph
    bounds: Mapping[Node, tuple[int, int]]

    def __post_init__(self):
        deg = dict.fromkeys(self.graph.nodes, 0)
        for a, b in self.graph.edges:
            deg[a] += 1
            deg[b] += 1
        for x in self.graph.nodes:
            if x not in self.bounds:
                raise ValueError(f"no degree set for node {x!r}")
            lo, hi = self.bounds[x]
            if not 0 <= lo <= hi <= deg[x] or (hi - lo) % 2:
                raise ValueError(f"malformed degree set {{{lo}..{hi}}} for node {x!r} of degree {deg[x]}")

    def allows(self, x: Node, d: int) -> bool:
        lo, hi = self.bounds[x]
        return lo <= d <= hi and (d - lo) % 2 == 0


def parity_factor_subgraph(p: DegreeConstraintProblem) -> list[tuple[Node, Node]] | None:
    """Edges of a subgraph meeting every degree set, or ``None`` if there is none."""
    g = p.graph
    incident: dict[Node, list[int]] = {x: [] for x in g.nodes}
    for k, (a, b) in enumerate(g.edges):
        incident[a].append(k)
        incident[b].append(k)

    count = 0
    adj: list[list[int]] = []

    def new_node() -> int:
        nonlocal count
        adj.append([])
        count += 1
        return count - 1

    def link(i: int, j: int) -> None:
        adj[i].append(j)
        adj[j].append(i)

    outer: dict[tuple[Node, int], int] = {}
    for x in g.nodes:
        lo, hi = p.bounds[x]
        d = len(incident[x])
        outs = []
        for k in incident[x]:
            outer[(x, k)] = new_node()
            outs.append(outer[(x, k)])
        core = [new_node() for _ in range(d - lo)]
        for c in core:
            for o in outs:
                link(c, o)
        for t in range((hi - lo) // 2):
            link(core[2 * t], core[2 * t + 1])

    connectors = []
    for k, (a, b) in enumerate(g.edges):
        ca, cb = new_node(), new_node()
        link(ca, cb)
        link(ca, outer[(a, k)])
        link(cb, outer[(b, k)])
        connectors.append((ca, cb))

    mate = _edmonds(count, adj)
    if any(m == -1 for m in mate):
        return None
    # an edge is used iff its connector pair is matched outward
    return [g.edges[k] for k, (ca, cb) in enumerate(connectors) if mate[ca] != cb]
