"""Hypergraph representation, incidence graphs, subhypergraphs and connectivity.

Vertices are positive integers. A hypergraph read from a file uses the labels
``1..n``; derived hypergraphs (induced subhypergraphs, S-components, ...) keep
the labels of their parent so that witnesses never need to be translated on
the vertex side. Edges are identified by their 1-based position, and every
derived hypergraph records, per edge, the index of the parent edge it came
from (``None`` for synthetic edges that have no parent).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Flag = tuple[int, int]  # (vertex, edge index)


class HypergraphError(ValueError):
    """Raised for structurally invalid hypergraphs."""


class ParseError(HypergraphError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmptyEdgeError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[int, ...]
    edges: tuple[frozenset[int], ...]
    origin: tuple[int | None, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if list(self.vertices) != sorted(set(self.vertices)):
            raise HypergraphError("vertex labels must be strictly increasing")
        vset = set(self.vertices)
        for j, e in enumerate(self.edges, 1):
            if not e:
                raise HypergraphError(f"edge {j} is empty")
            if not e <= vset:
                raise HypergraphError(f"edge {j} contains unknown vertices {sorted(e - vset)}")
        if self.origin is not None and len(self.origin) != len(self.edges):
            raise HypergraphError("origin map must have one entry per edge")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
        """Build a hypergraph on vertices ``1..n``."""
        return cls(tuple(range(1, n + 1)), tuple(frozenset(e) for e in edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, j: int) -> frozenset[int]:
        if not 1 <= j <= len(self.edges):
            raise IndexError(f"edge index {j} out of range 1..{len(self.edges)}")
        return self.edges[j - 1]

    def edge_indices(self) -> range:
        return range(1, len(self.edges) + 1)

    def star(self, v: int) -> tuple[int, ...]:
        """Indices of the edges incident with ``v``."""
        return tuple(j for j, e in enumerate(self.edges, 1) if v in e)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def neighbourhood(self, v: int) -> frozenset[int]:
        out: set[int] = set()
        for e in self.edges:
            if v in e:
                out |= e
        out.discard(v)
        return frozenset(out)

    def flags(self) -> frozenset[Flag]:
        return frozenset((v, j) for j, e in enumerate(self.edges, 1) for v in e)

    def flag_count(self) -> int:
        return sum(len(e) for e in self.edges)

    def is_standard(self) -> bool:
        """True when the vertex labels are exactly ``1..n``."""
        return self.vertices == tuple(range(1, self.n + 1))

    def parent_index(self, j: int) -> int | None:
        """Parent edge index of local edge ``j`` (identity when there is no parent)."""
        if self.origin is None:
            return j
        return self.origin[j - 1]

    def key(self) -> tuple:
        """Exact encoding used for memoisation (labels and edge order matter)."""
        return (self.vertices, tuple(tuple(sorted(e)) for e in self.edges))

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, sorted(e))) + "}" for e in self.edges)
        return f"<V={list(self.vertices)}; {body}>"


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite graph on v-vertices and e-vertices; its edges are the flags."""

    v_vertices: tuple[int, ...]
    e_vertices: tuple[int, ...]
    flags: frozenset[Flag]

    @property
    def node_count(self) -> int:
        return len(self.v_vertices) + len(self.e_vertices)

    def adjacency(self) -> dict[tuple[int, int], list[tuple[int, int]]]:
        """Adjacency lists on nodes ``(0, v)`` (v-vertex) and ``(1, j)`` (e-vertex)."""
        adj: dict[tuple[int, int], list[tuple[int, int]]] = {(0, v): [] for v in self.v_vertices}
        adj.update({(1, j): [] for j in self.e_vertices})
        for v, j in sorted(self.flags):
            adj[(0, v)].append((1, j))
            adj[(1, j)].append((0, v))
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def degree(self, node: tuple[int, int]) -> int:
        kind, x = node
        return sum(1 for v, j in self.flags if (v if kind == 0 else j) == x)


def incidence_graph(h: Hypergraph) -> IncidenceGraph:
    return IncidenceGraph(h.vertices, tuple(h.edge_indices()), h.flags())


def graph_components(
    nodes: Iterable[tuple[int, int]], flags: Iterable[Flag]
) -> list[set[tuple[int, int]]]:
    """Connected components of a bipartite flag graph (BFS, deterministic order)."""
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {x: [] for x in nodes}
    for v, j in flags:
        adj.setdefault((0, v), []).append((1, j))
        adj.setdefault((1, j), []).append((0, v))
    seen: set[tuple[int, int]] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    edges: tuple[int, ...]


def connected_components(h: Hypergraph) -> list[Component]:
    """Vertex classes of ``h`` with their edge indices, ordered by least vertex."""
    nodes = [(0, v) for v in h.vertices] + [(1, j) for j in h.edge_indices()]
    out = []
    for comp in graph_components(nodes, h.flags()):
        verts = frozenset(x for kind, x in comp if kind == 0)
        if not verts:
            continue  # cannot happen: edges are non-empty
        edges = tuple(sorted(x for kind, x in comp if kind == 1))
        out.append(Component(verts, edges))
    out.sort(key=lambda c: min(c.vertices))
    return out


def is_connected(h: Hypergraph) -> bool:
    return len(connected_components(h)) <= 1


def induced_subhypergraph(h: Hypergraph, keep: Iterable[int]) -> Hypergraph:
    """Subhypergraph induced by ``keep``: edges are the non-empty traces ``e & keep``."""
    keep = frozenset(keep)
    if not keep:
        raise HypergraphError("induced subhypergraph needs a non-empty vertex set")
    if not keep <= set(h.vertices):
        raise HypergraphError(f"unknown vertices {sorted(keep - set(h.vertices))}")
    edges, origin = [], []
    for j, e in enumerate(h.edges, 1):
        trace = e & keep
        if trace:
            edges.append(trace)
            origin.append(j)
    return Hypergraph(tuple(sorted(keep)), tuple(edges), tuple(origin))


def delete_vertices(h: Hypergraph, drop: Iterable[int]) -> Hypergraph:
    """``H \\ drop``."""
    return induced_subhypergraph(h, set(h.vertices) - set(drop))


def remove_edges(h: Hypergraph, drop: Iterable[int]) -> Hypergraph:
    """``H - E'`` for a set of edge indices."""
    drop = set(drop)
    bad = [j for j in drop if not 1 <= j <= h.m]
    if bad:
        raise HypergraphError(f"invalid edge indices {sorted(bad)}")
    kept = [j for j in h.edge_indices() if j not in drop]
    return Hypergraph(h.vertices, tuple(h.edges[j - 1] for j in kept), tuple(kept))


# -- text format ---------------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def _lines(text: str) -> Iterator[tuple[int, str]]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for number, line in enumerate(lines, 1):
        yield number, line.rstrip("\r")


def _int_token(tok: re.Match, line: int) -> int:
    if not tok.group().isdigit():
        raise ParseError(f"expected a non-negative integer, got {tok.group()!r}", line, tok.start() + 1)
    return int(tok.group())


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the ``hg <n> <m>`` text format."""
    header = None
    edge_lines: list[tuple[int, str]] = []
    for number, line in _lines(text):
        if line.startswith("#"):
            continue
        if header is None:
            header = (number, line)
        else:
            edge_lines.append((number, line))
    if header is None:
        raise ParseError("missing 'hg <n> <m>' header", 1)
    number, line = header
    toks = list(_TOKEN.finditer(line))
    if len(toks) != 3 or toks[0].group() != "hg":
        raise ParseError("header must be 'hg <n> <m>'", number, 1)
    n = _int_token(toks[1], number)
    m = _int_token(toks[2], number)
    if len(edge_lines) != m:
        last = edge_lines[-1][0] + 1 if edge_lines else number + 1
        raise ParseError(f"expected {m} edge lines, found {len(edge_lines)}", last)
    edges = []
    for number, line in edge_lines:
        verts: list[int] = []
        for tok in _TOKEN.finditer(line):
            v = _int_token(tok, number)
            if not 1 <= v <= n:
                raise VertexRangeError(f"vertex {v} outside 1..{n}", number, tok.start() + 1)
            if v in verts:
                raise ParseError(f"vertex {v} repeated in edge", number, tok.start() + 1)
            verts.append(v)
        if not verts:
            raise EmptyEdgeError("empty edge", number)
        edges.append(verts)
    return Hypergraph.from_edges(n, edges)


def serialize_hypergraph(h: Hypergraph, comments: Iterable[str] = ()) -> str:
    if not h.is_standard():
        raise HypergraphError("only hypergraphs on vertices 1..n can be serialized")
    out = [f"# {c}" for c in comments]
    out.append(f"hg {h.n} {h.m}")
    out.extend(" ".join(map(str, sorted(e))) for e in h.edges)
    return "\n".join(out) + "\n"


def parse_expectations(text: str) -> dict[str, str]:
    """Collect ``# expect key=VALUE ...`` sidecar annotations."""
    found: dict[str, str] = {}
    for _, line in _lines(text):
        if line.startswith("# expect "):
            for item in line[len("# expect "):].split():
                key, _, value = item.partition("=")
                found[key] = value
    return found
