"""Vertex cuts of size 1 and 2, degree-2 cuts, and derived hypergraphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .hypergraph import Hypergraph, connected_components, delete_vertices, induced_subhypergraph

KINDS = ("component", "s-component", "star", "double-star", "minus-u", "minus-v")


class CutError(ValueError):
    pass


@dataclass(frozen=True)
class VertexCut:
    S: tuple[int, ...]
    components: tuple[frozenset[int], ...]
    minimal: bool
    degree_profile: tuple[tuple[int, int], ...]
    es: tuple[int, ...]  # edges equal to S (2-cuts only)

    @property
    def size(self) -> int:
        return len(self.S)

    @property
    def k(self) -> int:
        return len(self.components)

    def all_degree_two(self) -> bool:
        return all(d == 2 for _, d in self.degree_profile)

    def describe(self) -> str:
        comps = " | ".join(",".join(map(str, sorted(c))) for c in self.components)
        degs = ",".join(f"{v}:{d}" for v, d in self.degree_profile)
        return (
            f"S={{{','.join(map(str, self.S))}}} components={self.k} [{comps}] "
            f"minimal={'yes' if self.minimal else 'no'} deg={degs} E_S={list(self.es)}"
        )


# -- articulation vertices ---------------------------------------------------------------


def articulation_vertices(h: Hypergraph) -> set[int]:
    """Vertices ``x`` whose removal splits the component of ``h`` containing ``x``.

    Runs Tarjan's low-point DFS on the incidence graph. A DFS subtree only
    counts as split off when it contains a v-vertex (a subtree made of a lone
    e-vertex is an edge ``{x}``, which disappears in ``H \\ x``).
    """
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {(0, v): [] for v in h.vertices}
    for j, e in enumerate(h.edges, 1):
        adj[(1, j)] = []
        for v in sorted(e):
            adj[(0, v)].append((1, j))
            adj[(1, j)].append((0, v))
    disc: dict = {}
    low: dict = {}
    has_v: dict = {}
    found: set[int] = set()
    clock = 0
    for root in sorted(x for x in adj if x[0] == 0):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        has_v[root] = True
        split_children = 0
        stack = [(root, None, iter(adj[root]))]
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y == parent:
                    continue
                if y in disc:
                    low[x] = min(low[x], disc[y])
                else:
                    disc[y] = low[y] = clock
                    clock += 1
                    has_v[y] = y[0] == 0
                    stack.append((y, x, iter(adj[y])))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[x])
            has_v[parent] = has_v[parent] or has_v[x]
            if parent[0] == 0 and low[x] >= disc[parent] and has_v[x]:
                if parent == root:
                    split_children += 1
                else:
                    found.add(parent[1])
        if split_children >= 2:
            found.add(root[1])
    return found


def _profile(h: Hypergraph, S) -> tuple[tuple[int, int], ...]:
    return tuple((v, h.degree(v)) for v in S)


def _make_cut(h: Hypergraph, S: tuple[int, ...], minimal: bool) -> VertexCut:
    comps = tuple(c.vertices for c in connected_components(delete_vertices(h, S)))
    es = tuple(j for j, e in enumerate(h.edges, 1) if e == frozenset(S)) if len(S) == 2 else ()
    cut = VertexCut(S, comps, minimal, _profile(h, S), es)
    check_cut_lemma(h, cut)
    return cut


def check_cut_lemma(h: Hypergraph, cut: VertexCut) -> None:
    """Verify the structural facts every (minimal) vertex cut must satisfy."""
    S = frozenset(cut.S)
    if cut.k < 2:
        raise CutError(f"{sorted(S)} does not disconnect the hypergraph")
    where = {v: i for i, c in enumerate(cut.components) for v in c}
    for j, e in enumerate(h.edges, 1):
        if e & S:
            met = {where[v] for v in e - S}
            if len(met) > 1:
                raise CutError(f"edge {j} meets {len(met)} components of H \\ S")
    if cut.minimal:
        for v in S:
            nbrs = h.neighbourhood(v)
            for i, c in enumerate(cut.components, 1):
                if not nbrs & c:
                    raise CutError(f"vertex {v} of minimal cut is not adjacent to component {i}")
        inside = [j for j, e in enumerate(h.edges, 1) if e <= S]
        bound = min(sum(1 for j, e in enumerate(h.edges, 1) if v in e and j not in inside) for v in S)
        if not 2 <= cut.k <= bound:
            raise CutError(f"c(H \\ S)={cut.k} violates 2 <= c <= {bound}")


def find_vertex_cuts(h: Hypergraph, max_size: int = 2) -> list[VertexCut]:
    """All vertex sets ``S`` with ``|S| <= max_size`` whose removal disconnects ``h``."""
    if max_size not in (1, 2):
        raise ValueError("max_size must be 1 or 2")
    if h.n < max_size + 1:
        return []
    singles = sorted(articulation_vertices(h))
    cuts = [_make_cut(h, (v,), True) for v in singles]
    if max_size == 2 and h.n >= 3:
        single_set = set(singles)
        for x in h.vertices:
            rest = delete_vertices(h, [x])
            comps = connected_components(rest)
            inner = articulation_vertices(rest) if len(comps) == 1 else set()
            for y in rest.vertices:
                if y <= x:
                    continue
                if len(comps) >= 3:
                    splits = True
                elif len(comps) == 2:
                    splits = not any(c.vertices == {y} for c in comps)
                else:
                    splits = y in inner
                if splits:
                    S = (x, y)
                    cuts.append(_make_cut(h, S, x not in single_set and y not in single_set))
    return cuts


def _disconnects(h: Hypergraph, S) -> bool:
    if len(S) >= h.n:
        return False
    return len(connected_components(delete_vertices(h, S))) >= 2


def find_degree2_cuts(h: Hypergraph, max_size: int = 4, max_subsets: int = 20000) -> list[VertexCut]:
    """Minimal vertex cuts made only of degree-2 vertices, sizes 1..max_size.

    Only subsets of degree-2 vertices are examined; sizes whose subset count
    exceeds ``max_subsets`` are skipped.
    """
    deg = h.degrees()
    pool = [v for v in h.vertices if deg[v] == 2]
    found: list[VertexCut] = []
    cut_sets: list[frozenset[int]] = []
    for size in range(1, max_size + 1):
        if comb(len(pool), size) > max_subsets or size >= h.n:
            break
        for S in combinations(pool, size):
            fs = frozenset(S)
            if any(c < fs for c in cut_sets):
                continue
            if not _disconnects(h, S):
                continue
            # every proper subset of a minimal cut is a non-cut; subsets outside the pool
            # are irrelevant because S itself only contains pool vertices
            if any(_disconnects(h, sub) for r in range(1, size) for sub in combinations(S, r)):
                continue
            cut_sets.append(fs)
            found.append(_make_cut(h, S, True))
    return found


# -- derived hypergraphs -------------------------------------------------------------------


@dataclass(frozen=True)
class DerivedHypergraph:
    kind: str
    index: int  # 1-based component number
    hypergraph: Hypergraph

    @property
    def label(self) -> str:
        suffix = {
            "component": "",
            "s-component": "'",
            "star": "*",
            "double-star": "**",
            "minus-u": "'\\u",
            "minus-v": "'\\v",
        }[self.kind]
        return f"H{self.index}{suffix}"


def _with_copies(h: Hypergraph, S: frozenset[int], copies: int) -> Hypergraph:
    origin = tuple(h.origin) if h.origin is not None else tuple(h.edge_indices())
    return Hypergraph(h.vertices, h.edges + (S,) * copies, origin + (None,) * copies)


def _compose(outer: Hypergraph, inner: Hypergraph) -> Hypergraph:
    """Re-express ``inner`` (derived from ``outer``) against ``outer``'s parent."""
    origin = tuple(None if j is None else outer.parent_index(j) for j in inner.origin)
    return Hypergraph(inner.vertices, inner.edges, origin)


def derive(h: Hypergraph, cut: VertexCut, kind: str, i: int) -> DerivedHypergraph:
    """One derived hypergraph of ``h`` for component ``i`` (1-based)."""
    S = frozenset(cut.S)
    comp = cut.components[i - 1]
    if kind == "component":
        return DerivedHypergraph(kind, i, induced_subhypergraph(h, comp))
    keep = comp | S
    idx = tuple(j for j, e in enumerate(h.edges, 1) if e <= keep)
    s_comp = Hypergraph(tuple(sorted(keep)), tuple(h.edges[j - 1] for j in idx), idx)
    if kind == "s-component":
        return DerivedHypergraph(kind, i, s_comp)
    if kind == "star":
        if len(S) % 2:
            raise CutError("S*-components need an even-size cut")
        return DerivedHypergraph(kind, i, _with_copies(s_comp, S, len(S) // 2))
    if len(S) != 2:
        raise CutError(f"{kind} is only defined for 2-vertex cuts")
    u, v = cut.S
    if kind == "double-star":
        return DerivedHypergraph(kind, i, _with_copies(s_comp, S, 2))
    if kind in ("minus-u", "minus-v"):
        drop = u if kind == "minus-u" else v
        return DerivedHypergraph(kind, i, _compose(s_comp, induced_subhypergraph(s_comp, keep - {drop})))
    raise ValueError(f"unknown kind {kind!r}")


def derived_hypergraphs(h: Hypergraph, cut: VertexCut) -> list[DerivedHypergraph]:
    kinds = ["component", "s-component"]
    if cut.size % 2 == 0:
        kinds.append("star")
    if cut.size == 2:
        kinds += ["double-star", "minus-u", "minus-v"]
    return [derive(h, cut, kind, i) for i in range(1, cut.k + 1) for kind in kinds]
