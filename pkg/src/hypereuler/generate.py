"""Seeded random hypergraphs, optionally with a planted vertex cut.

Randomness comes from xorshift64* seeded through splitmix64, so a corpus is
reproducible from its seeds alone on any platform:

    x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x * 0x2545F4914F6CDD1D  (mod 2**64)

Bounded integers are drawn by rejection sampling on the 64-bit output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import Hypergraph, is_connected

MASK = (1 << 64) - 1
STRUCTURES = ("uniform", "glued-1cut", "glued-2cut", "deg2-cut")


class GeneratorError(ValueError):
    pass


class XorShift64Star:
    def __init__(self, seed: int):
        z = (seed + 0x9E3779B97F4A7C15) & MASK
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        self.state = (z ^ (z >> 31)) or 1

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            r = self.next()
            if r < limit:
                return lo + r % span

    def coin(self) -> bool:
        return self.next() >> 63 == 1

    def sample(self, items, k: int) -> list:
        """``k`` distinct items, by a partial Fisher-Yates shuffle."""
        pool = list(items)
        for i in range(k):
            j = self.randint(i, len(pool) - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def shuffle(self, items) -> list:
        return self.sample(items, len(items))


@dataclass(frozen=True)
class GeneratorParams:
    seed: int
    n_range: tuple[int, int] = (3, 6)
    m_range: tuple[int, int] = (3, 8)
    edge_size_range: tuple[int, int] = (2, 3)
    structure: str = "uniform"
    parts: int = 2  # components glued at the cut (glued-2cut only uses more than 2)
    cut_size: int = 3  # |S| for deg2-cut
    es_count: int = 0  # copies of the edge {u, v} for glued-2cut
    max_attempts: int = 1000

    def __post_init__(self):
        for name in ("n_range", "m_range", "edge_size_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise GeneratorError(f"{name} {lo}..{hi} is empty")
        if self.n_range[0] < 1 or self.m_range[0] < 0 or self.edge_size_range[0] < 1:
            raise GeneratorError("ranges must be positive (m may be 0)")
        if self.structure not in STRUCTURES:
            raise GeneratorError(f"unknown structure {self.structure!r}")
        if self.parts < 2:
            raise GeneratorError("a planted cut needs at least two parts")
        if self.cut_size < 1 or self.es_count < 0:
            raise GeneratorError("cut_size must be positive and es_count non-negative")
        if not 0 <= self.seed <= MASK:
            raise GeneratorError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Instance:
    hypergraph: Hypergraph
    planted: tuple[int, ...]  # the planted cut, empty for uniform instances


def _uniform_edges(rng: XorShift64Star, p: GeneratorParams) -> tuple[int, list[set[int]]]:
    lo_s, hi_s = p.edge_size_range
    for _ in range(p.max_attempts):
        n = rng.randint(*p.n_range)
        if n == 1:
            return 1, []
        if lo_s > n:
            continue
        m = rng.randint(*p.m_range)
        edges = [set(rng.sample(range(1, n + 1), rng.randint(lo_s, min(hi_s, n)))) for _ in range(m)]
        if is_connected(Hypergraph.from_edges(n, edges)):
            return n, edges
    raise GeneratorError(f"no connected hypergraph within {p.max_attempts} attempts")


def _attach(rng: XorShift64Star, edges: list[set[int]], verts: list[int], x: int, exactly_one: bool) -> None:
    """Make ``x`` adjacent to a part: put it into some of the part's edges, or a new edge ``{x, w}``."""
    if not edges or rng.coin():
        edges.append({x, verts[rng.randint(0, len(verts) - 1)]})
        if exactly_one:
            return
    if exactly_one:
        edges[rng.randint(0, len(edges) - 1)].add(x)
        return
    for j in rng.sample(range(len(edges)), rng.randint(1, len(edges))):
        edges[j].add(x)


def random_instance(p: GeneratorParams) -> Instance:
    rng = XorShift64Star(p.seed)
    if p.structure == "uniform":
        n, edges = _uniform_edges(rng, p)
        return Instance(Hypergraph.from_edges(n, edges), ())
    count = p.parts if p.structure == "glued-2cut" else 2
    cut = {"glued-1cut": 1, "glued-2cut": 2, "deg2-cut": p.cut_size}[p.structure]
    parts, offset = [], 0
    for _ in range(count):
        n, edges = _uniform_edges(rng, p)
        verts = list(range(offset + 1, offset + n + 1))
        parts.append((verts, [{v + offset for v in e} for e in edges]))
        offset += n
    S = list(range(offset + 1, offset + cut + 1))
    all_edges: list[set[int]] = []
    for verts, edges in parts:
        for x in S:
            _attach(rng, edges, verts, x, exactly_one=p.structure == "deg2-cut")
        all_edges += edges
    if p.structure == "glued-2cut":
        all_edges += [set(S) for _ in range(p.es_count)]
    total = offset + cut
    perm = [0] + rng.shuffle(range(1, total + 1))  # old label -> new label
    relabelled = [{perm[v] for v in e} for e in all_edges]
    order = rng.shuffle(range(len(relabelled)))
    h = Hypergraph.from_edges(total, [relabelled[j] for j in order])
    return Instance(h, tuple(sorted(perm[x] for x in S)))


def random_hypergraph(p: GeneratorParams) -> Hypergraph:
    """Deterministic function of ``p``; always connected with no empty edges."""
    return random_instance(p).hypergraph
