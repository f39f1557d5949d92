from __future__ import annotations

import itertools

from hypothesis import assume
from hypothesis import strategies as st

from hypereuler.hypergraph import Hypergraph, is_connected


@st.composite
def hypergraphs(draw, max_n=5, max_m=6, min_size=1, max_size=4, connected=False):
    n = draw(st.integers(1, max_n))
    hi = min(max_size, n)
    lo = min(min_size, hi)
    m = draw(st.integers(0, max_m))
    edges = [
        draw(st.frozensets(st.integers(1, n), min_size=lo, max_size=hi))
        for _ in range(m)
    ]
    h = Hypergraph.from_edges(n, edges)
    if connected:
        assume(is_connected(h))
    return h


def all_multisets(n: int, max_m: int, sizes=(2, 3, 4)):
    """Every hypergraph on 1..n with at most max_m edges of the given sizes (edge multisets)."""
    pool = [frozenset(c) for k in sizes if k <= n for c in itertools.combinations(range(1, n + 1), k)]
    for m in range(max_m + 1):
        for combo in itertools.combinations_with_replacement(range(len(pool)), m):
            yield Hypergraph.from_edges(n, [pool[i] for i in combo])


def components_by_bfs(h: Hypergraph, removed=()) -> int:
    """Number of connected components of ``h`` minus ``removed``, by plain BFS over vertices."""
    left = set(h.vertices) - set(removed)
    seen, count = set(), 0
    for s in sorted(left):
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for e in h.edges:
                if x in e:
                    for y in e:
                        if y in left and y not in seen:
                            seen.add(y)
                            stack.append(y)
    return count


def random_cycles(flags, rng):
    """A random cycle decomposition of an even flag graph (random walks until a node repeats)."""
    from hypereuler.trails import ClosedTrail

    adj = {}
    for v, e in flags:
        adj.setdefault((0, v), set()).add((1, e))
        adj.setdefault((1, e), set()).add((0, v))
    cycles = []
    while any(adj.values()):
        walk = [rng.choice(sorted(x for x in adj if adj[x] and x[0] == 0))]
        while True:
            y = rng.choice(sorted(adj[walk[-1]]))
            adj[walk[-1]].discard(y)
            adj[y].discard(walk[-1])
            if y in walk:
                loop = walk[walk.index(y):]
                del walk[walk.index(y) + 1:]
                if loop[0][0] == 1:
                    loop = loop[1:] + loop[:1]
                cycles.append(ClosedTrail(tuple(x for _, x in loop[0::2]), tuple(x for _, x in loop[1::2])))
                if not adj[walk[-1]]:
                    break
            else:
                walk.append(y)
    return cycles


def condition_iv_by_definition(h: Hypergraph) -> bool:
    """No k >= 2 edges share more than k vertices of degree k."""
    deg = h.degrees()
    for k in range(2, h.m + 1):
        for sub in itertools.combinations(h.edges, k):
            common = frozenset.intersection(*sub)
            if sum(1 for v in common if deg[v] == k) > k:
                return False
    return True


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
