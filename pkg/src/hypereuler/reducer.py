"""Decide spanning Euler families/tours by recursing over 1- and 2-vertex cuts.

Rules, in the order they are tried at each node:

* ``cut-vertex``: family - some ``H_i'`` has a spanning family and every
  component has one in ``H_i`` or ``H_i'``; tour - every ``H_i'`` has a
  spanning tour.
* ``deg2-cut``: a minimal cut of degree-2 vertices of odd size rules out any
  spanning Euler family, hence any spanning tour. For even size, family -
  both ``H_i*`` have spanning families; for tours this is only a necessary
  condition and is used as a filter.
* ``2cut-even`` / ``2cut-odd``: the subset conditions selected by the parity of
  the number of edges equal to ``S`` (see :func:`feasible_subset`).
* ``direct``: no usable cut, hand the hypergraph to the direct solver.

Every YES carries a witness assembled from the witnesses of the derived
hypergraphs and checked with :func:`verify_witness`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cuts import (
    DerivedHypergraph,
    VertexCut,
    derive,
    find_degree2_cuts,
    find_vertex_cuts,
)
from .hypergraph import Flag, Hypergraph, connected_components, induced_subhypergraph
from .oracle import WitnessViolation, verify_witness
from .solver import Decision, DisconnectedError, check_necessary_conditions, decide_direct
from .trails import (
    ClosedTrail,
    CycleDecomposition,
    EulerFamily,
    OpenTrail,
    SContext,
    decompose_even_flags,
    family_from_even_subgraph,
    family_incidence_graph,
    join_paths,
    validate_trail,
)


class AssemblyError(RuntimeError):
    """Part witnesses do not fit together as the applied rule requires."""


# -- subset selection for 2-vertex cuts --------------------------------------------------------

THEOREMS: dict[str, dict] = {
    "even-family": {
        "member": "star",
        "fallback": ("s-component", "component", "minus-u", "minus-v"),
        "parity": 0,
    },
    "even-tour": {"member": "star", "fallback": ("s-component", "double-star"), "parity": 0},
    "odd-family": {"member": "s-component", "fallback": ("component", "star"), "parity": 1},
    "odd-tour": {"member": "s-component", "fallback": ("star",), "parity": 1},
}


def theorem_kinds(theorem: str) -> tuple[str, ...]:
    entry = THEOREMS[theorem]
    kinds = (entry["member"],) + entry["fallback"]
    if theorem.startswith("even") and "s-component" not in kinds:
        kinds += ("s-component",)
    return kinds


def _empty_choice(flags: Mapping[str, Sequence[bool]], theorem: str) -> dict[int, str] | None:
    """Component assignment forced by the ``I = {}`` clause, or None if it fails."""
    k = len(flags["star"]) if "star" in flags else len(flags["s-component"])
    for i in range(k):
        if flags["s-component"][i]:
            return {i + 1: "s-component"}
    if theorem == "even-family":
        for s in range(k):
            for t in range(k):
                if s != t and flags["minus-u"][s] and flags["minus-v"][t]:
                    return {s + 1: "minus-u", t + 1: "minus-v"}
    return None


def feasible_subset(flags: Mapping[str, Sequence[bool]], theorem: str) -> frozenset[int] | None:
    """Least subset ``I`` (even theorems) or ``J`` (odd theorems) meeting the theorem's clauses.

    ``flags[kind][i - 1]`` says whether the derived hypergraph of that kind for
    component ``i`` admits the structure being decided. Components whose
    fallbacks all fail must be in the subset; the subset is then padded to the
    required parity with further members, and the even theorems' extra clause
    for the empty subset is enforced.
    """
    entry = THEOREMS[theorem]
    member = flags[entry["member"]]
    k = len(member)
    fallback_ok = [any(flags[f][i] for f in entry["fallback"]) for i in range(k)]
    forced = [i for i in range(k) if not fallback_ok[i]]
    if any(not member[i] for i in forced):
        return None
    spare = [i for i in range(k) if member[i] and fallback_ok[i]]
    chosen = set(forced)
    if len(chosen) % 2 != entry["parity"]:
        if not spare:
            return None
        chosen.add(spare.pop(0))
    if not chosen and entry["parity"] == 0 and _empty_choice(flags, theorem) is None:
        if len(spare) < 2:
            return None
        chosen = {spare[0], spare[1]}
    return frozenset(i + 1 for i in chosen)


def choose_parts(flags: Mapping[str, Sequence[bool]], theorem: str, subset: frozenset[int]) -> dict[int, str]:
    """Which derived hypergraph supplies the witness for each component."""
    entry = THEOREMS[theorem]
    k = len(flags[entry["member"]])
    choice = {i: entry["member"] for i in subset}
    if not subset and entry["parity"] == 0:
        forced = _empty_choice(flags, theorem)
        if forced is None:
            raise ValueError("empty subset without the clause that allows it")
        choice.update(forced)
    for i in range(1, k + 1):
        if i in choice:
            continue
        for f in entry["fallback"]:
            if flags[f][i - 1]:
                choice[i] = f
                break
        else:
            raise ValueError(f"component {i} has no admissible derived hypergraph")
    return choice


# -- RC normalisation -----------------------------------------------------------------------------


def _check_spanning_decomposition(h: Hypergraph, cycles: Sequence[ClosedTrail]) -> None:
    for c in cycles:
        validate_trail(h, c)
        if not c.is_cycle():
            raise ValueError(f"{c} is not a cycle")
    flags = family_incidence_graph(cycles)
    covered_e = {e for _, e in flags}
    covered_v = {v for v, _ in flags}
    if covered_e != set(h.edge_indices()) or covered_v != set(h.vertices):
        raise ValueError("not a spanning cycle decomposition")


def split_at(cycle: ClosedTrail, u: int, v: int) -> tuple[OpenTrail, OpenTrail]:
    """The two ``(u, v)``-paths of a cycle through both ``u`` and ``v``."""
    c = cycle.rotated(cycle.anchors.index(u))
    p = c.anchors.index(v)
    first = OpenTrail(c.anchors[: p + 1], c.edges[:p])
    second = OpenTrail(c.anchors[p:] + (u,), c.edges[p:]).reversed()
    return first, second


def _owner(ctx: SContext, path: OpenTrail) -> int | str:
    if len(path.edges) == 1 and path.edges[0] in ctx.es:
        return "S"
    return ctx.edge_component[path.edges[0]]


def _potential(ctx: SContext, cycles) -> tuple[int, int]:
    rc = sum(ctx.rc_counts(cycles).values())
    return rc, sum(1 for c in cycles if ctx.s_type(c).as_tuple() == (2, 1, 1))


def _rewire(ctx: SContext, c1: ClosedTrail, c2: ClosedTrail, pick) -> list[ClosedTrail]:
    """Swap the ``(u, v)``-paths of two cycles: picked halves together, the rest together."""
    u, v = sorted(ctx.S)
    halves = []
    for c in (c1, c2):
        p, q = split_at(c, u, v)
        halves.append((p, q) if pick(p) else (q, p))
    (a1, b1), (a2, b2) = halves
    out = []
    for t in (join_paths(a1, a2), join_paths(b1, b2)):
        out += decompose_even_flags(t.flags())
    return out


def normalize_cycle_decomposition(
    h: Hypergraph, S, decomposition: CycleDecomposition | Sequence[ClosedTrail]
) -> CycleDecomposition:
    """Rewrite a spanning cycle decomposition so that each component of ``H \\ S`` sees at
    most one cycle requiring completion and at most one cycle has S-type (2,1,1).

    Pairs of offending cycles are re-split through ``S`` until neither the
    total requiring-completion count nor the (2,1,1) count can drop.
    """
    ctx = SContext.build(h, S)
    cycles = list(decomposition.cycles if isinstance(decomposition, CycleDecomposition) else decomposition)
    _check_spanning_decomposition(h, cycles)
    before = family_incidence_graph(cycles)
    k = len(ctx.components)
    for _ in range(4 * len(cycles) + 4):
        types = [ctx.s_type(c) for c in cycles]
        step = None
        for j in range(1, k + 1):
            rc = [x for x, c in enumerate(cycles) if types[x].requires_completion() and j in ctx.members(c)]
            if len(rc) >= 2:
                step = (rc[0], rc[1], lambda p, j=j: _owner(ctx, p) == j)
                break
        if step is None:
            t211 = [x for x, t in enumerate(types) if t.as_tuple() == (2, 1, 1)]
            if len(t211) >= 2:
                step = (t211[0], t211[1], lambda p: _owner(ctx, p) != "S")
        if step is None:
            break
        x, y, pick = step
        old = _potential(ctx, cycles)
        cycles = [c for z, c in enumerate(cycles) if z not in (x, y)] + _rewire(ctx, cycles[x], cycles[y], pick)
        if not _potential(ctx, cycles) < old:
            raise RuntimeError("normalisation step did not decrease the potential")
    else:
        raise RuntimeError("normalisation did not terminate")
    if family_incidence_graph(cycles) != before:
        raise RuntimeError("normalisation changed the incidence graph")
    return CycleDecomposition.of(cycles, ctx.S)


# -- witness assembly ---------------------------------------------------------------------------------


def _lift_flags(dh: DerivedHypergraph, witness: EulerFamily) -> set[Flag]:
    d = dh.hypergraph
    out = set()
    for x, j in witness.flags():
        parent = d.parent_index(j)
        if parent is not None:
            out.add((x, parent))
    return out


def _lift(dh: DerivedHypergraph, t):
    d = dh.hypergraph
    edges = tuple(d.parent_index(j) for j in t.edges)
    if None in edges:
        raise AssemblyError(f"{dh.label}: synthetic copy of S left in {t}")
    return type(t)(t.anchors, edges)


def _two_cut_pieces(
    dh: DerivedHypergraph, witness: EulerFamily, S: frozenset[int]
) -> tuple[list[ClosedTrail], OpenTrail | None]:
    """Lifted cycles of one part, minus cycles inside ``S``, plus its (u, v)-path if any."""
    d = dh.hypergraph
    cycles = list(decompose_even_flags(witness.flags()))
    if dh.kind not in ("s-component", "star", "double-star"):
        return [_lift(dh, c) for c in cycles], None
    ctx = SContext.build(d, S)
    cycles = normalize_cycle_decomposition(d, S, cycles).cycles
    u, v = sorted(S)
    kept, path = [], None
    for c in cycles:
        st = ctx.s_type(c).as_tuple()
        if st == (2, 2, 0):
            continue
        if st == (2, 1, 1):
            if path is not None:
                raise AssemblyError(f"{dh.label}: more than one (2,1,1) cycle after normalisation")
            p, q = split_at(c, u, v)
            path = _lift(dh, q if _owner(ctx, p) == "S" else p)
            continue
        kept.append(_lift(dh, c))
    return kept, path


def assemble_witness(
    h: Hypergraph,
    cut: VertexCut,
    parts: Mapping[int, tuple[DerivedHypergraph, EulerFamily]],
    rule: str,
    mode: str,
    subset: frozenset[int] = frozenset(),
) -> EulerFamily:
    """Combine verified witnesses of derived hypergraphs into a witness for ``h``."""
    if set(parts) != set(range(1, cut.k + 1)):
        raise AssemblyError(f"need one part per component, got {sorted(parts)}")
    for i, (dh, w) in parts.items():
        try:
            verify_witness(dh.hypergraph, w, mode, True)
        except WitnessViolation as exc:
            raise AssemblyError(f"part {dh.label} is not a valid witness: {exc}") from None
    if rule in ("cut-vertex", "deg2-cut"):
        flags: set[Flag] = set()
        for dh, w in parts.values():
            flags |= _lift_flags(dh, w)
    elif rule in ("2cut-even", "2cut-odd"):
        flags = set(_two_cut_flags(h, cut, parts, rule, subset))
    else:
        raise ValueError(f"unknown rule {rule!r}")
    try:
        family = family_from_even_subgraph(h, flags, require_spanning=True)
        verify_witness(h, family, mode, True)
    except (ValueError, WitnessViolation) as exc:
        raise AssemblyError(f"assembled {rule} witness is invalid: {exc}") from None
    return family


def _two_cut_flags(h, cut, parts, rule, subset) -> frozenset[Flag]:
    S = frozenset(cut.S)
    u, v = cut.S
    cycles: list[ClosedTrail] = []
    paths: dict[int, OpenTrail] = {}
    for i, (dh, w) in sorted(parts.items()):
        kept, path = _two_cut_pieces(dh, w, S)
        cycles += kept
        if path is not None:
            paths[i] = path
    if set(paths) != set(subset):
        raise AssemblyError(f"(u,v)-paths found for {sorted(paths)}, expected {sorted(subset)}")
    es = list(cut.es)
    order = sorted(subset)
    if rule == "2cut-odd":
        if not es or len(order) % 2 == 0:
            raise AssemblyError("odd rule needs an odd subset and an edge equal to S")
        ell = order.pop(0)
        cycles.append(join_paths(paths[ell], OpenTrail((u, v), (es.pop(0),))))
    if len(order) % 2 or len(es) % 2:
        raise AssemblyError("paths or copies of S cannot be paired")
    for a, b in zip(order[0::2], order[1::2]):
        cycles.append(join_paths(paths[a], paths[b]))
    for e, f in zip(es[0::2], es[1::2]):
        cycles.append(ClosedTrail((u, v), (e, f)))
    return family_incidence_graph(cycles)


# -- recursive decision --------------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionTrace:
    rule: str
    decision: Decision
    hypergraph: Hypergraph = field(repr=False, compare=False)
    S: tuple[int, ...] = ()
    subset: tuple[int, ...] | None = None
    choice: tuple[tuple[int, str], ...] = ()
    children: tuple[tuple[str, ReductionTrace], ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return self.hypergraph.n

    @property
    def m(self) -> int:
        return self.hypergraph.m

    def nodes(self):
        """Every node of the tree, depth first (shared memoised subtrees repeat)."""
        yield self
        for _, child in self.children:
            yield from child.nodes()

    @property
    def verdict(self) -> str:
        return self.decision.verdict.value

    def lines(self, label: str = "H", depth: int = 0) -> list[str]:
        parts = [f"{'  ' * depth}{label}: {self.verdict} rule={self.rule} n={self.n} m={self.m}"]
        if self.S:
            parts.append("S={" + ",".join(map(str, self.S)) + "}")
        if self.subset is not None:
            parts.append("subset={" + ",".join(map(str, self.subset)) + "}")
        if self.choice:
            parts.append("use=" + ",".join(f"{i}:{k}" for i, k in self.choice))
        if self.decision.reason:
            parts.append(f"reason={self.decision.reason!r}")
        out = [" ".join(parts)]
        for child_label, child in self.children:
            out += child.lines(child_label, depth + 1)
        return out

    def format(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _derived_size(h: Hypergraph, cut: VertexCut) -> int:
    total = 0
    for c in cut.components:
        keep = c | set(cut.S)
        total += len(keep) + sum(1 for e in h.edges if e <= keep)
    return total


class Reducer:
    """Recursive cut-driven decision with a memo keyed on the exact hypergraph encoding."""

    def __init__(self, degree2_max: int = 4):
        self.memo: dict[tuple, ReductionTrace] = {}
        self.degree2_max = degree2_max

    def decide(self, h: Hypergraph, mode: str) -> ReductionTrace:
        if mode not in ("family", "tour"):
            raise ValueError(f"unknown mode {mode!r}")
        if len(connected_components(h)) > 1:
            raise DisconnectedError("input hypergraph is disconnected; decide each component separately")
        return self._solve(h, mode)

    def _solve(self, h: Hypergraph, mode: str) -> ReductionTrace:
        key = (mode, h.key())
        if key not in self.memo:
            self.memo[key] = self._solve_uncached(h, mode)
        return self.memo[key]

    def _leaf(self, h, rule, decision, S=()) -> ReductionTrace:
        return ReductionTrace(rule, decision, h, tuple(S))

    def _solve_uncached(self, h: Hypergraph, mode: str) -> ReductionTrace:
        comps = connected_components(h)
        if len(comps) > 1:
            return self._disconnected(h, mode, comps)
        nc = check_necessary_conditions(h, include_iv=False)
        if not nc.passed:
            return self._leaf(h, "direct", Decision.no(nc.reason))
        cuts = find_vertex_cuts(h, 2) if h.n >= 3 else []
        deg2 = [c for c in cuts if c.minimal and c.all_degree_two()]
        if self.degree2_max > 2:
            deg2 += [c for c in find_degree2_cuts(h, self.degree2_max) if c.size > 2]
        ones = [c for c in cuts if c.size == 1]
        if ones:
            return self._cut_vertex(h, ones[0], mode)
        for c in deg2:
            if c.size % 2:
                return self._leaf(h, "deg2-cut", Decision.no("odd cut of degree-2 vertices"), c.S)
        filters: list[tuple[str, ReductionTrace]] = []
        for c in deg2:
            if mode == "family":
                return self._deg2_even(h, c)
            checks = [(f"filter {d.label}", self._solve(d.hypergraph, mode)) for d in self._derive_all(h, c, "star")]
            filters += checks
            if not all(t.decision for _, t in checks):
                return ReductionTrace(
                    "deg2-cut", Decision.no("an S*-component has no spanning tour"), h, c.S,
                    children=tuple(checks),
                )
        twos = [c for c in cuts if c.size == 2]
        if twos:
            best = min(twos, key=lambda c: (_derived_size(h, c), c.S))
            return self._two_cut(h, best, mode, filters)
        trace = self._leaf(h, "direct", decide_direct(h, mode, True))
        if filters:
            trace = ReductionTrace(trace.rule, trace.decision, h, children=tuple(filters))
        return trace

    def _derive_all(self, h, cut, kind) -> list[DerivedHypergraph]:
        return [derive(h, cut, kind, i) for i in range(1, cut.k + 1)]

    def _disconnected(self, h, mode, comps) -> ReductionTrace:
        if mode == "tour":
            return self._leaf(h, "components", Decision.no("disconnected"))
        children, trails = [], []
        for i, c in enumerate(comps, 1):
            part = induced_subhypergraph(h, c.vertices)
            t = self._solve(part, mode)
            children.append((f"C{i}", t))
            if not t.decision:
                return ReductionTrace("components", Decision.no(f"component {i} fails"), h,
                                      children=tuple(children))
            trails += [x.relabel_edges(part.parent_index) for x in t.decision.witness.trails]
        return ReductionTrace("components", Decision.yes(EulerFamily.of(trails, True)), h,
                              children=tuple(children))

    def _finish(self, h, cut, mode, rule, subset, choice, children, parts, reason_no) -> ReductionTrace:
        children = tuple(children)
        if choice is None:
            return ReductionTrace(rule, Decision.no(reason_no), h, cut.S, children=children)
        witness = assemble_witness(h, cut, parts, rule, mode, frozenset(subset or ()))
        return ReductionTrace(
            rule, Decision.yes(witness), h, cut.S,
            subset=None if subset is None else tuple(sorted(subset)),
            choice=tuple(sorted(choice.items())),
            children=children,
        )

    def _cut_vertex(self, h, cut, mode) -> ReductionTrace:
        kinds = ("s-component", "component") if mode == "family" else ("s-component",)
        results, children = {}, []
        for i in range(1, cut.k + 1):
            for kind in kinds:
                d = derive(h, cut, kind, i)
                t = self._solve(d.hypergraph, mode)
                results[(kind, i)] = (d, t)
                children.append((d.label, t))
        ok = {key: bool(t.decision) for key, (_, t) in results.items()}
        choice = None
        if mode == "family":
            anchored = [i for i in range(1, cut.k + 1) if ok[("s-component", i)]]
            if anchored and all(ok[("s-component", i)] or ok[("component", i)] for i in range(1, cut.k + 1)):
                choice = {i: "s-component" if ok[("s-component", i)] else "component" for i in range(1, cut.k + 1)}
        elif all(ok[("s-component", i)] for i in range(1, cut.k + 1)):
            choice = {i: "s-component" for i in range(1, cut.k + 1)}
        parts = self._parts(results, choice)
        return self._finish(h, cut, mode, "cut-vertex", None, choice, children, parts,
                            "cut-vertex conditions fail")

    def _deg2_even(self, h, cut) -> ReductionTrace:
        if cut.k != 2:
            raise RuntimeError(f"minimal degree-2 cut with {cut.k} components")
        results, children = {}, []
        for d in self._derive_all(h, cut, "star"):
            t = self._solve(d.hypergraph, "family")
            results[("star", d.index)] = (d, t)
            children.append((d.label, t))
        choice = {1: "star", 2: "star"} if all(t.decision for _, t in results.values()) else None
        return self._finish(h, cut, "family", "deg2-cut", None, choice, children,
                            self._parts(results, choice), "an S*-component has no spanning family")

    def _two_cut(self, h, cut, mode, filters) -> ReductionTrace:
        parity = "even" if len(cut.es) % 2 == 0 else "odd"
        theorem = f"{parity}-{mode}"
        rule = f"2cut-{parity}"
        results, children = {}, list(filters)
        flags: dict[str, list[bool]] = {}
        for kind in theorem_kinds(theorem):
            flags[kind] = []
            for i in range(1, cut.k + 1):
                d = derive(h, cut, kind, i)
                t = self._solve(d.hypergraph, mode)
                results[(kind, i)] = (d, t)
                children.append((d.label, t))
                flags[kind].append(bool(t.decision))
        subset = feasible_subset(flags, theorem)
        choice = None if subset is None else choose_parts(flags, theorem, subset)
        return self._finish(h, cut, mode, rule, subset, choice, children, self._parts(results, choice),
                            f"no admissible subset ({theorem})")

    @staticmethod
    def _parts(results, choice):
        if choice is None:
            return {}
        out = {}
        for i, kind in choice.items():
            d, t = results[(kind, i)]
            out[i] = (d, t.decision.witness)
        return out


def decide_reduced(h: Hypergraph, mode: str, reducer: Reducer | None = None) -> tuple[Decision, ReductionTrace]:
    """Decide a spanning Euler family (``mode="family"``) or tour (``"tour"``) through cut reductions."""
    trace = (reducer or Reducer()).decide(h, mode)
    return trace.decision, trace
