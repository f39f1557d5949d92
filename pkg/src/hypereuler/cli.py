"""``hypereuler`` command line.

Exit codes: 0 YES / ok, 1 NO / witness violation, 2 usage, parse or budget
error, 3 a produced witness failed self-verification.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cuts import find_degree2_cuts, find_vertex_cuts
from .generate import STRUCTURES, GeneratorError, GeneratorParams, random_hypergraph
from .hypergraph import HypergraphError, parse_hypergraph, serialize_hypergraph
from .oracle import BudgetExceeded, WitnessViolation, brute_force_decide, verify_witness
from .reducer import Reducer
from .solver import decide_any, decide_direct
from .trails import format_witness, parse_witness

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_hypergraph(_read(path))
    except HypergraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _reduced_solver(reducer: Reducer):
    def solve(h, mode, spanning):
        if not spanning:
            return decide_direct(h, mode, spanning)
        return reducer.decide(h, mode).decision

    return solve


def _report(h, decision, mode: str, spanning: bool, witness_path: str | None, out) -> int:
    if not decision:
        out.write(f"NO\nreason: {decision.reason}\n")
        return EXIT_NO
    try:
        verify_witness(h, decision.witness, mode, spanning)
    except WitnessViolation as exc:
        sys.stderr.write(f"internal error: produced witness fails verification: {exc}\n")
        return EXIT_INTERNAL
    text = format_witness(decision.witness)
    out.write("YES\n" + text)
    if witness_path:
        Path(witness_path).write_text(text)
    return EXIT_YES


def cmd_decide(args, out) -> int:
    h = _load(args.input)
    solve = decide_direct if args.direct else _reduced_solver(Reducer())
    return _report(h, decide_any(h, args.mode, args.spanning, solve), args.mode, args.spanning, args.witness, out)


def cmd_verify(args, out) -> int:
    h = _load(args.input)
    try:
        witness = parse_witness(_read(args.witness))
    except ValueError as exc:
        raise UsageError(f"{args.witness}: {exc}") from None
    try:
        verify_witness(h, witness, args.mode, args.spanning)
    except WitnessViolation as exc:
        out.write(f"violation: {exc}\n")
        return EXIT_NO
    out.write("ok\n")
    return EXIT_YES


def cmd_cuts(args, out) -> int:
    h = _load(args.input)
    cuts = find_vertex_cuts(h, 2)
    seen = {c.S for c in cuts}
    cuts += [c for c in find_degree2_cuts(h) if c.S not in seen]
    for c in cuts:
        tags = []
        if c.minimal and c.all_degree_two():
            tags.append("degree-2" + (" odd" if c.size % 2 else " even"))
        if c.size == 2:
            tags.append(f"|E_S|={len(c.es)} ({'odd' if len(c.es) % 2 else 'even'})")
        out.write(c.describe() + ("  " + "; ".join(tags) if tags else "") + "\n")
    if not cuts:
        out.write("no vertex cuts of size <= 2\n")
    return EXIT_YES


def cmd_reduce(args, out) -> int:
    h = _load(args.input)
    trace = Reducer().decide(h, args.mode)
    out.write(trace.format())
    if trace.decision:
        try:
            verify_witness(h, trace.decision.witness, args.mode, True)
        except WitnessViolation as exc:
            sys.stderr.write(f"internal error: produced witness fails verification: {exc}\n")
            return EXIT_INTERNAL
        out.write("witness:\n" + format_witness(trace.decision.witness))
        return EXIT_YES
    return EXIT_NO


def _pair(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None


def cmd_gen(args, out) -> int:
    try:
        params = GeneratorParams(
            seed=args.seed, n_range=args.n, m_range=args.m, edge_size_range=args.edge_size,
            structure=args.structure, parts=args.parts, cut_size=args.cut_size, es_count=args.es_count,
        )
        h = random_hypergraph(params)
    except GeneratorError as exc:
        raise UsageError(str(exc)) from None
    comments = [f"seed={args.seed} structure={args.structure}"]
    if args.annotate:
        fam = decide_direct(h, "family", True)
        tour = decide_direct(h, "tour", True)
        comments.append(f"expect family={fam.verdict.value} tour={tour.verdict.value}")
    text = serialize_hypergraph(h, comments)
    if args.output in (None, "-"):
        out.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_YES


def cmd_oracle(args, out) -> int:
    h = _load(args.input)
    try:
        decision = brute_force_decide(h, args.mode, args.spanning, args.budget)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    return _report(h, decision, args.mode, args.spanning, None, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypereuler", description="Euler families and tours in hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def mode_args(p, spanning=True):
        p.add_argument("--mode", choices=("family", "tour"), required=True)
        if spanning:
            p.add_argument("--spanning", action="store_true", help="require every vertex to be an anchor")

    p = sub.add_parser("decide", help="decide and print a verified witness")
    mode_args(p)
    how = p.add_mutually_exclusive_group()
    how.add_argument("--direct", action="store_true", help="use the direct solver only")
    how.add_argument("--reduce", action="store_true", help="use cut reductions (default)")
    p.add_argument("--witness", metavar="FILE", help="also write the witness here")
    p.add_argument("input", metavar="INPUT")
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("verify", help="check a witness file")
    mode_args(p)
    p.add_argument("--witness", metavar="FILE", required=True)
    p.add_argument("input", metavar="INPUT")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("cuts", help="list vertex cuts of size <= 2 and degree-2 cuts")
    p.add_argument("input", metavar="INPUT")
    p.set_defaults(run=cmd_cuts)

    p = sub.add_parser("reduce", help="print the reduction trace (spanning variants)")
    p.add_argument("--mode", choices=("family", "tour"), default="family")
    p.add_argument("input", metavar="INPUT")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("gen", help="generate a seeded random hypergraph")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--structure", choices=STRUCTURES, default="uniform")
    p.add_argument("--n", type=_pair, default=(3, 6), metavar="LO:HI")
    p.add_argument("--m", type=_pair, default=(3, 8), metavar="LO:HI")
    p.add_argument("--edge-size", type=_pair, default=(2, 3), metavar="LO:HI")
    p.add_argument("--parts", type=int, default=2)
    p.add_argument("--cut-size", type=int, default=3)
    p.add_argument("--es-count", type=int, default=0)
    p.add_argument("--annotate", action="store_true", help="add '# expect family=.. tour=..' from the direct solver")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force decision (small inputs only)")
    mode_args(p)
    p.add_argument("--budget", type=int, default=24, help="maximum number of flags")
    p.add_argument("input", metavar="INPUT")
    p.set_defaults(run=cmd_oracle)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    try:
        return args.run(args, out)
    except UsageError as exc:
        sys.stderr.write(f"hypereuler: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
