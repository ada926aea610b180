"""Command-line front end.

Exit codes: 0 success / all confirmed, 1 counterexample found (or the
checked assignment is not a degree-coloring), 2 usage error, 3 input parse
error, 4 budget exhausted or nothing found, 5 a proved property failed.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import named
from .degreecoloring import (
    check_cover_condition,
    check_degree_condition,
    check_matching_condition,
    find_unrealizable_degree_coloring,
    is_degree_coloring,
    tau,
)
from .edgecoloring import chromatic_index, exists_coloring_with_palette, is_proper
from .harness import SCAN_MAX_N, HardAssertionFailure, run_scan, write_report
from .invariants import density, omega_star, pi
from .multigraph import (
    CANONICAL_MAX_N,
    Multigraph,
    ParseError,
    canonical_form,
    enumerate_multigraphs,
    parse_multigraph,
)
from .palettes import parse_palette
from .regularization import regularize, serialize_embedding, verify_regularization

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_UNDECIDED = 4
EXIT_PROPERTY = 5


class _InputError(Exception):
    pass


def _load_graph(source: str) -> Multigraph:
    """Read a graph file, ``-`` for stdin, or ``named:<name>`` from the catalog."""
    if source.startswith("named:"):
        name = source[len("named:"):]
        if name not in named.CATALOG:
            raise _InputError(f"unknown named graph {name!r}; choose from {', '.join(sorted(named.CATALOG))}")
        return named.CATALOG[name]()
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"{source}: {exc.strerror}") from None
    try:
        return parse_multigraph(text)
    except ParseError as exc:
        raise _InputError(f"{source}: {exc}") from None


def _fmt_set(xs) -> str:
    return "{" + ",".join(map(str, sorted(xs))) + "}"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _print_chi(G: Multigraph, budget: float | None) -> bool:
    res = chromatic_index(G, budget)
    if not res.decided:
        print(f"chi' undecided within budget: {res.lower} <= chi' <= {res.upper}")
        return False
    col = res.witness
    if not is_proper(G, col):
        raise HardAssertionFailure("chi' witness is proper", G)
    used = len(col.colors_used())
    cert = f"no proper {used - 1}-edge-coloring exists" if res.certified else "lower bound not re-certified"
    print(f"chi' {used}  ({cert})")
    for line in col.serialize().splitlines():
        print(f"  {line}")
    return True


def _print_tau(G: Multigraph, budget: float | None) -> bool:
    res = tau(G, budget)
    if not res.decided:
        print(f"tau undecided within budget: {res.lower} <= tau <= {res.upper}")
        return False
    mu = res.witness
    if not is_degree_coloring(G, mu):
        raise HardAssertionFailure("tau witness is a degree-coloring", G)
    used = max((max(s) for s in mu.sets if s), default=0)
    cert = f"no degree-coloring with {used - 1} colors" if res.certified else "lower bound not re-certified"
    print(f"tau {used}  ({cert})")
    for line in mu.serialize().splitlines():
        print(f"  {line}")
    return True


def cmd_invariants(args) -> int:
    G = _load_graph(args.graph)
    print(f"n {G.n}")
    print(f"m {G.m}")
    delta = G.max_degree()
    print(f"Delta {delta}")
    print(f"p {G.max_multiplicity()}")
    dens = density(G)
    S = dens.witness_set
    omega = _ceil_div(G.induced_edge_count(S), len(S) // 2) if S else 0
    print(f"omega {omega}  witness {_fmt_set(S)}" if S else "omega 0")
    ow = omega_star(G)
    F = ow.witness_edges
    size = sum(F.values())
    ostar = _ceil_div(size, pi(G, F)) if F else 0
    support = " ".join(f"{u}-{v}x{k}" for (u, v), k in sorted(F.items()))
    print(f"omega* {ostar}  support {support}" if F else "omega* 0")
    print(f"chi'* {max(delta, omega)}")
    ok = True
    if args.chi:
        ok &= _print_chi(G, args.budget)
    if args.tau:
        ok &= _print_tau(G, args.budget)
    return EXIT_OK if ok else EXIT_UNDECIDED


def cmd_chi(args) -> int:
    G = _load_graph(args.graph)
    return EXIT_OK if _print_chi(G, args.budget) else EXIT_UNDECIDED


def cmd_tau(args) -> int:
    G = _load_graph(args.graph)
    return EXIT_OK if _print_tau(G, args.budget) else EXIT_UNDECIDED


def cmd_check_assignment(args) -> int:
    G = _load_graph(args.graph)
    try:
        text = Path(args.palette).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"{args.palette}: {exc.strerror}") from None
    try:
        mu = parse_palette(text)
    except ParseError as exc:
        raise _InputError(f"{args.palette}: {exc}") from None
    if mu.n > G.n:
        print(f"error: palette lists {mu.n} vertices, graph has {G.n}", file=sys.stderr)
        return EXIT_USAGE
    if mu.n < G.n:
        mu = type(mu)(mu.c, mu.sets + (frozenset(),) * (G.n - mu.n))
    degree_ok = check_degree_condition(G, mu)
    if degree_ok:
        print("degree condition: pass")
    else:
        bad = [x for x in range(G.n) if len(mu.sets[x]) != G.degree(x)]
        detail = ", ".join(f"{x} (|mu|={len(mu.sets[x])}, deg={G.degree(x)})" for x in bad)
        print(f"degree condition: FAIL at {detail}")
    violation = check_cover_condition(G, mu)
    if violation is None:
        print("cover condition: pass")
    else:
        print(f"cover condition: FAIL at S={_fmt_set(violation.set)}: |E(S)| = {violation.lhs} > {violation.rhs}")
    failing = check_matching_condition(G, mu)
    if failing:
        print(f"matching condition: FAIL for colors {', '.join(map(str, failing))}")
    else:
        print("matching condition: pass")
    if degree_ok and violation is None:
        print("verdict: degree-coloring" + ("" if not failing else " (not realizable by an edge-coloring)"))
        return EXIT_OK
    print("verdict: not a degree-coloring")
    return EXIT_COUNTEREXAMPLE


def cmd_regularize(args) -> int:
    G = _load_graph(args.graph)
    res = regularize(G)
    report = verify_regularization(G, res)
    print(f"rho {res.rho}")
    print(f"R: n={res.R.n} m={res.R.m}" + ("  (R = G)" if res.is_identity else ""))
    for name, passed in report.checks.items():
        print(f"check {name}: {'pass' if passed else 'FAIL'}")
    print(f"omega(G) = {report.omega_G} <= omega(R) = {report.omega_R} <= rho = {res.rho}")
    if args.output:
        out = Path(args.output)
        out.write_text(res.R.serialize(), encoding="utf-8")
        emb = Path(args.embedding) if args.embedding else out.with_name(out.name + ".map")
        emb.write_text(serialize_embedding(res), encoding="utf-8")
        print(f"wrote {out} and {emb}")
    else:
        sys.stdout.write(res.R.serialize())
        sys.stdout.write(serialize_embedding(res))
    return EXIT_OK if report.ok else EXIT_PROPERTY


def cmd_scan(args) -> int:
    if not 1 <= args.max_vertices <= SCAN_MAX_N:
        args.parser.error(f"--max-vertices must be in [1, {SCAN_MAX_N}]")
    if args.max_mult < 0 or args.max_edges < 0 or args.jobs < 1 or args.samples < 0:
        args.parser.error("bounds, --jobs and --samples must be nonnegative (jobs >= 1)")
    try:
        report = run_scan(
            args.max_vertices,
            args.max_mult,
            args.max_edges,
            check=args.check,
            samples=args.samples,
            seed=args.seed,
            budget=args.budget,
            jobs=args.jobs,
            chunk=args.chunk,
            theorem=not args.no_theorem,
        )
    except HardAssertionFailure as exc:
        print(f"HARD ASSERTION FAILED: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except ValueError as exc:
        args.parser.error(str(exc))
    s = report.summary
    print(f"classes {s['classes']}: confirmed {s['confirmed']}, counterexamples {s['counterexample']}, "
          f"undecided {s['undecided']}")
    print(f"tau < chi' on {s['tau_below_chi']} classes; theorem pipeline checked on {s['theorem_checked']}")
    if "monotone_pairs" in s:
        print(f"monotonicity: {s['monotone_pairs']} pairs, {s['monotone_violations']} violations, "
              f"{s['monotone_undecided']} undecided")
    print("hard assertions: passed")
    print(f"time {report.timing['total_s']:.1f}s", file=sys.stderr)
    if args.report:
        write_report(report, args.report)
        print(f"report written to {args.report}")
    return report.exit_status


def _family(args) -> list[Multigraph]:
    if args.family == "single-edge":
        return [named.multi_edge(1)]
    if args.family == "multigraphs":
        return [G for G in enumerate_multigraphs(args.max_vertices, args.max_mult, args.max_edges) if G.m]
    seen = set()
    out = []
    for n in range(3, args.max_vertices + 1):
        for mults in itertools.product(range(1, args.max_mult + 1), repeat=n):
            G = named.multicycle(mults)
            key = canonical_form(G)
            if key not in seen:
                seen.add(key)
                out.append(G)
    return out


def cmd_find_unrealizable(args) -> int:
    if args.max_vertices > min(CANONICAL_MAX_N, 10) or args.max_vertices < 1 or args.max_mult < 1:
        args.parser.error("family bounds out of range")
    colors = [args.colors] if args.colors else list(range(1, args.max_colors + 1))
    graphs = _family(args)
    searched = checked = nodes = timeouts = 0
    for G in graphs:
        for c in colors:
            r = find_unrealizable_degree_coloring(G, c, args.budget)
            searched += 1
            checked += r.colorings_checked
            nodes += r.nodes
            timeouts += not r.decided
            if r.witness is None:
                continue
            mu = r.witness
            degree_ok = check_degree_condition(G, mu)
            cover_ok = check_cover_condition(G, mu) is None
            failing = check_matching_condition(G, mu)
            realizable = exists_coloring_with_palette(G, mu) is not None
            if not (degree_ok and cover_ok and failing and not realizable):
                raise HardAssertionFailure("unrealizable witness re-verifies", G)
            print(f"witness found with c={c} colors")
            sys.stdout.write(G.serialize())
            sys.stdout.write(mu.serialize())
            print("degree condition: pass")
            print("cover condition: pass")
            print(f"matching condition: FAIL for colors {', '.join(map(str, failing))}")
            print("realizable by an edge-coloring: no")
            return EXIT_OK
    print(f"no unrealizable degree-coloring found: {len(graphs)} graphs, {searched} (graph, c) searches, "
          f"{checked} degree-colorings checked, {nodes} search nodes, {timeouts} searches out of budget")
    return EXIT_UNDECIDED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degcolor", description="Degree-colorings of multigraphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("graph", help="graph file, '-' for stdin, or named:<name>")
        p.add_argument("--budget", type=float, default=10.0, help="seconds per solver call (default 10; 0 = unlimited)")
        return p

    p = graph_cmd("invariants", "print Delta, p, omega, omega*, fractional chromatic index")
    p.add_argument("--chi", action="store_true", help="also compute the chromatic index")
    p.add_argument("--tau", action="store_true", help="also compute the degree-coloring index")
    p.set_defaults(func=cmd_invariants)

    graph_cmd("chi", "exact chromatic index with witness").set_defaults(func=cmd_chi)
    graph_cmd("tau", "exact degree-coloring index with witness").set_defaults(func=cmd_tau)

    p = graph_cmd("check-assignment", "test a palette assignment against the three conditions")
    p.add_argument("palette", help="palette file")
    p.set_defaults(func=cmd_check_assignment)

    p = graph_cmd("regularize", "build the regular supergraph R(G)")
    p.add_argument("output", nargs="?", help="write R(G) here (default: stdout)")
    p.add_argument("--embedding", help="embedding file (default: OUTPUT.map)")
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("scan", help="exhaustive conjecture scan")
    p.add_argument("--max-vertices", type=int, default=5)
    p.add_argument("--max-mult", type=int, default=3)
    p.add_argument("--max-edges", type=int, default=9)
    p.add_argument("--check", choices=["tau", "monotone", "all"], default="all")
    p.add_argument("--samples", type=int, default=20, help="deeper sub-multigraphs sampled per graph")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--chunk", type=int, default=64, help="graphs per work unit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=float, default=10.0)
    p.add_argument("--no-theorem", action="store_true", help="skip the R(G) pipeline per graph")
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(func=cmd_scan, parser=p)

    p = sub.add_parser("find-unrealizable", help="search for degree-colorings no edge-coloring realizes")
    p.add_argument("--family", choices=["multicycles", "single-edge", "multigraphs"], default="multicycles")
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--max-mult", type=int, default=3)
    p.add_argument("--max-edges", type=int, default=9, help="edge bound for --family multigraphs")
    p.add_argument("--colors", type=int, help="search exactly this many colors")
    p.add_argument("--max-colors", type=int, default=6, help="otherwise try 1..max-colors")
    p.add_argument("--budget", type=float, default=10.0)
    p.set_defaults(func=cmd_find_unrealizable, parser=p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is not None and args.budget <= 0:
        args.budget = None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HardAssertionFailure as exc:
        print(f"HARD ASSERTION FAILED: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
