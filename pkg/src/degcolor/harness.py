"""Batch verification over enumerated multigraphs.

Two kinds of checks run on every graph:

* hard assertions, for statements that are theorems (the sandwich
  ``max(Delta, omega) <= tau <= chi'``, ``omega <= omega* <= chi'``,
  ``omega* = max(Delta, omega)``, Vizing's bound, the regularization
  properties, the regular-graph shortcut). A failure raises
  :class:`HardAssertionFailure` carrying the offending graph.
* soft expectations for the open conjectures (``tau = max(Delta, omega)``
  and monotonicity of tau). Violations become counterexample bundles in the
  report; they never abort a scan.

Reports contain only deterministic content, so a scan with fixed parameters
produces the same bytes for any worker count. Wall-clock timings live on the
in-memory :class:`ScanReport` and are not written to disk.
"""

from __future__ import annotations

import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from .degreecoloring import (
    TAU_MAX_N,
    check_cover_condition,
    check_degree_condition,
    check_matching_condition,
    tau,
    tau_regular_shortcut,
)
from .edgecoloring import chromatic_index, is_proper, palette
from .invariants import density, omega_star
from .multigraph import Multigraph, canonical_relabeling, enumerate_multigraphs
from .regularization import regularize, verify_regularization

__all__ = [
    "GraphRecord",
    "MonotonicityRecord",
    "ScanReport",
    "HardAssertionFailure",
    "ReportError",
    "analyze_graph",
    "scan_tau",
    "scan_monotonicity",
    "scan_all",
    "run_scan",
    "theorem_pipeline",
    "write_report",
    "read_report",
    "sample_subgraphs",
    "SCAN_MAX_N",
]

log = logging.getLogger(__name__)

SCAN_MAX_N = 6
REPORT_FORMAT = "degcolor.scan.v1"


class HardAssertionFailure(AssertionError):
    """A proved statement failed on a concrete graph."""

    def __init__(self, what: str, G: Multigraph, detail: str = ""):
        self.what = what
        self.graph_text = G.serialize()
        super().__init__(f"{what} fails on\n{self.graph_text}{detail}")


class ReportError(ValueError):
    pass


def _key_of(G: Multigraph) -> list[int]:
    return [G.n, *G.pair_vector]


@dataclass
class GraphRecord:
    key: list[int]
    n: int
    m: int
    delta: int
    p: int
    omega: int
    omega_witness: list[int]
    omega_star: int
    rho: int
    chi_prime: int | None
    chi_bounds: list[int | None]
    chi_certified: bool
    tau: int | None
    tau_bounds: list[int | None]
    tau_certified: bool
    status: str
    graph: str
    chi_witness: str | None
    tau_witness: str | None
    regularization: dict[str, Any] = field(default_factory=dict)
    theorem: dict[str, Any] | None = None
    monotone: dict[str, Any] | None = None


@dataclass
class MonotonicityRecord:
    parent_key: list[int]
    derivation: str
    tau_parent: int | None
    tau_child: int | None
    verdict: str
    parent_graph: str = ""
    child_graph: str = ""
    parent_witness: str | None = None
    child_witness: str | None = None


@dataclass
class ScanReport:
    parameters: dict[str, Any]
    records: list[GraphRecord]
    counterexamples: list[dict[str, Any]]
    summary: dict[str, Any]
    timing: dict[str, float] = field(default_factory=dict, compare=False)

    def to_json(self) -> str:
        payload = {
            "format": REPORT_FORMAT,
            "parameters": self.parameters,
            "records": [asdict(r) for r in self.records],
            "counterexamples": self.counterexamples,
            "summary": self.summary,
        }
        return json.dumps(payload, sort_keys=True, indent=1) + "\n"

    @property
    def exit_status(self) -> int:
        """0 all confirmed, 1 counterexample present, 4 undecided but nothing falsified."""
        if self.counterexamples:
            return 1
        if self.summary.get("undecided", 0) or self.summary.get("monotone_undecided", 0):
            return 4
        return 0


# -- per-graph analysis ---------------------------------------------------


def _require(cond: bool, what: str, G: Multigraph, detail: str = "") -> None:
    if not cond:
        raise HardAssertionFailure(what, G, detail)


def theorem_pipeline(G: Multigraph, budget: float | None = 10.0, tau_G=None) -> dict[str, Any]:
    """Compare tau(G), tau(R(G)) and rho = max(Delta(G), omega(G)).

    ``tau(R(G)) = rho`` is proved (R(G) is rho-regular with density at most
    rho), so it is checked twice: through the regular-graph shortcut and by
    the exact search when R(G) is small enough. ``tau(G) <= tau(R(G))`` is
    the monotonicity instance the argument rests on and is reported, not
    asserted.
    """
    res = regularize(G)
    report = verify_regularization(G, res)
    report.raise_on_failure(G)
    shortcut = tau_regular_shortcut(res.R)
    _require(shortcut is not None, "R(G) is rho-regular with omega(R) <= rho", G)
    tau_R_short = shortcut[0]
    _require(tau_R_short == res.rho, "tau(R(G)) = rho via the regular shortcut", G)
    _require(
        check_degree_condition(res.R, shortcut[1]) and check_cover_condition(res.R, shortcut[1]) is None,
        "all-colors assignment is a degree-coloring of R(G)",
        G,
    )
    tau_R_search = None
    if res.R.n <= TAU_MAX_N:
        r = tau(res.R, budget)
        if r.decided:
            tau_R_search = r.value
            _require(tau_R_search == res.rho, "exact search gives tau(R(G)) = rho", G)
    if tau_G is None:
        tau_G = tau(G, budget)
    tau_G_value = tau_G.value if tau_G.decided else None
    holds = None if tau_G_value is None else tau_G_value <= tau_R_short
    return {
        "rho": res.rho,
        "R_n": res.R.n,
        "R_m": res.R.m,
        "identity": res.is_identity,
        "omega_R": report.omega_R,
        "tau_G": tau_G_value,
        "tau_R_shortcut": tau_R_short,
        "tau_R_search": tau_R_search,
        "tau_G_le_tau_R": holds,
    }


def analyze_graph(G: Multigraph, budget: float | None = 10.0, theorem: bool = True) -> GraphRecord:
    """Compute every invariant of G and enforce the proved relations between them."""
    delta, p = G.max_degree(), G.max_multiplicity()
    dens = density(G)
    omega = dens.value
    if dens.witness_set:
        S = dens.witness_set
        _require(
            -(-G.induced_edge_count(S) // (len(S) // 2)) == omega,
            "density witness reproduces omega",
            G,
        )
    rho = max(delta, omega)
    ostar = omega_star(G).value
    _require(ostar == rho, "omega* = max(Delta, omega)", G, f"omega*={ostar}, rho={rho}")
    _require(omega <= ostar, "omega <= omega*", G)

    chi = chromatic_index(G, budget)
    chi_text = None
    if chi.decided:
        col = chi.witness
        _require(is_proper(G, col) and max(col.colors.values(), default=0) <= chi.value,
                 "chi' witness is a proper coloring", G)
        mu = palette(G, col)
        _require(check_degree_condition(G, mu), "edge-coloring palette meets the degree condition", G)
        _require(check_cover_condition(G, mu) is None, "edge-coloring palette meets the cover condition", G)
        _require(not check_matching_condition(G, mu), "edge-coloring palette meets the matching condition", G)
        _require(ostar <= chi.value, "omega* <= chi'", G)
        _require(chi.value <= delta + p, "chi' <= Delta + p", G)
        if p == 1:
            _require(chi.value in (delta, delta + 1), "simple graph: chi' in {Delta, Delta+1}", G)
        chi_text = col.serialize()
    else:
        _require(chi.lower <= chi.upper, "chi' bounds are ordered", G)

    t = tau(G, budget)
    tau_text = None
    if t.decided:
        mu = t.witness
        _require(mu.c == t.value and check_degree_condition(G, mu) and check_cover_condition(G, mu) is None,
                 "tau witness is a degree-coloring", G)
        tau_text = mu.serialize()
    else:
        _require(t.lower <= t.upper, "tau bounds are ordered", G)
    _require(rho <= t.lower, "max(Delta, omega) <= tau", G)
    if t.decided and chi.decided:
        _require(t.value <= chi.value, "tau <= chi'", G, f"tau={t.value}, chi'={chi.value}")
    else:
        _require(t.lower <= (chi.value if chi.decided else chi.upper), "tau lower bound <= chi' upper bound", G)

    shortcut = tau_regular_shortcut(G)
    if shortcut is not None:
        _require(check_degree_condition(G, shortcut[1]) and check_cover_condition(G, shortcut[1]) is None,
                 "regular shortcut assignment is a degree-coloring", G)
        if t.decided:
            _require(t.value == shortcut[0], "regular graph with omega <= Delta has tau = Delta", G)

    res = regularize(G)
    reg = verify_regularization(G, res)
    reg.raise_on_failure(G)
    if not res.is_identity:
        _require(res.R.n == 2 * G.n, "|V(R)| = 2n", G)
        _require(res.R.m == 2 * G.m + sum(rho - d for d in G.degrees), "|E(R)| = 2m + sum(rho - deg)", G)

    if not t.decided:
        status = "undecided"
    elif t.value == rho:
        status = "confirmed"
    else:
        status = "counterexample"

    return GraphRecord(
        key=_key_of(G),
        n=G.n,
        m=G.m,
        delta=delta,
        p=p,
        omega=omega,
        omega_witness=list(dens.witness_set),
        omega_star=ostar,
        rho=rho,
        chi_prime=chi.value,
        chi_bounds=[chi.lower, chi.upper],
        chi_certified=chi.certified,
        tau=t.value,
        tau_bounds=[t.lower, t.upper],
        tau_certified=t.certified,
        status=status,
        graph=G.serialize(),
        chi_witness=chi_text,
        tau_witness=tau_text,
        regularization={
            "R_n": res.R.n,
            "R_m": res.R.m,
            "identity": res.is_identity,
            "omega_R": reg.omega_R,
            "checks": dict(sorted(reg.checks.items())),
        },
        theorem=theorem_pipeline(G, budget, tau_G=t) if theorem else None,
    )


# -- monotonicity sampling ------------------------------------------------


def _describe(vertices: Sequence[int], edges: dict[tuple[int, int], int]) -> str:
    parts = []
    if edges:
        parts.append("edges " + ",".join(f"{u}-{v}x{k}" for (u, v), k in sorted(edges.items())))
    if vertices:
        parts.append("vertices " + ",".join(map(str, sorted(vertices))))
    return "; ".join(parts)


def _derive(G: Multigraph, vertices: Sequence[int], edges: dict[tuple[int, int], int]) -> Multigraph:
    return G.delete_edges(edges).delete_vertices(vertices)


def sample_subgraphs(G: Multigraph, samples: int, seed: int) -> list[tuple[str, Multigraph]]:
    """Proper sub-multigraphs of G to test monotonicity against.

    All single-edge deletions (one per occupied pair) plus up to ``samples``
    distinct deeper deletions: several edges, some vertices, or both. The
    generator is seeded from ``seed`` and the graph itself, so the sample
    does not depend on scan order or worker count.
    """
    out: list[tuple[str, Multigraph]] = []
    seen: set[str] = set()
    for u, v in G.support:
        d = _describe((), {(u, v): 1})
        seen.add(d)
        out.append((d, _derive(G, (), {(u, v): 1})))
    rng = random.Random(f"{seed}|{','.join(map(str, _key_of(G)))}")
    instances = [(u, v) for u, v, k in G.edges() for _ in range(k)]
    kinds = []
    if len(instances) >= 2:
        kinds.append("edges")
    if G.n >= 2:
        kinds.append("vertices")
    if instances and G.n >= 2:
        kinds.append("mixed")
    taken = 0
    attempts = 0
    while kinds and taken < samples and attempts < 20 * samples:
        attempts += 1
        kind = rng.choice(kinds)
        edges: dict[tuple[int, int], int] = {}
        vertices: list[int] = []
        if kind in ("edges", "mixed"):
            lo = 2 if kind == "edges" else 1
            for pair in rng.sample(instances, rng.randint(lo, len(instances))):
                edges[pair] = edges.get(pair, 0) + 1
        if kind in ("vertices", "mixed"):
            vertices = sorted(rng.sample(range(G.n), rng.randint(1, G.n - 1)))
        d = _describe(vertices, edges)
        if d in seen:
            continue
        seen.add(d)
        out.append((d, _derive(G, vertices, edges)))
        taken += 1
    return out


def _tau_lookup(H: Multigraph, table: dict[tuple[int, ...], dict], budget: float | None) -> dict:
    key, canon = canonical_relabeling(H)
    full = (H.n, *key)
    if full not in table:
        r = tau(canon, budget)
        table[full] = {
            "tau": r.value,
            "bounds": [r.lower, r.upper],
            "witness": r.witness.serialize() if r.decided else None,
            "graph": canon.serialize(),
        }
    return table[full]


def _monotone_for(
    G: Multigraph, table: dict, samples: int, seed: int, budget: float | None
) -> tuple[dict[str, Any], list[MonotonicityRecord]]:
    parent = _tau_lookup(G, table, budget)
    flagged: list[MonotonicityRecord] = []
    checked = violations = undecided = 0
    max_child = None
    for derivation, H in sample_subgraphs(G, samples, seed):
        child = _tau_lookup(H, table, budget)
        checked += 1
        if parent["tau"] is None or child["tau"] is None:
            verdict = "undecided"
            undecided += 1
        elif child["tau"] > parent["tau"]:
            verdict = "violation"
            violations += 1
        else:
            verdict = "ok"
            max_child = child["tau"] if max_child is None else max(max_child, child["tau"])
        if verdict != "ok":
            flagged.append(
                MonotonicityRecord(
                    parent_key=_key_of(G),
                    derivation=derivation,
                    tau_parent=parent["tau"],
                    tau_child=child["tau"],
                    verdict=verdict,
                    parent_graph=G.serialize(),
                    child_graph=H.serialize(),
                    parent_witness=parent["witness"],
                    child_witness=child["witness"],
                )
            )
    summary = {
        "subgraphs_checked": checked,
        "violations": violations,
        "undecided": undecided,
        "max_child_tau": max_child,
    }
    return summary, flagged


# -- parallel driver ------------------------------------------------------


def _chunks(items: list, size: int) -> list[list]:
    return [items[i : i + size] for i in range(0, len(items), size)]


def _analyze_chunk(args) -> list[GraphRecord]:
    vectors, budget, theorem = args
    return [analyze_graph(Multigraph.from_pair_vector(n, vec), budget, theorem) for n, vec in vectors]


def _monotone_chunk(args):
    vectors, table, samples, seed, budget = args
    local = dict(table)
    out = []
    for n, vec in vectors:
        G = Multigraph.from_pair_vector(n, vec)
        out.append(_monotone_for(G, local, samples, seed, budget))
    return out


def _pmap(fn: Callable, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _check_bounds(n_max: int, mult_max: int, m_max: int) -> None:
    if not 1 <= n_max <= SCAN_MAX_N:
        raise ValueError(f"scan n_max must be in [1, {SCAN_MAX_N}], got {n_max}")
    if mult_max < 0 or m_max < 0:
        raise ValueError("mult_max and m_max must be nonnegative")


def _graph_list(n_max: int, mult_max: int, m_max: int) -> list[tuple[int, tuple[int, ...]]]:
    return [(G.n, G.pair_vector) for G in enumerate_multigraphs(n_max, mult_max, m_max)]


def _summarize(records: list[GraphRecord]) -> dict[str, Any]:
    counts = {"confirmed": 0, "counterexample": 0, "undecided": 0}
    for r in records:
        counts[r.status] += 1
    return {
        "classes": len(records),
        **counts,
        "chi_undecided": sum(r.chi_prime is None for r in records),
        "tau_below_chi": sum(1 for r in records if r.tau is not None and r.chi_prime is not None and r.tau < r.chi_prime),
        "theorem_checked": sum(1 for r in records if r.theorem is not None),
        "hard_assertions": "passed",
    }


def _tau_bundle(r: GraphRecord) -> dict[str, Any]:
    return {
        "kind": "tau-conjecture",
        "key": r.key,
        "graph": r.graph,
        "delta": r.delta,
        "omega": r.omega,
        "omega_witness": r.omega_witness,
        "tau": r.tau,
        "tau_witness": r.tau_witness,
        "chi_prime": r.chi_prime,
        "chi_witness": r.chi_witness,
    }


def run_scan(
    n_max: int,
    mult_max: int,
    m_max: int,
    *,
    check: str,
    samples: int,
    seed: int,
    budget: float | None,
    jobs: int,
    chunk: int,
    theorem: bool,
) -> ScanReport:
    _check_bounds(n_max, mult_max, m_max)
    started = time.perf_counter()
    graphs = _graph_list(n_max, mult_max, m_max)
    log.info("enumerated %d classes", len(graphs))
    tasks = [(c, budget, theorem) for c in _chunks(graphs, chunk)]
    records = [r for part in _pmap(_analyze_chunk, tasks, jobs) for r in part]
    records.sort(key=lambda r: r.key)
    analyzed = time.perf_counter()

    counterexamples = [_tau_bundle(r) for r in records if r.status == "counterexample"]
    summary = _summarize(records)
    if check in ("monotone", "all"):
        table = {
            tuple(r.key): {"tau": r.tau, "bounds": r.tau_bounds, "witness": r.tau_witness, "graph": r.graph}
            for r in records
        }
        mtasks = [(c, table, samples, seed, budget) for c in _chunks(graphs, chunk)]
        results = [x for part in _pmap(_monotone_chunk, mtasks, jobs) for x in part]
        flagged: list[MonotonicityRecord] = []
        by_key = {tuple(r.key): r for r in records}
        for (n, vec), (msum, bad) in zip(graphs, results):
            by_key[(n, *vec)].monotone = msum
            flagged.extend(bad)
        flagged.sort(key=lambda f: (f.parent_key, f.derivation))
        counterexamples += [
            {"kind": "monotonicity", **asdict(f)} for f in flagged if f.verdict == "violation"
        ]
        summary["monotone_pairs"] = sum(r.monotone["subgraphs_checked"] for r in records)
        summary["monotone_violations"] = sum(f.verdict == "violation" for f in flagged)
        summary["monotone_undecided"] = sum(f.verdict == "undecided" for f in flagged)
        summary["monotone_undecided_pairs"] = [
            {"parent_key": f.parent_key, "derivation": f.derivation} for f in flagged if f.verdict == "undecided"
        ]
    if check == "monotone":
        # tau-conjecture verdicts still computed, but the question asked was monotonicity
        counterexamples = [c for c in counterexamples if c["kind"] == "monotonicity"]
    finished = time.perf_counter()

    parameters = {
        "n_max": n_max,
        "mult_max": mult_max,
        "m_max": m_max,
        "check": check,
        "samples_per_graph": samples if check in ("monotone", "all") else None,
        "seed": seed,
        "budget_seconds": budget,
        "theorem_pipeline": theorem,
    }
    return ScanReport(
        parameters,
        records,
        counterexamples,
        summary,
        timing={"analysis_s": analyzed - started, "total_s": finished - started},
    )


def scan_tau(
    n_max: int,
    mult_max: int,
    m_max: int,
    budget: float | None = 10.0,
    *,
    jobs: int = 1,
    seed: int = 0,
    chunk: int = 64,
    theorem: bool = True,
) -> ScanReport:
    """Compute Delta, omega, omega*, chi' and tau for every class and test tau = max(Delta, omega)."""
    return run_scan(n_max, mult_max, m_max, check="tau", samples=0, seed=seed,
                budget=budget, jobs=jobs, chunk=chunk, theorem=theorem)


def scan_monotonicity(
    n_max: int,
    mult_max: int,
    m_max: int,
    samples_per_graph: int = 20,
    seed: int = 0,
    budget: float | None = 10.0,
    *,
    jobs: int = 1,
    chunk: int = 64,
) -> ScanReport:
    """Test tau(H) <= tau(G) on sampled sub-multigraphs H of every enumerated G."""
    return run_scan(n_max, mult_max, m_max, check="monotone", samples=samples_per_graph, seed=seed,
                budget=budget, jobs=jobs, chunk=chunk, theorem=False)


def scan_all(
    n_max: int,
    mult_max: int,
    m_max: int,
    samples_per_graph: int = 20,
    seed: int = 0,
    budget: float | None = 10.0,
    *,
    jobs: int = 1,
    chunk: int = 64,
    theorem: bool = True,
) -> ScanReport:
    return run_scan(n_max, mult_max, m_max, check="all", samples=samples_per_graph, seed=seed,
                budget=budget, jobs=jobs, chunk=chunk, theorem=theorem)


# -- persistence ----------------------------------------------------------


def write_report(report: ScanReport, path: str | Path) -> None:
    path = Path(path)
    try:
        path.write_text(report.to_json(), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def read_report(path: str | Path) -> ScanReport:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportError(f"cannot read report {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict) or data.get("format") != REPORT_FORMAT:
        raise ReportError(f"{path}: not a {REPORT_FORMAT} report")
    try:
        records = [GraphRecord(**r) for r in data["records"]]
        report = ScanReport(data["parameters"], records, data["counterexamples"], data["summary"])
    except (KeyError, TypeError) as exc:
        raise ReportError(f"{path}: malformed report ({exc})") from exc
    if report.summary.get("classes") != len(records):
        raise ReportError(f"{path}: summary counts {report.summary.get('classes')} classes, found {len(records)}")
    return report
