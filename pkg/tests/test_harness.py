import json

import pytest

from degcolor import harness, named
from degcolor.harness import (
    HardAssertionFailure,
    ReportError,
    ScanReport,
    analyze_graph,
    read_report,
    run_scan,
    sample_subgraphs,
    scan_all,
    scan_monotonicity,
    scan_tau,
    theorem_pipeline,
    write_report,
)
from degcolor.budget import IndexResult
from degcolor.degreecoloring import tau_regular_shortcut
from degcolor.edgecoloring import chromatic_index, palette
from degcolor.invariants import OmegaStarWitness
from degcolor.multigraph import Multigraph, canonical_form, parse_multigraph


def test_two_vertex_scan():
    rep = scan_tau(2, 3, 3)
    assert rep.summary["classes"] == 5 and rep.summary["confirmed"] == 5
    nontrivial = [r for r in rep.records if r.m]
    assert sorted(r.m for r in nontrivial) == [1, 2, 3]
    for r in nontrivial:
        assert r.delta == r.omega == r.tau == r.chi_prime == r.m
    assert rep.exit_status == 0


def test_simple_three_vertex_scan():
    rep = scan_tau(3, 1, 3)
    assert rep.summary["classes"] == 7 and rep.summary["confirmed"] == 7
    assert rep.summary["theorem_checked"] == 7


def test_five_cycle_record(c5):
    r = analyze_graph(c5)
    assert (r.delta, r.omega, r.omega_star, r.chi_prime, r.tau) == (2, 3, 3, 3, 3)
    assert r.status == "confirmed" and r.tau_certified and r.chi_certified
    assert r.omega_witness == [0, 1, 2, 3, 4]
    assert parse_multigraph(r.graph) == c5


def test_petersen_record(petersen):
    r = analyze_graph(petersen)
    assert (r.delta, r.omega, r.chi_prime, r.tau) == (3, 3, 4, 3)
    assert r.regularization["identity"]
    assert r.theorem["tau_R_shortcut"] == 3 and r.theorem["tau_G_le_tau_R"]


@pytest.mark.parametrize(
    "G, rho, R_n",
    [(named.complete(3), 3, 6), (named.path(3), 2, 6), (named.petersen(), 3, 10), (named.doubled_triangle(), 6, 6)],
)
def test_theorem_pipeline(G, rho, R_n):
    out = theorem_pipeline(G)
    assert out["rho"] == out["tau_R_shortcut"] == rho and out["R_n"] == R_n
    assert out["tau_R_search"] in (None, rho)
    assert out["tau_G_le_tau_R"] is True


def test_hard_assertion_names_the_graph(monkeypatch, k3):
    monkeypatch.setattr(harness, "omega_star", lambda G: OmegaStarWitness(99, {}))
    with pytest.raises(HardAssertionFailure) as info:
        analyze_graph(k3)
    assert "omega*" in str(info.value)
    assert parse_multigraph(info.value.graph_text) == k3


def test_counterexample_is_bundled(monkeypatch, petersen):
    # pretend tau(Petersen) = 4, witnessed by the palette of a 4-edge-coloring;
    # every proved relation still holds, so only the conjecture verdict changes
    col = chromatic_index(petersen).witness
    mu = palette(petersen, col)
    real = harness.tau

    def fake(G, budget=None):
        if G == petersen:
            return IndexResult(4, 4, mu, True, 0)
        return real(G, budget)

    monkeypatch.setattr(harness, "tau", fake)
    monkeypatch.setattr(harness, "tau_regular_shortcut", lambda G: None if G == petersen else tau_regular_shortcut(G))
    r = analyze_graph(petersen, theorem=False)
    assert r.status == "counterexample" and r.tau == 4 and r.rho == 3
    bundle = harness._tau_bundle(r)
    assert bundle["kind"] == "tau-conjecture" and bundle["tau_witness"] == mu.serialize()
    rep = ScanReport({}, [r], [bundle], {"classes": 1})
    assert rep.exit_status == 1


def test_exit_status_flags():
    base = dict(parameters={}, records=[], summary={"classes": 0})
    assert ScanReport(counterexamples=[], **base).exit_status == 0
    assert ScanReport(counterexamples=[{"kind": "tau-conjecture"}], **base).exit_status == 1
    assert ScanReport(parameters={}, records=[], counterexamples=[], summary={"undecided": 2}).exit_status == 4


def test_undecided_records_with_tiny_budget():
    rep = scan_tau(3, 2, 6, budget=1e-9, theorem=False)
    s = rep.summary
    assert s["confirmed"] + s["counterexample"] + s["undecided"] == s["classes"]
    for r in rep.records:
        if r.status == "undecided":
            assert r.tau is None and r.tau_witness is None
            assert r.tau_bounds[0] <= r.tau_bounds[1]


def test_sample_subgraphs_are_proper_and_reproducible(k3):
    G = named.doubled_triangle()
    a = sample_subgraphs(G, 10, 0)
    assert a == sample_subgraphs(G, 10, 0)
    assert len({d for d, _ in a}) == len(a)
    assert any(d.startswith("edges") for d, _ in a)
    for _, H in a:
        assert H.m < G.m or H.n < G.n


def test_sampling_ignores_labeling():
    G = named.path(4)
    H = G.permute([3, 2, 1, 0])
    assert canonical_form(G) == canonical_form(H)
    # the same class scanned under either labeling sees the same children
    ka = sorted(canonical_form(X) for _, X in sample_subgraphs(G, 5, 1))
    kb = sorted(canonical_form(X) for _, X in sample_subgraphs(Multigraph.from_pair_vector(4, G.pair_vector), 5, 1))
    assert ka == kb


def test_monotone_examples():
    assert analyze_graph(named.path(3)).tau == 2
    assert analyze_graph(named.complete(3)).tau == 3
    assert analyze_graph(named.doubled_triangle()).tau == 6
    rep = scan_monotonicity(3, 2, 6, samples_per_graph=5)
    assert rep.summary["monotone_violations"] == 0
    assert rep.summary["monotone_pairs"] == sum(r.monotone["subgraphs_checked"] for r in rep.records)
    tri = next(r for r in rep.records if r.key == [3, 2, 2, 2])
    assert tri.monotone["max_child_tau"] <= tri.tau == 6


def test_report_round_trip(tmp_path):
    rep = scan_all(3, 2, 4, samples_per_graph=3)
    path = tmp_path / "r.json"
    write_report(rep, path)
    back = read_report(path)
    assert back == rep
    assert back.to_json() == path.read_text()


def test_report_bytes_are_deterministic(tmp_path):
    a = scan_all(3, 2, 5, samples_per_graph=4, seed=7).to_json()
    b = scan_all(3, 2, 5, samples_per_graph=4, seed=7).to_json()
    c = scan_all(3, 2, 5, samples_per_graph=4, seed=7, jobs=2, chunk=3).to_json()
    assert a == b == c
    assert "timing" not in json.loads(a)


def test_seed_changes_sample():
    G = named.doubled_triangle()
    assert [d for d, _ in sample_subgraphs(G, 10, 0)] != [d for d, _ in sample_subgraphs(G, 10, 1)]


def test_corrupted_reports(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ReportError):
        read_report(p)
    p.write_text(json.dumps({"format": "other"}))
    with pytest.raises(ReportError):
        read_report(p)
    rep = scan_tau(2, 1, 1)
    data = json.loads(rep.to_json())
    data["summary"]["classes"] = 99
    p.write_text(json.dumps(data))
    with pytest.raises(ReportError):
        read_report(p)
    with pytest.raises(ReportError):
        read_report(tmp_path / "missing.json")


def test_scan_bounds():
    with pytest.raises(ValueError):
        run_scan(7, 1, 1, check="tau", samples=0, seed=0, budget=1, jobs=1, chunk=8, theorem=False)
    with pytest.raises(ValueError):
        run_scan(0, 1, 1, check="tau", samples=0, seed=0, budget=1, jobs=1, chunk=8, theorem=False)
