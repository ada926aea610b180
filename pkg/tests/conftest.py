import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from degcolor import named  # noqa: E402
from degcolor.multigraph import Multigraph  # noqa: E402


@pytest.fixture
def k3():
    return named.complete(3)


@pytest.fixture
def p3():
    return named.path(3)


@pytest.fixture
def c5():
    return named.cycle(5)


@pytest.fixture
def petersen():
    return named.petersen()


@st.composite
def multigraphs(draw, max_n=6, max_mult=3, max_edges=12, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    vec = draw(st.lists(st.integers(0, max_mult), min_size=len(pairs), max_size=len(pairs)))
    # trim from the end until the edge budget fits
    total = sum(vec)
    for i in range(len(vec) - 1, -1, -1):
        if total <= max_edges:
            break
        cut = min(vec[i], total - max_edges)
        vec[i] -= cut
        total -= cut
    return Multigraph.from_pair_vector(n, vec)


_CRITERIA = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(_CRITERIA, [])

    class Recorder:
        def __init__(self):
            self.label = None

        def __call__(self, number, title):
            self.label = f"criterion {number}: {title}"
            self.detail = ""
            return self

    rec = Recorder()
    yield rec
    if rec.label is None:
        return
    report = getattr(request.node, "rep_call", None)
    passed = report is not None and report.passed
    line = f"{'PASS' if passed else 'FAIL'}  {rec.label}" + (f"  [{rec.detail}]" if rec.detail else "")
    lines.append(line)
    print("\n" + line)


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
