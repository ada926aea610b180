"""Small named multigraphs used in tests, examples and the CLI."""

from __future__ import annotations

from typing import Sequence

from .multigraph import Multigraph


def multi_edge(k: int) -> Multigraph:
    return Multigraph.from_edges(2, [(0, 1, k)])


def path(n: int) -> Multigraph:
    return Multigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    return multicycle([1] * n)


def multicycle(mults: Sequence[int]) -> Multigraph:
    """Cycle ``0-1-...-(n-1)-0`` with edge ``i, i+1`` repeated ``mults[i]`` times."""
    n = len(mults)
    if n < 3:
        raise ValueError("a multicycle needs at least 3 vertices")
    return Multigraph.from_edges(n, [(i, (i + 1) % n, k) for i, k in enumerate(mults)])


def complete(n: int, k: int = 1) -> Multigraph:
    return Multigraph.from_edges(n, [(u, v, k) for u in range(n) for v in range(u + 1, n)])


def star(leaves: int) -> Multigraph:
    return Multigraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def doubled_triangle() -> Multigraph:
    return complete(3, 2)


def triangular_prism() -> Multigraph:
    return Multigraph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )


def petersen() -> Multigraph:
    """Outer 5-cycle on 0..4, spokes i -- i+5, inner pentagram on 5..9."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.from_edges(10, outer + spokes + inner)


CATALOG = {
    "k3": lambda: complete(3),
    "c5": lambda: cycle(5),
    "c6": lambda: cycle(6),
    "p3": lambda: path(3),
    "single-edge": lambda: multi_edge(1),
    "double-edge": lambda: multi_edge(2),
    "triple-edge": lambda: multi_edge(3),
    "doubled-triangle": doubled_triangle,
    "prism": triangular_prism,
    "petersen": petersen,
    "k4": lambda: complete(4),
    "star3": lambda: star(3),
}
