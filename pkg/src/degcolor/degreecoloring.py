"""Degree-colorings and the degree-coloring index tau.

A palette assignment ``mu`` with colors ``1..c`` is a degree-coloring of G
when ``|mu(x)| = deg(x)`` for every vertex and, for every vertex set S,

    |E(S)| <= sum_i floor(|S^(i)| / 2),    S^(i) = {x in S : i in mu(x)}.

Every proper edge-coloring induces one; the converse fails, and the extra
matching condition (each nonempty color class spans a perfect matching)
separates the two.

The right-hand side obeys a one-vertex recurrence that the searches below
rely on: adding x to S raises it by the number of colors of ``mu(x)`` that
occur an odd number of times in S. Tracking the parity mask of every subset
therefore costs one XOR and one popcount per subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .budget import Budget, BudgetExceeded, IndexResult
from .edgecoloring import exists_coloring_with_palette
from .invariants import _max_matching_pairs, coloring_lower_bound, density
from .multigraph import Multigraph
from .palettes import PaletteAssignment

__all__ = [
    "CoverViolation",
    "UnrealizableSearch",
    "color_class",
    "check_degree_condition",
    "check_cover_condition",
    "is_degree_coloring",
    "check_matching_condition",
    "degree_colorings",
    "tau",
    "tau_regular_shortcut",
    "find_unrealizable_degree_coloring",
    "COVER_MAX_N",
    "TAU_MAX_N",
    "UNREALIZABLE_MAX_N",
]

COVER_MAX_N = 20
TAU_MAX_N = 12
UNREALIZABLE_MAX_N = 10


@dataclass(frozen=True)
class CoverViolation:
    set: tuple[int, ...]
    lhs: int
    rhs: int


def color_class(mu: PaletteAssignment, S: Iterable[int], i: int) -> tuple[int, ...]:
    if not 1 <= i <= mu.c:
        raise ValueError(f"color {i} outside [1, {mu.c}]")
    return tuple(sorted(x for x in set(S) if i in mu.sets[x]))


def _require_dims(G: Multigraph, mu: PaletteAssignment) -> None:
    if mu.n != G.n:
        raise ValueError(f"palette has {mu.n} vertices, graph has {G.n}")


def check_degree_condition(G: Multigraph, mu: PaletteAssignment) -> bool:
    _require_dims(G, mu)
    return all(len(mu.sets[x]) == d for x, d in enumerate(G.degrees))


def check_cover_condition(G: Multigraph, mu: PaletteAssignment) -> CoverViolation | None:
    """First violating set by (cardinality, sorted members), or ``None``."""
    _require_dims(G, mu)
    if G.n > COVER_MAX_N:
        raise ValueError(f"cover check scans 2^n subsets; refused for n={G.n} > {COVER_MAX_N}")
    edges = G.subset_edge_counts().tolist()
    masks = mu.masks()
    size = 1 << G.n
    parity = [0] * size
    rhs = [0] * size
    worst: tuple[int, tuple[int, ...], int, int] | None = None
    for S in range(1, size):
        low = S & -S
        rest = S ^ low
        P = masks[low.bit_length() - 1]
        parity[S] = parity[rest] ^ P
        rhs[S] = rhs[rest] + (P & parity[rest]).bit_count()
        if edges[S] > rhs[S]:
            members = tuple(x for x in range(G.n) if S >> x & 1)
            cand = (len(members), members, edges[S], rhs[S])
            if worst is None or cand[:2] < worst[:2]:
                worst = cand
    if worst is None:
        return None
    return CoverViolation(worst[1], worst[2], worst[3])


def is_degree_coloring(G: Multigraph, mu: PaletteAssignment) -> bool:
    return check_degree_condition(G, mu) and check_cover_condition(G, mu) is None


def _has_perfect_matching(G: Multigraph, S: tuple[int, ...]) -> bool:
    if len(S) % 2:
        return False
    H = G.induced_submultigraph(S)
    return 2 * len(_max_matching_pairs(H.n, H.support)) == H.n


def check_matching_condition(G: Multigraph, mu: PaletteAssignment) -> list[int]:
    """Colors whose nonempty class induces no perfect matching."""
    _require_dims(G, mu)
    failing = []
    for i in range(1, mu.c + 1):
        cls = color_class(mu, range(G.n), i)
        if cls and not _has_perfect_matching(G, cls):
            failing.append(i)
    return failing


# -- search ---------------------------------------------------------------


def _search_order(G: Multigraph) -> list[int]:
    deg = G.degrees
    return sorted(range(G.n), key=lambda x: (-deg[x], x))


def degree_colorings(
    G: Multigraph, c: int, budget: Budget | None = None
) -> Iterator[PaletteAssignment]:
    """Every degree-coloring of G with colors ``1..c``, up to renaming colors.

    Vertices are assigned in a fixed order (by decreasing degree). A vertex
    may introduce new colors only as the next unused ones, so each class of
    color-permuted assignments is produced exactly once. After vertex k is
    placed, the cover inequality is checked for every set made of placed
    vertices that contains k; those checks never change later, so a failure
    prunes the whole branch.
    """
    budget = budget or Budget(None)
    order = _search_order(G)
    H = G.permute([order.index(x) for x in range(G.n)])
    n = H.n
    deg = H.degrees
    edges = H.subset_edge_counts().tolist()
    parity = [0] * (1 << n)
    rhs = [0] * (1 << n)
    chosen = [0] * n

    def candidates(d: int, top: int) -> Iterator[int]:
        for r in range(max(0, d - top), min(d, c - top) + 1):
            fresh = ((1 << r) - 1) << top
            for combo in combinations(range(top), d - r):
                yield sum(1 << b for b in combo) | fresh

    def place(k: int, P: int) -> bool:
        bit = 1 << k
        for s in range(bit):
            par = parity[s]
            S = s | bit
            parity[S] = par ^ P
            r = rhs[s] + (P & par).bit_count()
            rhs[S] = r
            if r < edges[S]:
                return False
        return True

    def rec(k: int, top: int) -> Iterator[None]:
        budget.tick()
        if k == n:
            yield None
            return
        for P in candidates(deg[k], top):
            if place(k, P):
                chosen[k] = P
                yield from rec(k + 1, max(top, P.bit_length()))

    if any(d > c for d in deg):
        return
    for _ in rec(0, 0):
        masks = [0] * n
        for k, x in enumerate(order):
            masks[x] = chosen[k]
        yield PaletteAssignment.from_masks(c, masks)


def _first(it: Iterator[PaletteAssignment]) -> PaletteAssignment | None:
    return next(it, None)


def tau(G: Multigraph, budget: float | None = 10.0) -> IndexResult:
    """Exact degree-coloring index with a witnessing degree-coloring.

    Tries ``c = max(Delta, omega)`` upward. The first success is certified by
    an exhaustive search at ``c - 1`` (already done when ``c`` exceeds the
    lower bound). The chromatic index bounds tau, so the loop stops at
    Vizing's ``Delta + p`` at the latest.
    """
    if G.n > TAU_MAX_N:
        raise ValueError(f"tau search is limited to n <= {TAU_MAX_N}, got n={G.n}")
    if G.m == 0:
        return IndexResult(0, 0, PaletteAssignment.of(0, [()] * G.n), True)
    clock = Budget(budget)
    lower = coloring_lower_bound(G)
    ceiling = G.max_degree() + G.max_multiplicity()
    c = lower
    found = None
    try:
        while c <= ceiling:
            found = _first(degree_colorings(G, c, clock))
            if found is not None:
                break
            c += 1
    except BudgetExceeded:
        return IndexResult(c, ceiling, None, False, clock.nodes)
    if found is None:
        raise AssertionError(f"no degree-coloring of {G} with {ceiling} colors, yet tau <= chi'")
    if c > lower:
        return IndexResult(c, c, found, True, clock.nodes)
    try:
        certified = _first(degree_colorings(G, c - 1, clock)) is None
    except BudgetExceeded:
        certified = False
    else:
        if not certified:
            raise AssertionError(f"{G} has a degree-coloring below max(Delta, omega) = {c}")
    return IndexResult(c, c, found, certified, clock.nodes)


def tau_regular_shortcut(G: Multigraph) -> tuple[int, PaletteAssignment] | None:
    """For regular G with omega <= Delta: tau = Delta, witnessed by giving every vertex all colors."""
    if G.n == 0 or not G.is_regular():
        return None
    d = G.max_degree()
    if density(G).value > d:
        return None
    return d, PaletteAssignment.of(d, [range(1, d + 1)] * G.n)


@dataclass
class UnrealizableSearch:
    """Outcome of hunting for a degree-coloring that no edge-coloring realizes."""

    witness: PaletteAssignment | None
    failing_colors: list[int]
    exhausted: bool
    colorings_checked: int
    nodes: int

    @property
    def decided(self) -> bool:
        return self.witness is not None or self.exhausted


def find_unrealizable_degree_coloring(
    G: Multigraph, c: int, budget: float | None = 10.0
) -> UnrealizableSearch:
    """Search degree-colorings with colors ``1..c`` for one failing the matching condition.

    Renaming colors preserves both conditions, so the symmetry-reduced
    enumeration of :func:`degree_colorings` is complete for this purpose.
    Any witness is re-verified from scratch before it is returned.
    """
    if G.n > UNREALIZABLE_MAX_N:
        raise ValueError(f"unrealizability search is limited to n <= {UNREALIZABLE_MAX_N}")
    clock = Budget(budget)
    checked = 0
    try:
        for mu in degree_colorings(G, c, clock):
            checked += 1
            failing = check_matching_condition(G, mu)
            if failing:
                if not is_degree_coloring(G, mu):
                    raise AssertionError(f"search produced a non-degree-coloring {mu}")
                if exists_coloring_with_palette(G, mu) is not None:
                    raise AssertionError(f"matching condition failed yet {mu} is realizable")
                return UnrealizableSearch(mu, failing, False, checked, clock.nodes)
    except BudgetExceeded:
        return UnrealizableSearch(None, [], False, checked, clock.nodes)
    return UnrealizableSearch(None, [], True, checked, clock.nodes)
