"""Density-type invariants of multigraphs.

``density`` is the multigraph density omega(G), the largest
``ceil(e(H) / floor(v(H) / 2))`` over sub-multigraphs H; ``omega_star`` is
the matching density, the largest ``ceil(|F| / pi(F))`` over edge sets F
where ``pi(F)`` is the size of a maximum matching inside F.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .multigraph import Multigraph, Pair

__all__ = [
    "DensityWitness",
    "OmegaStarWitness",
    "density",
    "maximum_matching",
    "pi",
    "omega_star",
    "fractional_chromatic_index",
    "coloring_lower_bound",
    "DENSITY_MAX_N",
    "OMEGA_STAR_MAX_SUPPORT",
]

DENSITY_MAX_N = 20
OMEGA_STAR_MAX_SUPPORT = 22


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class DensityWitness:
    value: int
    witness_set: tuple[int, ...]


@dataclass(frozen=True)
class OmegaStarWitness:
    value: int
    witness_edges: dict[Pair, int]


def density(G: Multigraph) -> DensityWitness:
    """Exact density over all vertex subsets of size >= 2.

    Induced subgraphs suffice: for a fixed vertex set the induced
    sub-multigraph has the most edges. The witness is the first maximizer in
    order of (cardinality, bitmask).
    """
    if G.n > DENSITY_MAX_N:
        raise ValueError(f"density scans 2^n subsets; refused for n={G.n} > {DENSITY_MAX_N}")
    if G.m == 0:
        return DensityWitness(0, ())
    edges = G.subset_edge_counts()
    masks = np.arange(len(edges))
    sizes = np.zeros(len(edges), dtype=np.int64)
    for x in range(G.n):
        sizes += (masks >> x) & 1
    half = sizes // 2
    ok = half > 0
    ratio = np.zeros(len(edges), dtype=np.int64)
    ratio[ok] = -(-edges[ok] // half[ok])
    value = int(ratio.max())
    hits = masks[ratio == value]
    best = int(min(hits, key=lambda s: (int(s).bit_count(), int(s))))
    return DensityWitness(value, tuple(x for x in range(G.n) if best >> x & 1))


# -- maximum matching (Edmonds' blossom algorithm) ------------------------


def maximum_matching(G: Multigraph) -> list[Pair]:
    """Maximum-cardinality matching of the underlying simple graph."""
    return _max_matching_pairs(G.n, G.support)


def _max_matching_pairs(n: int, pairs: Iterable[Pair]) -> list[Pair]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    match = _edmonds(n, adj)
    return sorted((u, v) for u, v in enumerate(match) if v > u)


def _edmonds(n: int, adj: list[list[int]]) -> list[int]:
    match = [-1] * n
    for root in range(n):
        if match[root] == -1:
            _augment_from(root, n, adj, match)
    return match


def _augment_from(root: int, n: int, adj: list[list[int]], match: list[int]) -> bool:
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    # flip the alternating path root ... v -> to
                    while to != -1:
                        pv = parent[to]
                        ppv = match[pv]
                        match[to] = pv
                        match[pv] = to
                        to = ppv
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def pi(G: Multigraph, F: Mapping[Pair, int]) -> int:
    """Maximum matching size using only pairs with ``F[pair] >= 1``."""
    pairs = []
    for (u, v), k in F.items():
        if not 0 <= k <= G.mult[u][v]:
            raise ValueError(f"edge subset exceeds multiplicity at ({u}, {v})")
        if k:
            pairs.append((min(u, v), max(u, v)))
    return len(_max_matching_pairs(G.n, pairs))


def _matching_sizes_over_subsets(n: int, pairs: list[Pair]) -> list[int]:
    """``pi[mask]`` for every subset ``mask`` of ``pairs`` by dynamic programming.

    For the lowest pair e in mask: either e is unused, or e is matched and all
    pairs touching its endpoints are dropped.
    """
    k = len(pairs)
    clash = []
    for i, (u, v) in enumerate(pairs):
        bits = 0
        for j, (a, b) in enumerate(pairs):
            if {a, b} & {u, v}:
                bits |= 1 << j
        clash.append(bits)
    sizes = [0] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        i = low.bit_length() - 1
        skip = sizes[mask ^ low]
        take = 1 + sizes[mask & ~clash[i]]
        sizes[mask] = skip if skip >= take else take
    return sizes


def omega_star(G: Multigraph) -> OmegaStarWitness:
    """Matching density, searching subsets of support pairs at full multiplicity.

    Adding parallel copies of an already chosen pair raises |F| without
    changing pi(F), so an optimal F can always take every copy of each pair
    it touches.
    """
    support = G.support
    if len(support) > OMEGA_STAR_MAX_SUPPORT:
        raise ValueError(
            f"omega_star enumerates 2^{len(support)} support subsets; "
            f"refused above {OMEGA_STAR_MAX_SUPPORT} pairs"
        )
    if not support:
        return OmegaStarWitness(0, {})
    weights = [G.mult[u][v] for u, v in support]
    sizes = _matching_sizes_over_subsets(G.n, support)
    best_value, best_mask = 0, 0
    total = [0] * (1 << len(support))
    for mask in range(1, 1 << len(support)):
        low = mask & -mask
        total[mask] = total[mask ^ low] + weights[low.bit_length() - 1]
        value = _ceil_div(total[mask], sizes[mask])
        if value > best_value:
            best_value, best_mask = value, mask
    witness = {p: w for i, (p, w) in enumerate(zip(support, weights)) if best_mask >> i & 1}
    return OmegaStarWitness(best_value, witness)


def fractional_chromatic_index(G: Multigraph) -> int:
    """Fractional chromatic index through the closed form max(Delta, omega)."""
    return max(G.max_degree(), density(G).value)


def coloring_lower_bound(G: Multigraph) -> int:
    """max(Delta, omega): a lower bound for both the chromatic and degree-coloring index."""
    return max(G.max_degree(), density(G).value)
