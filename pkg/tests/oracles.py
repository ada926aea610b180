"""Brute-force reference implementations.

Nothing here imports the search code under test; each function follows the
definitions literally and is only fast enough for tiny graphs.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from math import ceil

from degcolor.multigraph import Multigraph


def edges_in(G: Multigraph, S) -> int:
    return sum(G.mult[u][v] for u, v in combinations(sorted(S), 2))


def density_bruteforce(G: Multigraph) -> int:
    best = 0
    for r in range(2, G.n + 1):
        for S in combinations(range(G.n), r):
            best = max(best, ceil(edges_in(G, S) / (r // 2)))
    return best


def matching_number(pairs) -> int:
    """Largest set of pairwise disjoint pairs, by trying every subset."""
    pairs = sorted(set(pairs))
    for r in range(len(pairs), 0, -1):
        for chosen in combinations(pairs, r):
            used = [x for p in chosen for x in p]
            if len(used) == len(set(used)):
                return r
    return 0


def omega_star_bruteforce(G: Multigraph) -> int:
    """Max ceil(|F| / pi(F)) over every subset F of edge instances."""
    inst = [(u, v) for u, v, k in G.edges() for _ in range(k)]
    best = 0
    for mask in range(1, 1 << len(inst)):
        F = [inst[i] for i in range(len(inst)) if mask >> i & 1]
        best = max(best, ceil(len(F) / matching_number(F)))
    return best


def chromatic_index_bruteforce(G: Multigraph) -> int:
    inst = [(u, v) for u, v, k in G.edges() for _ in range(k)]
    c = 0
    while True:
        for colors in product(range(c), repeat=len(inst)):
            ok = True
            for i, j in combinations(range(len(inst)), 2):
                if colors[i] == colors[j] and set(inst[i]) & set(inst[j]):
                    ok = False
                    break
            if ok:
                return c
        c += 1


def cover_holds(G: Multigraph, sets) -> bool:
    for r in range(2, G.n + 1):
        for S in combinations(range(G.n), r):
            colors = set().union(*(sets[x] for x in S))
            rhs = sum(sum(1 for x in S if i in sets[x]) // 2 for i in colors)
            if edges_in(G, S) > rhs:
                return False
    return True


def degree_colorings_bruteforce(G: Multigraph, c: int):
    """Every assignment meeting the degree and cover conditions, no pruning."""
    choices = [list(combinations(range(1, c + 1), G.degree(x))) for x in range(G.n)]
    for assignment in product(*choices):
        sets = [set(a) for a in assignment]
        if cover_holds(G, sets):
            yield sets


def tau_bruteforce(G: Multigraph) -> int:
    c = 0
    while True:
        if next(degree_colorings_bruteforce(G, c), None) is not None:
            return c
        c += 1


def perfect_matching_on(G: Multigraph, S) -> bool:
    S = list(S)
    if not S:
        return True
    x = S[0]
    return any(
        G.mult[x][y] and perfect_matching_on(G, [z for z in S if z not in (x, y)]) for y in S[1:]
    )


def matching_condition_holds(G: Multigraph, sets, c: int) -> bool:
    for i in range(1, c + 1):
        cls = [x for x in range(G.n) if i in sets[x]]
        if not perfect_matching_on(G, cls):
            return False
    return True


def canonical_key_bruteforce(G: Multigraph) -> tuple[int, ...]:
    return min(G.permute(p).pair_vector for p in permutations(range(G.n)))
