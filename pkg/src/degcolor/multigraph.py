"""Loopless multigraphs stored as symmetric multiplicity tables.

Vertices are the integers ``0..n-1``. A graph is immutable once built, so it
can be hashed, cached and shipped to worker processes freely.

Text format::

    # comment
    n 3
    e 0 1 2      # two parallel edges between 0 and 1
    e 1 2        # multiplicity defaults to 1

Repeated ``e`` lines for the same pair accumulate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "Multigraph",
    "ParseError",
    "canonical_form",
    "canonical_relabeling",
    "enumerate_multigraphs",
    "parse_multigraph",
    "serialize_multigraph",
    "CANONICAL_MAX_N",
]

CANONICAL_MAX_N = 8

Pair = tuple[int, int]


class ParseError(ValueError):
    """Raised for malformed graph or palette text; carries the line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Multigraph:
    n: int
    mult: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.mult) != self.n or any(len(row) != self.n for row in self.mult):
            raise ValueError("multiplicity table must be n x n")
        for u in range(self.n):
            if self.mult[u][u] != 0:
                raise ValueError(f"loop at vertex {u}")
            for v in range(u + 1, self.n):
                k = self.mult[u][v]
                if k != self.mult[v][u]:
                    raise ValueError(f"asymmetric multiplicity at ({u}, {v})")
                if k < 0:
                    raise ValueError(f"negative multiplicity at ({u}, {v})")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> "Multigraph":
        """Build from ``(u, v)`` or ``(u, v, k)`` tuples; repeats accumulate."""
        table = [[0] * n for _ in range(n)]
        for e in edges:
            u, v = e[0], e[1]
            k = e[2] if len(e) > 2 else 1
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if k < 0:
                raise ValueError(f"negative multiplicity on ({u}, {v})")
            table[u][v] += k
            table[v][u] += k
        return cls(n, tuple(tuple(row) for row in table))

    @classmethod
    def from_pair_vector(cls, n: int, vec: Sequence[int]) -> "Multigraph":
        """Inverse of :attr:`pair_vector` (pairs in ``(0,1), (0,2), ..., (n-2,n-1)`` order)."""
        pairs = list(combinations(range(n), 2))
        if len(vec) != len(pairs):
            raise ValueError(f"expected {len(pairs)} entries, got {len(vec)}")
        return cls.from_edges(n, ((u, v, int(k)) for (u, v), k in zip(pairs, vec)))

    @classmethod
    def edgeless(cls, n: int) -> "Multigraph":
        return cls.from_edges(n)

    # -- basic quantities -------------------------------------------------

    def __len__(self) -> int:
        return self.n

    @property
    def pair_vector(self) -> tuple[int, ...]:
        return tuple(self.mult[u][v] for u, v in combinations(range(self.n), 2))

    @property
    def m(self) -> int:
        return sum(self.pair_vector)

    @property
    def support(self) -> list[Pair]:
        """Pairs joined by at least one edge, in lexicographic order."""
        return [(u, v) for u, v in combinations(range(self.n), 2) if self.mult[u][v]]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, k)`` for every pair with ``k > 0``, ``u < v``."""
        for u, v in self.support:
            yield u, v, self.mult[u][v]

    def degree(self, x: int) -> int:
        return sum(self.mult[x])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.mult)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def max_multiplicity(self) -> int:
        return max(self.pair_vector, default=0)

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def neighbors(self, x: int) -> list[int]:
        return [v for v in range(self.n) if self.mult[x][v]]

    # -- subsets and subgraphs --------------------------------------------

    def _check_vertices(self, S: Iterable[int]) -> list[int]:
        members = sorted(set(S))
        for x in members:
            if not 0 <= x < self.n:
                raise ValueError(f"vertex {x} out of range for n={self.n}")
        return members

    def induced_edge_count(self, S: Iterable[int]) -> int:
        members = self._check_vertices(S)
        return sum(self.mult[u][v] for u, v in combinations(members, 2))

    def induced_submultigraph(self, S: Iterable[int]) -> "Multigraph":
        """Sub-multigraph on ``S``, relabeled ``0..|S|-1`` in increasing order."""
        members = self._check_vertices(S)
        return Multigraph(
            len(members),
            tuple(tuple(self.mult[u][v] for v in members) for u in members),
        )

    def delete_vertices(self, S: Iterable[int]) -> "Multigraph":
        gone = set(self._check_vertices(S))
        return self.induced_submultigraph(x for x in range(self.n) if x not in gone)

    def delete_edges(self, F: Mapping[Pair, int]) -> "Multigraph":
        """Remove ``F[(u, v)]`` parallel copies from each listed pair."""
        table = [list(row) for row in self.mult]
        for (u, v), k in F.items():
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"invalid pair ({u}, {v})")
            if not 0 <= k <= table[u][v]:
                raise ValueError(
                    f"cannot delete {k} copies of ({u}, {v}); multiplicity is {table[u][v]}"
                )
            table[u][v] -= k
            table[v][u] -= k
        return Multigraph(self.n, tuple(tuple(row) for row in table))

    def permute(self, sigma: Sequence[int]) -> "Multigraph":
        """Relabel vertex ``x`` as ``sigma[x]``."""
        if sorted(sigma) != list(range(self.n)):
            raise ValueError("sigma is not a permutation of the vertex set")
        inv = [0] * self.n
        for x, y in enumerate(sigma):
            inv[y] = x
        return Multigraph(
            self.n,
            tuple(tuple(self.mult[inv[a]][inv[b]] for b in range(self.n)) for a in range(self.n)),
        )

    def disjoint_union(self, other: "Multigraph") -> "Multigraph":
        edges = list(self.edges())
        edges += [(u + self.n, v + self.n, k) for u, v, k in other.edges()]
        return Multigraph.from_edges(self.n + other.n, edges)

    def subset_edge_counts(self) -> np.ndarray:
        """``E[mask]`` = number of edges inside the vertex set encoded by ``mask``."""
        if self.n > 24:
            raise ValueError("subset tables are limited to n <= 24")
        size = 1 << self.n
        table = np.zeros(size, dtype=np.int64)
        for x in range(self.n):
            lo = 1 << x
            # new[mask | lo] = old[mask] + edges from x into mask, for mask < lo
            inc = np.zeros(lo, dtype=np.int64)
            for v in range(x):
                k = self.mult[x][v]
                if k:
                    inc += k * ((np.arange(lo) >> v) & 1)
            table[lo : 2 * lo] = table[:lo] + inc
        return table

    def serialize(self) -> str:
        return serialize_multigraph(self)

    def __str__(self) -> str:
        body = ", ".join(f"{u}-{v}" + (f"x{k}" if k > 1 else "") for u, v, k in self.edges())
        return f"Multigraph(n={self.n}: {body or 'no edges'})"


# -- text format ----------------------------------------------------------


def parse_multigraph(text: str) -> Multigraph:
    n: int | None = None
    table: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag, args = parts[0], parts[1:]
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {raw.strip()!r}") from None
        if tag == "n":
            if n is not None:
                raise ParseError(lineno, "duplicate 'n' line")
            if len(nums) != 1 or nums[0] < 0:
                raise ParseError(lineno, "expected 'n <N>' with N >= 0")
            n = nums[0]
            table = [[0] * n for _ in range(n)]
        elif tag == "e":
            if n is None:
                raise ParseError(lineno, "'e' line before 'n' line")
            if len(nums) not in (2, 3):
                raise ParseError(lineno, "expected 'e <u> <v> [<k>]'")
            u, v = nums[0], nums[1]
            k = nums[2] if len(nums) == 3 else 1
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(lineno, f"vertex index out of range for n={n}")
            if u == v:
                raise ParseError(lineno, f"loop at vertex {u}")
            if k < 0:
                raise ParseError(lineno, "negative multiplicity")
            table[u][v] += k
            table[v][u] += k
        else:
            raise ParseError(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise ParseError(0, "missing 'n' line")
    return Multigraph(n, tuple(tuple(row) for row in table))


def serialize_multigraph(G: Multigraph) -> str:
    lines = [f"n {G.n}"]
    lines += [f"e {u} {v} {k}" for u, v, k in G.edges()]
    return "\n".join(lines) + "\n"


# -- canonical forms ------------------------------------------------------

_PERM_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _pair_index_maps(n: int) -> tuple[np.ndarray, np.ndarray]:
    """For every vertex permutation, where each pair position reads from.

    Returns ``(perms, idx)`` where row ``r`` of ``idx`` lists, for every pair
    position ``(a, b)`` of the relabeled graph, the pair position in the
    original vector holding ``mult(perm[a], perm[b])``.
    """
    if n not in _PERM_CACHE:
        pairs = list(combinations(range(n), 2))
        where = {p: i for i, p in enumerate(pairs)}
        perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
        idx = np.empty((len(perms), len(pairs)), dtype=np.int64)
        for r, p in enumerate(perms):
            for k, (a, b) in enumerate(pairs):
                idx[r, k] = where[_pair(int(p[a]), int(p[b]))]
        _PERM_CACHE[n] = (perms, idx)
    return _PERM_CACHE[n]


def _check_canonical_bound(n: int, bound: int) -> None:
    if n > bound:
        raise ValueError(
            f"canonical form refused for n={n} > {bound}: "
            f"brute force scans n! = {np.prod(np.arange(1, n + 1, dtype=float)):.0f} permutations"
        )


def canonical_relabeling(G: Multigraph, bound: int = CANONICAL_MAX_N) -> tuple[tuple[int, ...], Multigraph]:
    """Return ``(key, H)`` with ``H`` the relabeled copy of ``G`` whose pair vector is ``key``."""
    _check_canonical_bound(G.n, bound)
    if G.n < 2:
        return (), G
    perms, idx = _pair_index_maps(G.n)
    vec = np.asarray(G.pair_vector, dtype=np.int64)
    images = vec[idx]
    # lexsort uses the last key as primary
    best = int(np.lexsort(images.T[::-1])[0])
    key = tuple(int(k) for k in images[best])
    return key, Multigraph.from_pair_vector(G.n, key)


def canonical_form(G: Multigraph, bound: int = CANONICAL_MAX_N) -> tuple[int, tuple[int, ...]]:
    """Isomorphism key: ``(n, lexicographically least pair vector over all relabelings)``."""
    return G.n, canonical_relabeling(G, bound)[0]


# -- enumeration ----------------------------------------------------------


def _bounded_vectors(length: int, cap: int, budget: int) -> Iterator[tuple[int, ...]]:
    """All vectors in ``[0, cap]^length`` with sum <= budget, in lexicographic order."""
    if length == 0:
        yield ()
        return
    for first in range(min(cap, budget) + 1):
        for rest in _bounded_vectors(length - 1, cap, budget - first):
            yield (first,) + rest


def _canonical_rows(batch: np.ndarray, n: int, base: int) -> np.ndarray:
    """Boolean mask of rows that equal their own canonical key."""
    _, idx = _pair_index_maps(n)
    powers = base ** np.arange(batch.shape[1] - 1, -1, -1, dtype=np.int64)
    own = batch @ powers
    keep = np.ones(len(batch), dtype=bool)
    for r in range(1, len(idx)):
        keep &= batch[:, idx[r]] @ powers >= own
    return keep


def enumerate_multigraphs(
    n_max: int, mult_max: int, m_max: int, *, chunk: int = 50_000
) -> Iterator[Multigraph]:
    """One representative per isomorphism class, ``1 <= n <= n_max``.

    Graphs come out ordered by vertex count and then by canonical key; each
    representative is the canonically labeled member of its class.
    """
    if not 1 <= n_max <= CANONICAL_MAX_N:
        raise ValueError(f"n_max must be in [1, {CANONICAL_MAX_N}], got {n_max}")
    if mult_max < 0 or m_max < 0:
        raise ValueError("mult_max and m_max must be nonnegative")
    base = mult_max + 1
    npairs = n_max * (n_max - 1) // 2
    if npairs * np.log2(base) >= 62:
        raise ValueError(
            f"search space {base}^{npairs} is beyond enumeration range; lower n_max or mult_max"
        )
    for n in range(1, n_max + 1):
        length = n * (n - 1) // 2
        if length == 0:
            yield Multigraph.edgeless(n)
            continue
        pending: list[tuple[int, ...]] = []

        def flush() -> Iterator[Multigraph]:
            batch = np.array(pending, dtype=np.int64)
            for row in batch[_canonical_rows(batch, n, base)]:
                yield Multigraph.from_pair_vector(n, row.tolist())
            pending.clear()

        for vec in _bounded_vectors(length, mult_max, m_max):
            pending.append(vec)
            if len(pending) >= chunk:
                yield from flush()
        if pending:
            yield from flush()
