"""Embedding a multigraph in a regular one without raising max(Delta, omega).

For G with rho = max(Delta, omega): unless G is already regular with
omega <= Delta, take G and a disjoint copy G' (vertex x maps to x + n) and
join each x to its copy by ``rho - deg(x)`` parallel edges. The result is
rho-regular, contains G as an induced sub-multigraph, and its density stays
within ``[omega(G), rho]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .invariants import density
from .multigraph import Multigraph, ParseError

__all__ = [
    "RegularizationResult",
    "RegularizationReport",
    "RegularizationFailure",
    "regularize",
    "verify_regularization",
    "serialize_embedding",
    "parse_embedding",
]


@dataclass(frozen=True)
class RegularizationResult:
    R: Multigraph
    embedding: tuple[int, ...]
    rho: int

    @property
    def is_identity(self) -> bool:
        return self.R.n == len(self.embedding)


class RegularizationFailure(AssertionError):
    """A structural property of R(G) failed; this contradicts a proved lemma."""


@dataclass
class RegularizationReport:
    rho: int
    omega_G: int
    omega_R: int
    delta_R: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def raise_on_failure(self, G: Multigraph) -> None:
        bad = [name for name, passed in self.checks.items() if not passed]
        if bad:
            raise RegularizationFailure(
                f"R(G) failed {', '.join(bad)} for G =\n{G.serialize()}"
                f"(rho={self.rho}, omega(G)={self.omega_G}, omega(R)={self.omega_R}, Delta(R)={self.delta_R})"
            )


def regularize(G: Multigraph) -> RegularizationResult:
    if G.n < 1:
        raise ValueError("regularization needs at least one vertex")
    delta = G.max_degree()
    omega = density(G).value
    rho = max(delta, omega)
    if G.is_regular() and omega <= delta:
        return RegularizationResult(G, tuple(range(G.n)), rho)
    n = G.n
    R = G.disjoint_union(G)
    links = [(x, x + n, rho - G.degree(x)) for x in range(n) if rho > G.degree(x)]
    R = Multigraph.from_edges(2 * n, list(R.edges()) + links)
    return RegularizationResult(R, tuple(range(n)), rho)


def verify_regularization(G: Multigraph, res: RegularizationResult) -> RegularizationReport:
    """Check regularity, Delta(R) = rho, the density window and the induced embedding."""
    R = res.R
    omega_G = density(G).value
    omega_R = density(R).value
    delta_R = R.max_degree()
    image = res.embedding
    embedded = (
        len(set(image)) == G.n
        and all(0 <= y < R.n for y in image)
        and all(R.mult[image[u]][image[v]] == G.mult[u][v] for u in range(G.n) for v in range(G.n))
    )
    report = RegularizationReport(res.rho, omega_G, omega_R, delta_R)
    report.checks = {
        "rho": res.rho == max(G.max_degree(), omega_G),
        "regular": R.is_regular() and all(d == res.rho for d in R.degrees),
        "max_degree": delta_R == res.rho,
        "density_window": omega_G <= omega_R <= res.rho,
        "induced_embedding": embedded,
    }
    return report


def serialize_embedding(res: RegularizationResult) -> str:
    return "".join(f"map {x} {y}\n" for x, y in enumerate(res.embedding))


def parse_embedding(text: str) -> tuple[int, ...]:
    pairs: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "map" or len(fields) != 3:
            raise ParseError(lineno, "expected 'map <x> <f(x)>'")
        try:
            pairs[int(fields[1])] = int(fields[2])
        except ValueError:
            raise ParseError(lineno, "non-integer field") from None
    if sorted(pairs) != list(range(len(pairs))):
        raise ParseError(0, "embedding must list vertices 0..n-1")
    return tuple(pairs[x] for x in range(len(pairs)))
