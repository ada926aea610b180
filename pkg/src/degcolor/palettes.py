"""Per-vertex color sets ``mu(x)`` drawn from ``{1, ..., c}``.

Text format: a header ``c <count>`` followed by one ``v <x>: <c1> <c2> ...``
line per vertex, colors ascending. Vertices without a line get the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .multigraph import ParseError

__all__ = ["PaletteAssignment", "parse_palette", "serialize_palette"]


@dataclass(frozen=True)
class PaletteAssignment:
    c: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.c < 0:
            raise ValueError("color count must be nonnegative")
        for x, colors in enumerate(self.sets):
            bad = [i for i in colors if not 1 <= i <= self.c]
            if bad:
                raise ValueError(f"vertex {x}: colors {sorted(bad)} outside [1, {self.c}]")

    @classmethod
    def of(cls, c: int, sets: Iterable[Iterable[int]]) -> "PaletteAssignment":
        return cls(c, tuple(frozenset(s) for s in sets))

    @classmethod
    def from_masks(cls, c: int, masks: Sequence[int]) -> "PaletteAssignment":
        """Bit ``i - 1`` of ``masks[x]`` set means color ``i`` is in ``mu(x)``."""
        return cls(c, tuple(frozenset(i + 1 for i in range(c) if m >> i & 1) for m in masks))

    @property
    def n(self) -> int:
        return len(self.sets)

    def masks(self) -> list[int]:
        return [sum(1 << (i - 1) for i in s) for s in self.sets]

    def __getitem__(self, x: int) -> frozenset[int]:
        return self.sets[x]

    def relabel_vertices(self, order: Sequence[int]) -> "PaletteAssignment":
        """Palette for a graph whose vertex ``k`` is vertex ``order[k]`` here."""
        return PaletteAssignment(self.c, tuple(self.sets[x] for x in order))

    def serialize(self) -> str:
        return serialize_palette(self)


def serialize_palette(mu: PaletteAssignment) -> str:
    lines = [f"c {mu.c}"]
    for x, s in enumerate(mu.sets):
        lines.append(f"v {x}:" + "".join(f" {i}" for i in sorted(s)))
    return "\n".join(lines) + "\n"


def parse_palette(text: str, n: int | None = None) -> PaletteAssignment:
    """Parse the palette format; ``n`` fixes the vertex count if given."""
    c: int | None = None
    rows: dict[int, frozenset[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("c"):
            fields = line.split()
            if c is not None or len(fields) != 2 or not fields[1].isdigit():
                raise ParseError(lineno, "expected a single 'c <count>' header")
            c = int(fields[1])
        elif line.startswith("v"):
            head, sep, tail = line.partition(":")
            fields = head.split()
            if not sep or len(fields) != 2 or not fields[1].isdigit():
                raise ParseError(lineno, "expected 'v <x>: <colors...>'")
            x = int(fields[1])
            if x in rows:
                raise ParseError(lineno, f"vertex {x} listed twice")
            try:
                colors = [int(t) for t in tail.split()]
            except ValueError:
                raise ParseError(lineno, "non-integer color") from None
            if len(set(colors)) != len(colors):
                raise ParseError(lineno, "repeated color")
            rows[x] = frozenset(colors)
        else:
            raise ParseError(lineno, f"unknown line {raw.strip()!r}")
    if c is None:
        raise ParseError(0, "missing 'c <count>' header")
    size = n if n is not None else (max(rows) + 1 if rows else 0)
    if rows and max(rows) >= size:
        raise ParseError(0, f"vertex {max(rows)} out of range for n={size}")
    try:
        return PaletteAssignment(c, tuple(rows.get(x, frozenset()) for x in range(size)))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None
