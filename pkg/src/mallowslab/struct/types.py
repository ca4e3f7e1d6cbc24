"""Intervals, interval sequences and simple directed graphs, with their text formats."""

from __future__ import annotations

__all__ = [
    "Interval", "EMPTY", "IntervalSeq", "DirectedGraph", "as_positions",
    "parse_interval", "parse_interval_seq", "format_interval_seq",
]

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field


@dataclass(frozen=True, order=True)
class Interval:
    """``{lo, ..., hi}`` with inclusive endpoints; ``hi < lo`` is the empty interval."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.hi >= self.lo and self.lo < 1:
            raise ValueError(f"interval {self.lo}-{self.hi} must start at 1 or later")

    @property
    def empty(self) -> bool:
        return self.hi < self.lo

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and self.lo <= i <= self.hi

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        if self.empty or other.empty:
            return self.empty and other.empty
        return (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self) -> int:
        return hash(()) if self.empty else hash((self.lo, self.hi))

    def __str__(self) -> str:
        return "()" if self.empty else f"{self.lo}-{self.hi}"


EMPTY = Interval(1, 0)

IntervalSeq = tuple[Interval, ...]


def as_positions(a: Interval | Iterable[int]) -> frozenset[int]:
    return frozenset(a)


def parse_interval(text: str) -> Interval:
    text = text.strip()
    if text == "()":
        return EMPTY
    lo, sep, hi = text.partition("-")
    if not sep:
        v = int(lo)
        return Interval(v, v)
    out = Interval(int(lo), int(hi))
    if out.empty:
        raise ValueError(f"bad interval {text!r}: use () for the empty interval")
    return out


def parse_interval_seq(text: str) -> IntervalSeq:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_interval(t) for t in text.split(","))


def format_interval_seq(seq: Sequence[Interval]) -> str:
    return ",".join(str(i) for i in seq)


@dataclass(frozen=True)
class DirectedGraph:
    """Simple digraph on vertices ``0..order-1`` (printed 1-based)."""

    order: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"arc {(u, v)} outside vertex range 0..{self.order - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
        object.__setattr__(self, "arcs", arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_degree(self, u: int) -> int:
        return sum(1 for a, _ in self.arcs if a == u)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def to_text(self) -> str:
        lines = [str(self.order)] + [f"{u + 1} {v + 1}" for u, v in self.sorted_arcs()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> DirectedGraph:
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 1:
            raise ValueError("graph text must start with the vertex count")
        order = int(lines[0][0])
        arcs = []
        for parts in lines[1:]:
            if len(parts) != 2:
                raise ValueError(f"bad arc line {' '.join(parts)!r}")
            arcs.append((int(parts[0]) - 1, int(parts[1]) - 1))
        return cls(order, frozenset(arcs))
