"""Exact rationals, open intervals and finite unions of open intervals.

Every scalar in the package is a :class:`fractions.Fraction`.  Intervals are
open; an empty interval is represented by ``None``.  Touching intervals such
as (0,1/4) and (1/4,1/2) are kept apart because their shared endpoint is not
a member of either.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction (floats are refused)."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to a rational")


def format_rat(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    q = 1
    for v in values:
        q = lcm(q, Fraction(v).denominator)
    return q


def frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, order=True)
class OpenInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"open interval needs lo < hi, got ({self.lo}, {self.hi})")

    def __contains__(self, x: object) -> bool:
        return self.lo < x < self.hi  # type: ignore[operator]

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains_interval(self, other: Optional["OpenInterval"]) -> bool:
        return other is None or (self.lo <= other.lo and other.hi <= self.hi)

    def shift(self, t: Fraction) -> "OpenInterval":
        return OpenInterval(self.lo + t, self.hi + t)

    def mirror(self, r: Fraction) -> "OpenInterval":
        return OpenInterval(r - self.hi, r - self.lo)

    def to_json(self) -> list[str]:
        return [format_rat(self.lo), format_rat(self.hi)]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "OpenInterval":
        return cls(rat(data[0]), rat(data[1]))

    def __repr__(self) -> str:
        return f"({format_rat(self.lo)},{format_rat(self.hi)})"


def interval(lo: RatLike, hi: RatLike) -> Optional[OpenInterval]:
    """Build (lo, hi), returning ``None`` (the empty interval) when lo >= hi."""
    lo, hi = rat(lo), rat(hi)
    return OpenInterval(lo, hi) if lo < hi else None


def interval_intersect(a: Optional[OpenInterval], b: Optional[OpenInterval]) -> Optional[OpenInterval]:
    if a is None or b is None:
        return None
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    return OpenInterval(lo, hi) if lo < hi else None


class IntervalUnion:
    """A finite union of open intervals kept as sorted, pairwise disjoint parts.

    Overlapping inputs are merged.  Parts that merely touch stay separate.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[Optional[OpenInterval]] = ()) -> None:
        items = sorted(p for p in parts if p is not None)
        merged: list[OpenInterval] = []
        for p in items:
            if merged and p.lo < merged[-1].hi:
                last = merged[-1]
                if p.hi > last.hi:
                    merged[-1] = OpenInterval(last.lo, p.hi)
            else:
                merged.append(p)
        self.parts: tuple[OpenInterval, ...] = tuple(merged)

    @classmethod
    def of(cls, *pairs: tuple[RatLike, RatLike]) -> "IntervalUnion":
        return cls(interval(lo, hi) for lo, hi in pairs)

    def __iter__(self) -> Iterator[OpenInterval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntervalUnion) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __lt__(self, other: "IntervalUnion") -> bool:
        return self.parts < other.parts

    def __repr__(self) -> str:
        if not self.parts:
            return "IntervalUnion(empty)"
        return "IntervalUnion(" + " u ".join(map(repr, self.parts)) + ")"

    def __contains__(self, x: object) -> bool:
        return any(x in p for p in self.parts)

    def part_containing(self, x: Fraction) -> Optional[OpenInterval]:
        for p in self.parts:
            if p.lo < x < p.hi:
                return p
        return None

    def contains_interval(self, iv: Optional[OpenInterval]) -> bool:
        if iv is None:
            return True
        return any(p.contains_interval(iv) for p in self.parts)

    def is_subset(self, other: "IntervalUnion") -> bool:
        return all(other.contains_interval(p) for p in self.parts)

    @property
    def measure(self) -> Fraction:
        return sum((p.length for p in self.parts), Fraction(0))

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.parts + other.parts)

    def intersection(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        for a in self.parts:
            for b in other.parts:
                c = interval_intersect(a, b)
                if c is not None:
                    out.append(c)
        return IntervalUnion(out)

    def intersect_interval(self, iv: Optional[OpenInterval]) -> "IntervalUnion":
        return self.intersection(IntervalUnion([iv]))

    def difference(self, other: "IntervalUnion") -> "IntervalUnion":
        """Remove the closure of ``other``; the result is again open."""
        return self.remove_closed([(b.lo, b.hi) for b in other.parts])

    def remove_points(self, points: Iterable[Fraction]) -> "IntervalUnion":
        return self.remove_closed([(p, p) for p in points])

    def remove_closed(self, segments: Sequence[tuple[Fraction, Fraction]]) -> "IntervalUnion":
        pieces = list(self.parts)
        for lo, hi in segments:
            nxt = []
            for p in pieces:
                if hi <= p.lo or lo >= p.hi:
                    nxt.append(p)
                    continue
                if p.lo < lo:
                    nxt.append(OpenInterval(p.lo, lo))
                if hi < p.hi:
                    nxt.append(OpenInterval(hi, p.hi))
            pieces = nxt
        return IntervalUnion(pieces)

    def boundary(self) -> list[Fraction]:
        """Sorted endpoints of all parts."""
        pts = set()
        for p in self.parts:
            pts.add(p.lo)
            pts.add(p.hi)
        return sorted(pts)

    def closure_contains(self, x: Fraction) -> bool:
        return any(p.lo <= x <= p.hi for p in self.parts)

    def join_at(self, admissible) -> "IntervalUnion":
        """Fuse parts that touch at a point p for which ``admissible(p)`` holds."""
        if not self.parts:
            return self
        out = [self.parts[0]]
        for p in self.parts[1:]:
            last = out[-1]
            if last.hi == p.lo and admissible(p.lo):
                out[-1] = OpenInterval(last.lo, p.hi)
            else:
                out.append(p)
        res = IntervalUnion.__new__(IntervalUnion)
        res.parts = tuple(out)
        return res

    def shift(self, t: Fraction) -> "IntervalUnion":
        return IntervalUnion(p.shift(t) for p in self.parts)

    def mirror(self, r: Fraction) -> "IntervalUnion":
        return IntervalUnion(p.mirror(r) for p in self.parts)

    def to_json(self) -> list[list[str]]:
        return [p.to_json() for p in self.parts]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "IntervalUnion":
        return cls(OpenInterval.from_json(d) for d in data)

    def format(self) -> str:
        return " u ".join(f"({format_rat(p.lo)},{format_rat(p.hi)})" for p in self.parts) or "{}"

    @classmethod
    def parse(cls, text: str) -> "IntervalUnion":
        text = text.strip()
        if text == "{}":
            return cls()
        parts = []
        for chunk in text.split(" u "):
            lo, hi = chunk.strip()[1:-1].split(",")
            parts.append(OpenInterval(rat(lo), rat(hi)))
        return cls(parts)


UNIT = IntervalUnion([OpenInterval(Fraction(0), Fraction(1))])
