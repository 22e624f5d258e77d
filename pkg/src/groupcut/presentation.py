"""Finite presentations of joined move ensembles.

A presentation is a finite set of moves together with a list of connected
covered components.  A component C stands for every move whose domain and
image both lie in C, of either character.  For a fixed map (character and
parameter) the presented domain is therefore the union of the explicit move
domains and of ``C ∩ map⁻¹(C)`` over all components; the maximal intervals of
that set are the maximal moves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .exactnum import UNIT, IntervalUnion, OpenInterval, interval_intersect
from .moves import Move

Key = tuple[int, Fraction]


def _normalize_components(components: Iterable[IntervalUnion]) -> tuple[IntervalUnion, ...]:
    return tuple(sorted(c for c in components if c))


@dataclass(frozen=True)
class FinitePresentation:
    moves: tuple[Move, ...]
    components: tuple[IntervalUnion, ...]
    continuity: IntervalUnion

    def __init__(
        self,
        moves: Iterable[Move] = (),
        components: Iterable[IntervalUnion] = (),
        continuity: IntervalUnion = UNIT,
    ) -> None:
        ms = sorted({m for m in moves if m.dom is not None}, key=Move.sort_key)
        object.__setattr__(self, "moves", tuple(ms))
        object.__setattr__(self, "components", _normalize_components(components))
        object.__setattr__(self, "continuity", continuity)

    @property
    def covered(self) -> IntervalUnion:
        out = IntervalUnion()
        for c in self.components:
            out = out.union(c)
        return out

    def keys(self) -> list[Key]:
        return sorted({m.key for m in self.moves}, key=lambda k: (-k[0], k[1]))

    def to_json(self) -> dict:
        return {
            "moves": [m.to_json() for m in self.moves],
            "components": [c.to_json() for c in self.components],
            "continuity": self.continuity.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinitePresentation":
        return cls(
            [Move.from_json(m) for m in data.get("moves", [])],
            [IntervalUnion.from_json(c) for c in data.get("components", [])],
            IntervalUnion.from_json(data["continuity"]) if "continuity" in data else UNIT,
        )

    def __repr__(self) -> str:
        comps = ", ".join(c.format() for c in self.components)
        return f"FinitePresentation(moves={list(self.moves)}, components=[{comps}])"


def _probe(key: Key) -> Move:
    return Move(key[0], key[1], OpenInterval(Fraction(-10), Fraction(10)))


def component_part(p: FinitePresentation, key: Key) -> IntervalUnion:
    """Points x with x and map(x) in one common component."""
    probe = _probe(key)
    out = IntervalUnion()
    for c in p.components:
        pre = IntervalUnion(probe.preimage_interval(part) for part in c)
        out = out.union(c.intersection(pre))
    return out


def explicit_domain(p: FinitePresentation, key: Key) -> IntervalUnion:
    return IntervalUnion(m.dom for m in p.moves if m.key == key)


def presented_domain(p: FinitePresentation, key: Key) -> IntervalUnion:
    return explicit_domain(p, key).union(component_part(p, key))


def joined_membership(p: FinitePresentation, m: Move) -> bool:
    """Whether the graph of ``m`` lies in the graph of the presented ensemble."""
    if m.dom is None:
        return True
    return presented_domain(p, m.key).contains_interval(m.dom)


def _maximal_moves(p: FinitePresentation, key: Key, domain: IntervalUnion) -> list[Move]:
    inside = component_part(p, key)
    return [Move(key[0], key[1], part) for part in domain if not inside.contains_interval(part)]


def reduce(p: FinitePresentation) -> FinitePresentation:
    """Unique reduced form: maximal moves only, none lying inside a component square."""
    moves: list[Move] = []
    for key in p.keys():
        moves += _maximal_moves(p, key, presented_domain(p, key))
    return FinitePresentation(moves, p.components, p.continuity)


def extend_component_by_move(p: FinitePresentation, move_index: int, component_index: int) -> FinitePresentation:
    m = p.moves[move_index]
    comp = p.components[component_index]
    if not comp.contains_interval(m.dom):
        raise ValueError(f"domain of {m} is not inside component {comp.format()}")
    comps = list(p.components)
    comps[component_index] = _fuse_at_continuity(comp.union(IntervalUnion([m.image])), p.continuity)
    return FinitePresentation(p.moves, comps, p.continuity)


def _fuse_at_continuity(c: IntervalUnion, continuity: IntervalUnion) -> IntervalUnion:
    return c.join_at(lambda x: x in continuity)


def merge_components(p: FinitePresentation) -> FinitePresentation:
    """Saturate the component list.

    Every move whose domain meets a component extends it by the image of the
    overlap; components that overlap are united; parts of one component that
    touch at a point of continuity are fused.  Repeats until nothing changes.
    """
    comps = [c for c in p.components if c]
    moves = list(p.moves) + [m.inverse() for m in p.moves]
    changed = True
    while changed:
        changed = False
        # move-driven growth
        for i, c in enumerate(comps):
            grown = c
            for m in moves:
                for part in c:
                    d = interval_intersect(m.dom, part)
                    if d is not None:
                        grown = grown.union(IntervalUnion([m.map_interval(d)]))
            grown = _fuse_at_continuity(grown, p.continuity)
            if grown != c:
                comps[i] = grown
                changed = True
        # overlap merging
        merged: list[IntervalUnion] = []
        for c in comps:
            hit = [k for k, d in enumerate(merged) if c.intersection(d)]
            if hit:
                changed = True
                acc = c
                for k in hit:
                    acc = acc.union(merged[k])
                merged = [d for k, d in enumerate(merged) if k not in hit]
                merged.append(_fuse_at_continuity(acc, p.continuity))
            else:
                merged.append(c)
        comps = merged
    return FinitePresentation(p.moves, comps, p.continuity)


def extend_moves_by_continuity(p: FinitePresentation) -> FinitePresentation:
    """Join same-map moves across a point m when m and its image are continuity points.

    The result is reduced.
    """
    moves: list[Move] = []
    for key in p.keys():
        probe = _probe(key)

        def admissible(x: Fraction, probe: Move = probe) -> bool:
            return x in p.continuity and probe.map(x) in p.continuity

        dom = presented_domain(p, key).join_at(admissible)
        moves += _maximal_moves(p, key, dom)
    return FinitePresentation(moves, p.components, p.continuity)


def restrict_to(p: FinitePresentation, region: IntervalUnion, double: bool = True) -> list[Move]:
    """Maximal moves of the presented ensemble with domain (and image, if ``double``) in ``region``.

    Only maps carried by explicit moves are listed; the moves inside a
    component square form a continuum and are represented by the component.
    """
    out: list[Move] = []
    for key in p.keys():
        probe = _probe(key)
        dom = presented_domain(p, key).intersection(region)
        if double:
            dom = dom.intersection(IntervalUnion(probe.preimage_interval(part) for part in region))
        out += [Move(key[0], key[1], part) for part in dom]
    return sorted(out, key=Move.sort_key)


def canonical_eq(p1: FinitePresentation, p2: FinitePresentation) -> bool:
    return p1.moves == p2.moves and p1.components == p2.components


def presentation_points(p: FinitePresentation) -> set[Fraction]:
    """All interval endpoints and parameters occurring in the presentation."""
    pts: set[Fraction] = set()
    for m in p.moves:
        pts.add(m.param)
        if m.dom:
            pts.update((m.dom.lo, m.dom.hi))
    for c in p.components:
        pts.update(c.boundary())
    return pts

