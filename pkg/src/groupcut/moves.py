"""Restricted translations and reflections of the real line.

A move is x -> x + t (character +1) or x -> r - x (character -1), restricted to
an open interval.  Empty moves keep their character, and their parameter is
normalized to 0 for translations and 1 for reflections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .exactnum import OpenInterval, RatLike, format_rat, interval_intersect, rat

TRANSLATION, REFLECTION = 1, -1


@dataclass(frozen=True)
class Move:
    chi: int
    param: Fraction
    dom: Optional[OpenInterval]

    def __post_init__(self) -> None:
        if self.chi not in (1, -1):
            raise ValueError("character must be +1 or -1")
        object.__setattr__(self, "param", rat(self.param))
        if self.dom is None:
            object.__setattr__(self, "param", Fraction(0 if self.chi == 1 else 1))

    @property
    def key(self) -> tuple[int, Fraction]:
        return (self.chi, self.param)

    @property
    def is_empty(self) -> bool:
        return self.dom is None

    def sort_key(self) -> tuple:
        d = (self.dom.lo, self.dom.hi) if self.dom else ()
        return (-self.chi, self.param, d)

    def __lt__(self, other: "Move") -> bool:
        return self.sort_key() < other.sort_key()

    # action

    def map(self, x: Fraction) -> Fraction:
        """The unrestricted map."""
        return x + self.param if self.chi == 1 else self.param - x

    def apply(self, x: RatLike) -> Optional[Fraction]:
        """Image of x, or ``None`` when x is outside the domain."""
        x = rat(x)
        if self.dom is None or x not in self.dom:
            return None
        return self.map(x)

    def map_interval(self, iv: Optional[OpenInterval]) -> Optional[OpenInterval]:
        if iv is None:
            return None
        return iv.shift(self.param) if self.chi == 1 else iv.mirror(self.param)

    def preimage_interval(self, iv: Optional[OpenInterval]) -> Optional[OpenInterval]:
        if iv is None:
            return None
        return iv.shift(-self.param) if self.chi == 1 else iv.mirror(self.param)

    @property
    def image(self) -> Optional[OpenInterval]:
        return self.map_interval(self.dom)

    # algebra

    def inverse(self) -> "Move":
        if self.chi == 1:
            return Move(1, -self.param, self.image)
        return Move(-1, self.param, self.image)

    def restrict(self, d: Optional[OpenInterval]) -> "Move":
        if d is not None and (self.dom is None or not self.dom.contains_interval(d)):
            raise ValueError(f"{d} is not inside the domain {self.dom}")
        return Move(self.chi, self.param, d)

    def restrict_meet(self, d: Optional[OpenInterval]) -> "Move":
        """Restriction to the intersection of the domain with d."""
        return Move(self.chi, self.param, interval_intersect(self.dom, d))

    def corestrict(self, i: Optional[OpenInterval]) -> "Move":
        img = self.image
        if i is not None and (img is None or not img.contains_interval(i)):
            raise ValueError(f"{i} is not inside the image {img}")
        return Move(self.chi, self.param, interval_intersect(self.dom, self.preimage_interval(i)))

    def is_restriction_of(self, other: "Move") -> bool:
        if self.chi != other.chi:
            return False
        if self.dom is None:
            return True
        if other.dom is None or self.param != other.param:
            return False
        return other.dom.contains_interval(self.dom)

    def __repr__(self) -> str:
        name = "tau" if self.chi == 1 else "rho"
        d = "{}" if self.dom is None else repr(self.dom)
        return f"{name}_{format_rat(self.param)}|{d}"

    def to_json(self) -> dict:
        return {
            "chi": self.chi,
            "param": format_rat(self.param),
            "dom": None if self.dom is None else self.dom.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Move":
        dom = data.get("dom")
        return cls(int(data["chi"]), rat(data["param"]), None if dom is None else OpenInterval.from_json(dom))


def translation(t: RatLike, lo: RatLike, hi: RatLike) -> Move:
    return Move(1, rat(t), OpenInterval(rat(lo), rat(hi)))


def reflection(r: RatLike, lo: RatLike, hi: RatLike) -> Move:
    return Move(-1, rat(r), OpenInterval(rat(lo), rat(hi)))


def compose(outer: Move, inner: Move) -> Move:
    """outer after inner."""
    chi = outer.chi * inner.chi
    param = outer.param + inner.param if outer.chi == 1 else outer.param - inner.param
    dom = interval_intersect(inner.dom, inner.preimage_interval(outer.dom))
    return Move(chi, param, dom)


def fundamental_pieces(chi: int, param: Fraction, dom: OpenInterval) -> list[Move]:
    """Split the map on ``dom`` (inside (0,1)) into moves whose images lie in (0,1).

    The parameter of each piece is shifted by an integer so that the image
    lands back in the unit interval.
    """
    probe = Move(chi, param, dom)
    img = probe.image
    assert img is not None
    # preimages of the integers strictly inside the image
    cuts = sorted(
        param - k if chi == -1 else k - param
        for k in range(math.floor(img.lo) + 1, math.ceil(img.hi))
    )
    bounds = [dom.lo] + [c for c in cuts if dom.lo < c < dom.hi] + [dom.hi]
    out = []
    for a, b in zip(bounds, bounds[1:]):
        piece = OpenInterval(a, b)
        shift = math.floor(probe.map(piece.midpoint))
        out.append(Move(chi, param - shift, piece))
    return out
