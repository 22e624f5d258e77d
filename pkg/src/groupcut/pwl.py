"""Periodic piecewise linear functions with one-sided limits at breakpoints."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .exactnum import (
    IntervalUnion,
    OpenInterval,
    RatLike,
    format_rat,
    frac_mod1,
    rat,
)

Triple = tuple[Fraction, Fraction, Fraction]

LEFT, AT, RIGHT = -1, 0, 1


class PwlFunction:
    """A 1-periodic piecewise linear function stored on [0, 1].

    ``xs`` runs from 0 to 1.  At each breakpoint we keep the triple
    (left limit, value, right limit); on an open cell the function is the
    affine interpolant of the right limit at its left end and the left limit
    at its right end.  ``f`` is ``None`` for perturbation functions.
    """

    __slots__ = ("xs", "triples", "f", "_index", "_memo")

    def __init__(self, xs: Sequence[RatLike], triples: Sequence[Sequence[RatLike]], f: Optional[RatLike] = None):
        xs_ = tuple(rat(x) for x in xs)
        tr = tuple(tuple(rat(v) for v in t) for t in triples)
        if len(xs_) < 2 or xs_[0] != 0 or xs_[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(xs_, xs_[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(tr) != len(xs_) or any(len(t) != 3 for t in tr):
            raise ValueError("need one (left, value, right) triple per breakpoint")
        first, last = tr[0], tr[-1]
        if first[0] != last[0] or first[1] != last[1] or first[2] != last[2]:
            raise ValueError("periodicity: the triples at 0 and at 1 must agree")
        self.xs: tuple[Fraction, ...] = xs_
        self.triples: tuple[Triple, ...] = tr  # type: ignore[assignment]
        self.f: Optional[Fraction] = None if f is None else rat(f)
        if self.f is not None and not 0 < self.f < 1:
            raise ValueError("f must lie strictly between 0 and 1")
        self._index = {x: i for i, x in enumerate(xs_)}
        self._memo: dict[Fraction, Triple] = {}

    # construction helpers

    @classmethod
    def continuous(cls, points: Sequence[tuple[RatLike, RatLike]], f: Optional[RatLike] = None) -> "PwlFunction":
        xs = [rat(x) for x, _ in points]
        ys = [rat(y) for _, y in points]
        return cls(xs, [(y, y, y) for y in ys], f)

    @classmethod
    def zero(cls) -> "PwlFunction":
        return cls([0, 1], [(0, 0, 0), (0, 0, 0)])

    # evaluation

    def _locate(self, x: Fraction) -> int:
        lo, hi = 0, len(self.xs) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.xs[mid] <= x:
                lo = mid
            else:
                hi = mid
        return lo

    def _cell_value(self, i: int, x: Fraction) -> Fraction:
        a, b = self.xs[i], self.xs[i + 1]
        ya, yb = self.triples[i][2], self.triples[i + 1][0]
        return ya + (yb - ya) * (x - a) / (b - a)

    def limits(self, x: RatLike) -> Triple:
        """(left limit, value, right limit) at x, after reducing x mod 1."""
        x = rat(x)
        hit = self._memo.get(x)
        if hit is not None:
            return hit
        r = frac_mod1(x)
        i = self._index.get(r)
        if i is not None:
            out = self.triples[i]
        else:
            v = self._cell_value(self._locate(r), r)
            out = (v, v, v)
        self._memo[x] = out
        return out

    def __call__(self, x: RatLike) -> Fraction:
        return self.limits(x)[1]

    def eval(self, x: RatLike) -> Fraction:
        return self.limits(x)[1]

    def side(self, x: RatLike, s: int) -> Fraction:
        """Left limit (s=-1), value (s=0) or right limit (s=1)."""
        return self.limits(x)[s + 1]

    def slope(self, i: int) -> Fraction:
        a, b = self.xs[i], self.xs[i + 1]
        return (self.triples[i + 1][0] - self.triples[i][2]) / (b - a)

    @property
    def cells(self) -> list[OpenInterval]:
        return [OpenInterval(a, b) for a, b in zip(self.xs, self.xs[1:])]

    # continuity

    def is_continuous_at(self, x: RatLike) -> bool:
        l, v, r = self.limits(x)
        return l == v == r

    def discontinuities(self) -> list[Fraction]:
        """Breakpoints in [0, 1) where a one-sided limit differs from the value."""
        return [x for x, t in zip(self.xs[:-1], self.triples) if not (t[0] == t[1] == t[2])]

    def is_continuous(self) -> bool:
        return not self.discontinuities()

    def continuity_set(self) -> IntervalUnion:
        """Largest open subset of (0, 1) on which the function is continuous."""
        return IntervalUnion([OpenInterval(Fraction(0), Fraction(1))]).remove_points(self.discontinuities())

    # structural operations

    def canonical(self) -> "PwlFunction":
        """Drop every interior breakpoint across which the function is continuous and affine."""
        keep = [0]
        for i in range(1, len(self.xs) - 1):
            l, v, r = self.triples[i]
            if l == v == r:
                prev = keep[-1]
                a, b, c = self.xs[prev], self.xs[i], self.xs[i + 1]
                s_left = (l - self.triples[prev][2]) / (b - a)
                s_right = (self.triples[i + 1][0] - r) / (c - b)
                if s_left == s_right:
                    continue
            keep.append(i)
        keep.append(len(self.xs) - 1)
        return PwlFunction([self.xs[i] for i in keep], [self.triples[i] for i in keep], self.f)

    def refine(self, points: Iterable[RatLike]) -> "PwlFunction":
        pts = set(self.xs)
        for p in points:
            p = rat(p)
            if 0 <= p <= 1:
                pts.add(p)
        xs = sorted(pts)
        return PwlFunction(xs, [self.limits(x) if x != 1 else self.triples[-1] for x in xs], self.f)

    def with_f(self, f: Optional[RatLike]) -> "PwlFunction":
        return PwlFunction(self.xs, self.triples, f)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PwlFunction):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.xs == b.xs and a.triples == b.triples and a.f == b.f

    def same_values(self, other: "PwlFunction") -> bool:
        """Pointwise equality (limits included), ignoring f."""
        return self.with_f(None) == other.with_f(None)

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.xs, c.triples, c.f))

    def is_zero(self) -> bool:
        return all(v == 0 for t in self.triples for v in t)

    def __add__(self, other: "PwlFunction") -> "PwlFunction":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "PwlFunction") -> "PwlFunction":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "PwlFunction":
        return linear_combine([(-1, self)])

    def scale(self, c: RatLike) -> "PwlFunction":
        return linear_combine([(c, self)])

    def __repr__(self) -> str:
        body = ", ".join(
            f"{format_rat(x)}:({format_rat(l)},{format_rat(v)},{format_rat(r)})"
            for x, (l, v, r) in zip(self.xs, self.triples)
        )
        tag = "" if self.f is None else f", f={format_rat(self.f)}"
        return f"PwlFunction[{body}{tag}]"

    # serialization

    def to_json(self) -> dict:
        pts = []
        for x, (l, v, r) in zip(self.xs, self.triples):
            if l == v == r:
                pts.append({"x": format_rat(x), "value": format_rat(v)})
            else:
                pts.append({"x": format_rat(x), "left": format_rat(l), "value": format_rat(v), "right": format_rat(r)})
        out: dict = {}
        if self.f is not None:
            out["f"] = format_rat(self.f)
        out["breakpoints"] = pts
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "PwlFunction":
        try:
            pts = data["breakpoints"]
            xs, triples = [], []
            for p in pts:
                v = rat(p["value"])
                xs.append(rat(p["x"]))
                triples.append((rat(p.get("left", v)), v, rat(p.get("right", v))))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed function JSON: {exc}") from exc
        f = data.get("f")
        return cls(xs, triples, None if f is None else rat(f))


PerturbationFn = PwlFunction


def linear_combine(terms: Sequence[tuple[RatLike, PwlFunction]]) -> PwlFunction:
    """Exact sum of c * fn over a common refinement.

    The result keeps the first ``f`` found among the inputs whose coefficient
    is 1, so ``pi + eps * perturbation`` stays a candidate cut function.
    """
    if not terms:
        return PwlFunction.zero()
    xs = sorted(set().union(*(t[1].xs for t in terms)))
    triples = []
    for x in xs:
        acc = [Fraction(0)] * 3
        for c, fn in terms:
            c = rat(c)
            lim = fn.triples[-1] if x == 1 else fn.limits(x)
            for k in range(3):
                acc[k] += c * lim[k]
        triples.append(tuple(acc))
    f = next((fn.f for c, fn in terms if rat(c) == 1 and fn.f is not None), None)
    return PwlFunction(xs, triples, f)


def interpolate_from_grid(values: Mapping[RatLike, RatLike], f: RatLike) -> PwlFunction:
    """Continuous interpolant of values given on {0, 1/q, ..., (q-1)/q}."""
    vals = {rat(k): rat(v) for k, v in values.items()}
    if not vals:
        raise ValueError("empty grid")
    q = len(vals)
    expected = [Fraction(i, q) for i in range(q)]
    missing = [x for x in expected if x not in vals]
    if missing or len(vals) != q:
        raise ValueError(f"grid values must cover exactly 0, 1/{q}, ..., {q - 1}/{q}; missing {missing}")
    if vals[Fraction(0)] != 0:
        raise ValueError("value at 0 must be 0")
    f = rat(f)
    if (f * q).denominator != 1:
        raise ValueError(f"f={f} is not on the 1/{q} grid")
    pts = [(x, vals[x]) for x in expected] + [(Fraction(1), vals[Fraction(0)])]
    return PwlFunction.continuous(pts, f).canonical()


# catalog


def gmic(f: RatLike) -> PwlFunction:
    f = rat(f)
    if not 0 < f < 1:
        raise ValueError("gmic needs 0 < f < 1")
    return PwlFunction.continuous([(0, 0), (f, 1), (1, 0)], f)


def two_slope(f: RatLike, s: RatLike) -> PwlFunction:
    """Continuous function with slopes ``s`` and -1/(1-f) only, symmetric on [0, f].

    On [0, f] it climbs with slope s, dips with slope -1/(1-f) on a middle
    piece and climbs again; on [f, 1] it descends to 0.  ``s = 1/f`` gives gmic.
    """
    f, s = rat(f), rat(s)
    if not 0 < f < 1:
        raise ValueError("two_slope needs 0 < f < 1")
    if s < 1 / f:
        raise ValueError("two_slope needs s >= 1/f")
    down = -1 / (1 - f)
    middle = (s * f - 1) / (s - down)
    if middle == 0:
        return gmic(f)
    a = (f - middle) / 2
    return PwlFunction.continuous(
        [(0, 0), (a, s * a), (a + middle, s * a + down * middle), (f, 1), (1, 0)], f
    ).canonical()


def equiv7_example_1() -> PwlFunction:
    h = Fraction(1, 2)
    return PwlFunction([0, h, 1], [(0, 0, h), (h, 1, 1), (0, 0, h)], h)


def minimal_no_covered_interval() -> PwlFunction:
    h = Fraction(1, 2)
    return PwlFunction([0, h, 1], [(h, 0, h), (h, 1, h), (h, 0, h)], h)


CATALOG_NAMES = ("gmic", "two_slope", "equiv7_example_1", "minimal_no_covered_interval")


def catalog(name: str, **params: RatLike) -> PwlFunction:
    if name == "gmic":
        return gmic(params.get("f", Fraction(4, 5)))
    if name == "two_slope":
        f = rat(params.get("f", Fraction(2, 3)))
        return two_slope(f, params.get("s", 2 / f))
    if name == "equiv7_example_1":
        return equiv7_example_1()
    if name == "minimal_no_covered_interval":
        return minimal_no_covered_interval()
    raise KeyError(f"unknown builtin function {name!r}; choose from {', '.join(CATALOG_NAMES)}")
