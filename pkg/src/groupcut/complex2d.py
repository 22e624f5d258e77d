"""The two-dimensional complex of a breakpoint set, subadditivity slacks and minimality.

A point of the unit square is a vertex of the complex when at least two of
x, y and x+y lie on breakpoint lines (taken mod 1).  Around a vertex the
incident faces are described by sign patterns (sx, sy, sz): each sign tells
whether the face approaches the vertex from below (-1), along (0) or from
above (+1) in that coordinate.  A slack limit then reads
pi(x^sx) + pi(y^sy) - pi((x+y)^sz).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .exactnum import RatLike, common_denominator, format_rat, frac_mod1, rat
from .pwl import PwlFunction

Point = tuple[Fraction, Fraction]
Pattern = tuple[int, int, int]
Segment = tuple[Fraction, Fraction]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


class LineSet:
    """Breakpoint positions mod 1, with membership tests for x, y and x+y."""

    def __init__(self, points: Iterable[RatLike]):
        pts = {frac_mod1(rat(p)) for p in points}
        pts.add(Fraction(0))
        self.points: list[Fraction] = sorted(pts)
        self._set = set(self.points)

    def __contains__(self, x: Fraction) -> bool:
        return frac_mod1(x) in self._set

    def closed(self) -> list[Fraction]:
        return self.points + [Fraction(1)]


def incident_patterns(on_x: bool, on_y: bool, on_z: bool) -> list[Pattern]:
    """Sign patterns of the faces incident to a point lying on the given lines."""
    out = set()
    for dx, dy in product((-1, 0, 1), repeat=2):
        if dx == dy:
            zs: tuple[int, ...] = (dx,)
        elif dx == 0:
            zs = (dy,)
        elif dy == 0:
            zs = (dx,)
        else:
            zs = (-1, 0, 1)
        for dz in zs:
            out.add((dx if on_x else 0, dy if on_y else 0, dz if on_z else 0))
    return sorted(out)


def vertices(lines: LineSet) -> list[Point]:
    """All vertices of the complex inside [0,1]^2."""
    pts = lines.closed()
    zs = pts + [p + 1 for p in pts[1:]]
    out = set()
    for x in pts:
        for y in pts:
            out.add((x, y))
        for z in zs:
            y = z - x
            if 0 <= y <= 1:
                out.add((x, y))
                out.add((y, x))
    return sorted(out)


def vertex_patterns(lines: LineSet, x: Fraction, y: Fraction) -> list[Pattern]:
    return incident_patterns(x in lines, y in lines, (x + y) in lines)


def slack_at(fn: PwlFunction, x: Fraction, y: Fraction, pattern: Pattern) -> Fraction:
    sx, sy, sz = pattern
    return fn.side(x, sx) + fn.side(y, sy) - fn.side(x + y, sz)


def delta_pi(fn: PwlFunction, x: RatLike, y: RatLike) -> Fraction:
    x, y = rat(x), rat(y)
    return fn(x) + fn(y) - fn(x + y)


# faces


@dataclass(frozen=True, order=True)
class Face2D:
    """The polytope {x in I, y in J, x+y in K}; I, J in [0,1], K in [0,2]."""

    I: Segment
    J: Segment
    K: Segment
    vertices: tuple[Point, ...] = field(compare=False)
    dim: int = field(compare=False)

    @property
    def centroid(self) -> Point:
        n = len(self.vertices)
        return (sum(v[0] for v in self.vertices) / n, sum(v[1] for v in self.vertices) / n)

    def contains(self, p: Point) -> bool:
        x, y = p
        return (
            self.I[0] <= x <= self.I[1]
            and self.J[0] <= y <= self.J[1]
            and self.K[0] <= x + y <= self.K[1]
        )

    def approach(self, p: Point) -> Pattern:
        """Directions by which the relative interior approaches p."""
        cx, cy = self.centroid
        dx, dy = cx - p[0], cy - p[1]
        return (_sign(dx), _sign(dy), _sign(dx + dy))

    def projection(self, k: int) -> Segment:
        if k == 3:
            vals = [v[0] + v[1] for v in self.vertices]
        else:
            vals = [v[k - 1] for v in self.vertices]
        return (min(vals), max(vals))

    def describe(self) -> str:
        def seg(s: Segment) -> str:
            return f"{{{format_rat(s[0])}}}" if s[0] == s[1] else f"[{format_rat(s[0])},{format_rat(s[1])}]"

        return f"F({seg(self.I)},{seg(self.J)},{seg(self.K)})"


def _one_dim_faces(points: Sequence[Fraction]) -> list[Segment]:
    out = [(p, p) for p in points]
    out += [(a, b) for a, b in zip(points, points[1:])]
    return out


def _polytope(I: Segment, J: Segment, K: Segment) -> list[Point]:
    cand = set()
    for x in I:
        for y in J:
            cand.add((x, y))
        for z in K:
            cand.add((x, z - x))
    for y in J:
        for z in K:
            cand.add((z - y, y))
    return sorted(
        (x, y)
        for x, y in cand
        if I[0] <= x <= I[1] and J[0] <= y <= J[1] and K[0] <= x + y <= K[1]
    )


def _dimension(verts: Sequence[Point]) -> int:
    if len(verts) == 1:
        return 0
    x0, y0 = verts[0]
    dx, dy = verts[1][0] - x0, verts[1][1] - y0
    for x, y in verts[2:]:
        if dx * (y - y0) - dy * (x - x0) != 0:
            return 2
    return 1


def _smallest_face(points: Sequence[Fraction], seg: Segment) -> Segment:
    lo, hi = seg
    if lo == hi and lo in points:
        return (lo, lo)
    a = max(p for p in points if p <= lo)
    b = min(p for p in points if p >= hi)
    if a == b:
        return (a, a)
    # a point strictly inside a cell sits in that cell
    return (a, b)


def build_complex(B: Iterable[RatLike]) -> list[Face2D]:
    """All faces F(I,J,K) of the complex inside the unit square, without duplicates."""
    lines = LineSet(B)
    pts_q = lines.closed()
    # enumerate on integers scaled by the common denominator, convert at the end
    den = common_denominator(pts_q)
    pts = [int(p * den) for p in pts_q]
    zpts = pts + [p + den for p in pts[1:]]
    faces_1d = _one_dim_faces(pts)
    faces_k = _one_dim_faces(zpts)
    seen: dict[tuple, Face2D] = {}

    def back(seg: tuple[int, int]) -> Segment:
        return (Fraction(seg[0], den), Fraction(seg[1], den))

    for I in faces_1d:
        for J in faces_1d:
            lo, hi = I[0] + J[0], I[1] + J[1]
            for K in faces_k:
                if K[1] < lo or K[0] > hi:
                    continue
                verts = tuple(_polytope(I, J, K))
                if not verts or verts in seen:
                    continue
                p1 = (min(v[0] for v in verts), max(v[0] for v in verts))
                p2 = (min(v[1] for v in verts), max(v[1] for v in verts))
                p3 = (min(v[0] + v[1] for v in verts), max(v[0] + v[1] for v in verts))

                seen[verts] = Face2D(
                    back(_smallest_face(pts, p1)),
                    back(_smallest_face(pts, p2)),
                    back(_smallest_face(zpts, p3)),
                    tuple((Fraction(x, den), Fraction(y, den)) for x, y in verts),
                    _dimension(verts),
                )
    return sorted(seen.values(), key=lambda F: (F.dim, F.vertices))


def delta_pi_limit(fn: PwlFunction, face: Face2D, vertex: tuple[RatLike, RatLike]) -> Fraction:
    """Limit of the slack at ``vertex`` when approached from the relative interior of ``face``."""
    p = (rat(vertex[0]), rat(vertex[1]))
    if not face.contains(p):
        raise ValueError(f"point {p} is not on face {face.describe()}")
    return slack_at(fn, p[0], p[1], face.approach(p))


def face_slacks(fn: PwlFunction, face: Face2D) -> list[Fraction]:
    return [slack_at(fn, v[0], v[1], face.approach(v)) for v in face.vertices]


class NotSubadditive(ValueError):
    def __init__(self, face: Face2D, vertex: Point, value: Fraction):
        super().__init__(
            f"negative slack {format_rat(value)} at ({format_rat(vertex[0])},{format_rat(vertex[1])}) "
            f"approached from {face.describe()}"
        )
        self.face, self.vertex, self.value = face, vertex, value


@dataclass(frozen=True)
class AdditiveFace:
    face: Face2D
    via: Face2D  # a face containing ``face`` whose slack limit vanishes on it


def additive_faces(fn: PwlFunction, complex_faces: Optional[list[Face2D]] = None) -> list[AdditiveFace]:
    """Faces on whose relative interior the slack (or a limit of it) vanishes.

    Closed under taking subfaces.  Raises :class:`NotSubadditive` if some slack
    limit is negative.
    """
    faces = complex_faces if complex_faces is not None else build_complex(fn.xs)
    zero_sets: list[tuple[Face2D, frozenset[Point]]] = []
    for F in faces:
        zs = set()
        for v in F.vertices:
            s = slack_at(fn, v[0], v[1], F.approach(v))
            if s < 0:
                raise NotSubadditive(F, v, s)
            if s == 0:
                zs.add(v)
        if zs:
            zero_sets.append((F, frozenset(zs)))
    out: dict[Face2D, AdditiveFace] = {}
    by_vertices = {frozenset(E.vertices): E for E in faces}
    for F, zs in zero_sets:
        fv = set(F.vertices)
        for verts, E in by_vertices.items():
            if E in out or not verts <= zs or not verts <= fv:
                continue
            out[E] = AdditiveFace(E, F)
    return sorted(out.values(), key=lambda a: (a.face.dim, a.face.vertices))


def additive_vertices(fn: PwlFunction, lines: LineSet) -> list[Point]:
    """Vertices where some incident slack limit vanishes."""
    out = []
    for x, y in vertices(lines):
        if any(slack_at(fn, x, y, pat) == 0 for pat in vertex_patterns(lines, x, y)):
            out.append((x, y))
    return out


# minimality


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.minimal

    def to_json(self) -> dict:
        return {
            "minimal": self.minimal,
            "reason": self.reason,
            "witness": [format_rat(w) if isinstance(w, Fraction) else w for w in self.witness],
        }


def check_minimality(fn: PwlFunction) -> MinimalityReport:
    """Exact test of pi(0)=0, pi(f)=1, 0<=pi<=1, subadditivity and symmetry."""
    f = fn.f
    if f is None:
        return MinimalityReport(False, "no f given")
    if fn(0) != 0:
        return MinimalityReport(False, "pi(0) != 0", (Fraction(0),))
    if fn(f) != 1:
        return MinimalityReport(False, "pi(f) != 1", (f,))
    for x, t in zip(fn.xs, fn.triples):
        for v in t:
            if v < 0 or v > 1:
                return MinimalityReport(False, "value outside [0,1]", (x, v))
    lines = LineSet(list(fn.xs) + [f])
    for x, y in vertices(lines):
        for pat in vertex_patterns(lines, x, y):
            s = slack_at(fn, x, y, pat)
            if s < 0:
                return MinimalityReport(False, "subadditivity violated", (x, y, s))
    # symmetry along x+y = f: the sum pi(x)+pi(f-x) is piecewise linear with
    # breakpoints in B and f-B, so checking values and both limits there suffices
    pts = {frac_mod1(p) for p in fn.xs} | {frac_mod1(f - p) for p in fn.xs}
    for p in sorted(pts):
        g = frac_mod1(f - p)
        for s in (-1, 0, 1):
            if fn.side(p, s) + fn.side(g, -s) != 1:
                return MinimalityReport(False, "symmetry violated", (p, s))
    return MinimalityReport(True)
