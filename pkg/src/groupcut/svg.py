"""Plain SVG diagrams: function graphs, the 2-D complex, and move diagrams.

Coordinates are exact rationals until the last moment, where they are
rounded to four decimals so output files are byte-stable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Optional

from .complex2d import additive_faces, build_complex
from .exactnum import format_rat
from .presentation import FinitePresentation
from .pwl import PwlFunction

TRANSLATION_COLOR = "#1f4fd1"
REFLECTION_COLOR = "#d12a1f"
PALETTE = ("#f2c14e", "#7bc47f", "#b48ede", "#f08a5d", "#5fb7d4", "#c7c7c7")
SIZE = 400
MARGIN = 30


def _num(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


class Canvas:
    """Maps the box [x0,x1] x [y0,y1] onto a square picture, y pointing up."""

    def __init__(self, x0=0, x1=1, y0=0, y1=1, title: str = ""):
        self.box = tuple(Fraction(v) for v in (x0, x1, y0, y1))
        self.items: list[str] = []
        self.title = title

    def _pt(self, x, y) -> tuple[str, str]:
        x0, x1, y0, y1 = self.box
        px = MARGIN + float((Fraction(x) - x0) / (x1 - x0)) * SIZE
        py = MARGIN + float((y1 - Fraction(y)) / (y1 - y0)) * SIZE
        return _num(px), _num(py)

    def polyline(self, pts, color="#000000", width=1.5, dash: Optional[str] = None) -> None:
        coords = " ".join(",".join(self._pt(x, y)) for x, y in pts)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"{extra}/>')

    def polygon(self, pts, fill: str, opacity=0.5, stroke="none") -> None:
        coords = " ".join(",".join(self._pt(x, y)) for x, y in pts)
        self.items.append(f'<polygon points="{coords}" fill="{fill}" fill-opacity="{opacity}" stroke="{stroke}"/>')

    def dot(self, x, y, filled: bool, color="#000000") -> None:
        cx, cy = self._pt(x, y)
        fill = color if filled else "#ffffff"
        self.items.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="{fill}" stroke="{color}"/>')

    def text(self, x, y, s: str, size=11) -> None:
        px, py = self._pt(x, y)
        self.items.append(f'<text x="{px}" y="{py}" font-size="{size}" font-family="sans-serif">{s}</text>')

    def frame(self) -> None:
        x0, x1, y0, y1 = self.box
        self.polyline([(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)], "#888888", 0.8)
        self.text(x0, y0 - (y1 - y0) / 20, format_rat(x0))
        self.text(x1, y0 - (y1 - y0) / 20, format_rat(x1))

    def render(self) -> str:
        side = SIZE + 2 * MARGIN
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" '
            f'viewBox="0 0 {side} {side}">'
        )
        title = f"<title>{self.title}</title>" if self.title else ""
        return "\n".join([head, title, '<rect width="100%" height="100%" fill="#ffffff"/>', *self.items, "</svg>"]) + "\n"


def _graph(c: Canvas, fn: PwlFunction, color: str, dash: Optional[str] = None) -> None:
    for i, (a, b) in enumerate(zip(fn.xs, fn.xs[1:])):
        c.polyline([(a, fn.triples[i][2]), (b, fn.triples[i + 1][0])], color, 1.8, dash)
    for x, (left, value, right) in zip(fn.xs, fn.triples):
        if left == value == right:
            continue
        for lim in sorted({left, right} - {value}):
            c.dot(x, lim, False, color)
        c.dot(x, value, True, color)


def function_svg(fn: PwlFunction, witness: Optional[PwlFunction] = None) -> str:
    """Graph of the function with open markers at one-sided limits; optional dashed overlay."""
    vals = [v for t in fn.triples for v in t]
    if witness is not None:
        vals += [v for t in witness.triples for v in t]
    lo, hi = min(min(vals), Fraction(0)), max(max(vals), Fraction(1))
    c = Canvas(0, 1, lo, hi, "function")
    c.frame()
    _graph(c, fn, "#000000")
    if witness is not None:
        _graph(c, witness, "#2a9d3a", "5,3")
    return c.render()


def complex_svg(fn: PwlFunction) -> str:
    """The 2-D complex on the unit square with additive faces shaded."""
    c = Canvas(title="complex")
    faces = build_complex(fn.xs)
    for add in additive_faces(fn, faces):
        F = add.face
        if F.dim == 2:
            c.polygon(_ordered(F.vertices), "#9bc53d", 0.6)
        elif F.dim == 1:
            c.polyline(F.vertices, "#2a7a2a", 2.5)
        else:
            c.dot(*F.vertices[0], True, "#2a7a2a")
    for F in faces:
        if F.dim == 1:
            c.polyline(F.vertices, "#999999", 0.5)
    c.frame()
    return c.render()


def _ordered(verts) -> list:
    # convex polygon: sort by angle around the centroid, exactly via quadrant and cross products
    n = len(verts)
    cx = sum(v[0] for v in verts) / n
    cy = sum(v[1] for v in verts) / n

    def half(v):
        dx, dy = v[0] - cx, v[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(verts, key=cmp_to_key(cmp))


def closure_svg(pres: FinitePresentation) -> str:
    """Move diagram: graphs of translations (blue) and reflections (red), component squares shaded."""
    c = Canvas(title="moves")
    for k, comp in enumerate(pres.components):
        color = PALETTE[k % len(PALETTE)]
        for a in comp:
            for b in comp:
                c.polygon([(a.lo, b.lo), (a.hi, b.lo), (a.hi, b.hi), (a.lo, b.hi)], color, 0.55)
    for m in pres.moves:
        d = m.dom
        assert d is not None
        color = TRANSLATION_COLOR if m.chi == 1 else REFLECTION_COLOR
        c.polyline([(d.lo, m.map(d.lo)), (d.hi, m.map(d.hi))], color, 2)
    c.frame()
    return c.render()
