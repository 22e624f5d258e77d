"""Effective perturbations of a minimal function and the extremality verdict.

Pipeline: minimality, closed move presentation, refined breakpoints
(component endpoints, orbits of uncovered additive-vertex projections,
reflection fixed points), uncovered components, the finite-dimensional
linear system over the refined complex, and a verified witness.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .closure import ClosureResult, closure_of
from .complex2d import LineSet, check_minimality, incident_patterns, vertices
from .exactnum import UNIT, IntervalUnion, OpenInterval, format_rat, frac_mod1, interval_intersect
from .linalg import nullspace
from .moves import Move, compose
from .presentation import FinitePresentation
from .pwl import PwlFunction, linear_combine

log = logging.getLogger("groupcut.perturbation")


class RefinementError(RuntimeError):
    """A structural property guaranteed for closed presentations failed (closure bug guard)."""


class UnsupportedInput(ValueError):
    pass


def _slack(fn: PwlFunction, x: Fraction, y: Fraction, pat: tuple[int, int, int]) -> Fraction:
    return fn.side(x, pat[0]) + fn.side(y, pat[1]) - fn.side(x + y, pat[2])


def _vertex_faces(lines: LineSet):
    for x, y in vertices(lines):
        yield x, y, incident_patterns(x in lines, y in lines, (x + y) in lines)


def additive_vertex_projections(fn: PwlFunction, lines: LineSet) -> set[Fraction]:
    out: set[Fraction] = set()
    for x, y, pats in _vertex_faces(lines):
        if any(_slack(fn, x, y, p) == 0 for p in pats):
            out.update((x, y, frac_mod1(x + y)))
    return out


# refinement


@dataclass
class RefinementData:
    C: IntervalUnion
    U: IntervalUnion
    X: list[Fraction]
    V: list[Fraction]
    Y: list[Fraction]
    Z: list[Fraction]
    Bprime: list[Fraction]
    Uprime: IntervalUnion
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        def pts(xs):
            return [format_rat(x) for x in xs]

        return {
            "C": self.C.to_json(),
            "U": self.U.to_json(),
            "X": pts(self.X),
            "V": pts(self.V),
            "Y": pts(self.Y),
            "Z": pts(self.Z),
            "Bprime": pts(self.Bprime),
            "Uprime": self.Uprime.to_json(),
        }


def _images(moves: tuple[Move, ...], pts: set[Fraction]) -> set[Fraction]:
    out = set()
    for m in moves:
        d = m.dom
        for x in pts:
            if d is not None and d.lo < x < d.hi:
                out.add(m.map(x))
    return out


def refine(fn: PwlFunction, pres: FinitePresentation) -> RefinementData:
    fn = fn.canonical()
    notes: list[str] = []
    C = pres.covered
    U = UNIT.difference(C)
    X = {Fraction(0), Fraction(1)} | set(C.boundary())
    V = {v for v in additive_vertex_projections(fn, LineSet(fn.xs)) if 0 <= v <= 1}
    VU = {v for v in V if v in U}
    Y = VU | _images(pres.moves, VU)
    extra = _images(pres.moves, Y) - Y
    while extra:
        notes.append(f"Y not closed after one step; added {sorted(map(format_rat, extra))}")
        log.warning(notes[-1])
        Y |= extra
        extra = _images(pres.moves, Y) - Y
    Z = set()
    for m in pres.moves:
        if m.chi == -1 and m.dom is not None:
            c = m.param / 2
            if c in m.dom and c in U:
                Z.add(c)
    for name, S in (("X", X), ("Z", Z)):
        stray = _images(pres.moves, S) - S
        if stray:
            raise RefinementError(f"{name} is not closed under the moves: {sorted(map(format_rat, stray))}")
    Bp = sorted(X | Y | Z)
    Uprime = U.remove_points(Bp)
    # breakpoint stabilization on the refined complex
    lines = LineSet(Bp)
    bset = set(Bp)
    for x, y, pats in _vertex_faces(lines):
        if any(_slack(fn, x, y, p) == 0 for p in pats):
            for p in (x, y, frac_mod1(x + y)):
                if p not in bset and p not in C:
                    raise RefinementError(
                        f"additive vertex ({format_rat(x)},{format_rat(y)}) projects to {format_rat(p)}, "
                        "outside the refined breakpoints and the covered set"
                    )
    return RefinementData(C, U, sorted(X), sorted(V), sorted(Y), sorted(Z), Bp, Uprime, notes)


# uncovered components


@dataclass(frozen=True)
class UncoveredComponent:
    intervals: tuple[OpenInterval, ...]
    fundamental_domain: OpenInterval
    connecting_moves: tuple[Move, ...]

    def to_json(self) -> dict:
        return {
            "intervals": [iv.to_json() for iv in self.intervals],
            "fundamental_domain": self.fundamental_domain.to_json(),
            "connecting_moves": [m.to_json() for m in self.connecting_moves],
        }


def refined_cells(ref: RefinementData) -> list[OpenInterval]:
    return [OpenInterval(a, b) for a, b in zip(ref.Bprime, ref.Bprime[1:])]


def uncovered_components(pres: FinitePresentation, ref: RefinementData) -> list[UncoveredComponent]:
    cells = [c for c in refined_cells(ref) if ref.Uprime.contains_interval(c)]
    cellset = set(cells)
    adj: dict[OpenInterval, list[tuple[Move, OpenInterval]]] = {c: [] for c in cells}
    for m in pres.moves:
        for c in cells:
            d = interval_intersect(m.dom, c)
            if d is None:
                continue
            img = m.map_interval(c)
            if d != c or img not in cellset:
                raise RefinementError(f"move {m} does not map the cell {c} onto a refined cell")
            adj[c].append((m.restrict(c), img))
    seen: dict[OpenInterval, Move] = {}
    out = []
    for start in cells:
        if start in seen:
            continue
        seen[start] = Move(1, Fraction(0), start)
        members = [start]
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for mv, img in adj[c]:
                cand = compose(mv, seen[c])
                if img not in seen:
                    seen[img] = cand
                    members.append(img)
                    queue.append(img)
                elif seen[img] != cand:
                    raise RefinementError(f"two different moves connect {start} to {img}: {seen[img]} and {cand}")
        members.sort()
        out.append(UncoveredComponent(tuple(members), start, tuple(seen[c] for c in members)))
    return out


# the finite-dimensional system


@dataclass
class PerturbationSpace:
    finite_basis: list[PwlFunction]
    components: list[UncoveredComponent]
    slope_jump_solution: list[list[Fraction]]
    variables: list[str]

    @property
    def dimension(self) -> int:
        return len(self.finite_basis)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "variables": self.variables,
            "finite_basis": [b.to_json() for b in self.finite_basis],
            "raw_basis": [[format_rat(v) for v in vec] for vec in self.slope_jump_solution],
            "components": [c.to_json() for c in self.components],
        }


def one_sided_at_origin(fn: PwlFunction) -> bool:
    left, value, right = fn.limits(0)
    return left == value or right == value


class _Forms:
    """Linear forms for the values and one-sided limits of a perturbation over the refined complex."""

    def __init__(self, fn: PwlFunction, pres: FinitePresentation, ref: RefinementData, comps: list[UncoveredComponent]):
        self.variables: list[str] = []
        slope_of: dict[OpenInterval, int] = {}
        for i, c in enumerate(pres.components):
            idx = self._var(f"slope covered {i}")
            for part in c:
                slope_of[part] = idx
        for j, comp in enumerate(comps):
            idx = self._var(f"slope uncovered {j}")
            for iv in comp.intervals:
                slope_of[iv] = idx
        jump_left: dict[Fraction, int] = {}
        jump_right: dict[Fraction, int] = {}
        for p in fn.discontinuities():
            l, v, r = fn.limits(p)
            if l != v:
                jump_left[p] = self._var(f"jump left {format_rat(p)}")
            if r != v:
                jump_right[p] = self._var(f"jump right {format_rat(p)}")
        n = len(self.variables)
        self.n = n
        zero = [Fraction(0)] * n

        def unit(k: int, c: Fraction = Fraction(1)) -> list[Fraction]:
            v = [Fraction(0)] * n
            v[k] = c
            return v

        def add(a, b):
            return [x + y for x, y in zip(a, b)]

        self.cells = refined_cells(ref)
        self.cell_slope: list[int] = []
        for cell in self.cells:
            idx = slope_of.get(cell)
            if idx is None:
                # a covered cell is one part of a component
                comp_part = ref.C.part_containing(cell.midpoint)
                if comp_part is None or comp_part not in slope_of:
                    raise RefinementError(f"cell {cell} is neither covered nor uncovered")
                idx = slope_of[comp_part]
            self.cell_slope.append(idx)
        right0 = unit(jump_right[Fraction(0)]) if Fraction(0) in jump_right else zero
        left0 = [-x for x in unit(jump_left[Fraction(0)])] if Fraction(0) in jump_left else zero
        self.forms: dict[Fraction, tuple[list[Fraction], list[Fraction], list[Fraction]]] = {}
        cur = right0
        self.left_at_one = zero
        for cell, s in zip(self.cells, self.cell_slope):
            lb = add(cur, unit(s, cell.length))
            b = cell.hi
            if b == 1:
                self.left_at_one = lb
                break
            vb = add(lb, unit(jump_left[b])) if b in jump_left else lb
            rb = add(vb, unit(jump_right[b])) if b in jump_right else vb
            self.forms[b] = (lb, vb, rb)
            cur = rb
        self.forms[Fraction(0)] = (left0, zero, right0)
        self._cell_index = {c.lo: k for k, c in enumerate(self.cells)}
        self.bprime = ref.Bprime

    def _var(self, name: str) -> int:
        self.variables.append(name)
        return len(self.variables) - 1

    def at(self, x: Fraction, s: int) -> list[Fraction]:
        x = frac_mod1(x)
        t = self.forms.get(x)
        if t is not None:
            return t[s + 1]
        # inside a cell: right limit at its left end plus slope times offset
        k = max(i for i, c in enumerate(self.cells) if c.lo < x)
        cell = self.cells[k]
        base = self.forms[cell.lo][2]
        out = list(base)
        out[self.cell_slope[k]] += x - cell.lo
        return out

    def render(self, vec: list[Fraction]) -> PwlFunction:
        def ev(form):
            return sum((a * b for a, b in zip(form, vec)), Fraction(0))

        xs, triples = [], []
        for b in self.bprime:
            key = Fraction(0) if b == 1 else b
            lf, vf, rf = self.forms[key]
            triples.append((ev(lf), ev(vf), ev(rf)))
            xs.append(b)
        return PwlFunction(xs, triples)


def finite_dim_space(
    fn: PwlFunction, ref: RefinementData, pres: FinitePresentation, comps: Optional[list[UncoveredComponent]] = None
) -> PerturbationSpace:
    fn = fn.canonical()
    if not one_sided_at_origin(fn):
        raise UnsupportedInput("two-sided discontinuous at origin")
    if comps is None:
        comps = uncovered_components(pres, ref)
    forms = _Forms(fn, pres, ref, comps)
    rows: list[list[Fraction]] = []
    assert fn.f is not None
    rows.append(forms.at(fn.f, 0))
    rows.append([a - b for a, b in zip(forms.left_at_one, forms.forms[Fraction(0)][0])])
    lines = LineSet(ref.Bprime)
    for x, y, pats in _vertex_faces(lines):
        for p in pats:
            if _slack(fn, x, y, p) == 0:
                a, b, c = forms.at(x, p[0]), forms.at(y, p[1]), forms.at(x + y, p[2])
                rows.append([u + v - w for u, v, w in zip(a, b, c)])
    raw = nullspace(rows, forms.n)
    basis = [forms.render(v) for v in raw]
    for b in basis:
        if b(0) != 0 or b(fn.f) != 0:
            raise RefinementError("reconstructed perturbation does not vanish at 0 and f")
    return PerturbationSpace(basis, comps, raw, forms.variables)


# equivariant perturbations


def equivariant_sample(component: UncoveredComponent, height: Fraction = Fraction(1)) -> PwlFunction:
    """Triangle bump on the fundamental domain, carried to every interval by its connecting move."""
    points: dict[Fraction, Fraction] = {Fraction(0): Fraction(0), Fraction(1): Fraction(0)}
    mid = component.fundamental_domain.midpoint
    for m in component.connecting_moves:
        img = m.image
        assert img is not None
        points.setdefault(img.lo, Fraction(0))
        points.setdefault(img.hi, Fraction(0))
        points[m.map(mid)] = m.chi * Fraction(height)
    xs = sorted(points)
    return PwlFunction.continuous([(x, points[x]) for x in xs])


# epsilon


@dataclass(frozen=True)
class EpsilonResult:
    epsilon: Fraction
    certificate: tuple = ()

    def to_json(self) -> dict:
        return {"epsilon": format_rat(self.epsilon), "certificate": [str(c) for c in self.certificate]}


class EpsilonVerificationError(RuntimeError):
    pass


def epsilon_for(fn: PwlFunction, pert: PwlFunction, verify: bool = True) -> EpsilonResult:
    """Largest eps from the slack ratios with pi +- eps * pert minimal; 0 if pert is not effective."""
    if pert.is_zero():
        return EpsilonResult(Fraction(1))
    assert fn.f is not None
    if pert(0) != 0 or pert(fn.f) != 0:
        return EpsilonResult(Fraction(0), ("perturbation does not vanish at 0 and f",))
    lines = LineSet(list(fn.xs) + list(pert.xs) + [fn.f])
    best: Optional[Fraction] = None
    for x in lines.closed():
        for s in (-1, 0, 1):
            a, b = fn.side(x, s), pert.side(x, s)
            if b == 0:
                continue
            if a == 0:
                return EpsilonResult(Fraction(0), ("nonnegativity", x, s))
            r = a / abs(b)
            best = r if best is None or r < best else best
    for x, y, pats in _vertex_faces(lines):
        for p in pats:
            b = _slack(pert, x, y, p)
            if b == 0:
                continue
            a = _slack(fn, x, y, p)
            if a == 0:
                return EpsilonResult(Fraction(0), ("tight slack moved", x, y, p))
            r = a / abs(b)
            best = r if best is None or r < best else best
    eps = Fraction(1) if best is None else best
    if verify:
        for sign in (1, -1):
            cand = linear_combine([(1, fn), (sign * eps, pert)])
            rep = check_minimality(cand)
            if not rep:
                raise EpsilonVerificationError(f"pi {'+' if sign > 0 else '-'} eps*pert not minimal: {rep.reason}")
    return EpsilonResult(eps)


# decomposition


def decompose(
    fn: PwlFunction, pert: PwlFunction, ref: Optional[RefinementData] = None, verify: bool = True
) -> tuple[PwlFunction, PwlFunction]:
    """Split into the interpolant over the refined complex and a part vanishing at its vertices."""
    fn = fn.canonical()
    if ref is None:
        ref = refine(fn, closure_of(fn).presentation)
    if not one_sided_at_origin(fn):
        raise UnsupportedInput("two-sided discontinuous at origin")
    bp = ref.Bprime
    triples = [pert.limits(b) for b in bp[:-1]]
    triples.append(triples[0])
    on_grid = PwlFunction(bp, triples)
    rest = linear_combine([(1, pert), (-1, on_grid)])
    for b in bp:
        if any(v != 0 for v in rest.limits(b)):
            raise RefinementError(f"remainder does not vanish at {format_rat(b)}")
    if verify:
        for part in (on_grid, rest):
            if not part.is_zero() and epsilon_for(fn, part).epsilon <= 0:
                raise RefinementError("a summand of an effective perturbation is not effective")
    return on_grid, rest


# extremality


@dataclass
class ExtremalityReport:
    verdict: str  # "Extreme", "NotExtreme" or "Unsupported"
    reason: str = ""
    witness: Optional[PwlFunction] = None
    epsilon: Optional[Fraction] = None
    refinement: Optional[RefinementData] = None
    presentation: Optional[FinitePresentation] = None
    space: Optional[PerturbationSpace] = None
    components: list[UncoveredComponent] = field(default_factory=list)
    closure: Optional[ClosureResult] = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "reason": self.reason}
        out["witness"] = None if self.witness is None else self.witness.to_json()
        out["epsilon"] = None if self.epsilon is None else format_rat(self.epsilon)
        out["presentation"] = None if self.presentation is None else self.presentation.to_json()
        out["Bprime"] = None if self.refinement is None else [format_rat(b) for b in self.refinement.Bprime]
        out["refinement"] = None if self.refinement is None else self.refinement.to_json()
        out["finite_dimension"] = None if self.space is None else self.space.dimension
        out["components"] = [c.to_json() for c in self.components]
        return out


def extremality_test(fn: PwlFunction, budget: Optional[int] = None) -> ExtremalityReport:
    fn = fn.canonical()
    rep = check_minimality(fn)
    if not rep:
        return ExtremalityReport("Unsupported", f"not minimal: {rep.reason}")
    result = closure_of(fn, budget=budget)
    pres = result.presentation
    if result.budget_exhausted:
        return ExtremalityReport("Unsupported", "closure budget exhausted", presentation=pres, closure=result)
    ref = refine(fn, pres)
    comps = uncovered_components(pres, ref)
    base = dict(refinement=ref, presentation=pres, components=comps, closure=result)
    if not one_sided_at_origin(fn):
        return ExtremalityReport("Unsupported", "two-sided discontinuous at origin", **base)
    space = finite_dim_space(fn, ref, pres, comps)
    if not space.finite_basis and not comps:
        return ExtremalityReport("Extreme", "no effective perturbation", space=space, **base)
    if space.finite_basis:
        witness = space.finite_basis[0]
        reason = f"finite-dimensional perturbation space of dimension {space.dimension}"
    else:
        witness = equivariant_sample(comps[0])
        reason = f"{len(comps)} uncovered component(s)"
    eps = epsilon_for(fn, witness)
    if eps.epsilon <= 0:
        raise EpsilonVerificationError(f"witness is not effective: {eps.certificate}")
    return ExtremalityReport("NotExtreme", reason, witness, eps.epsilon, space=space, **base)
