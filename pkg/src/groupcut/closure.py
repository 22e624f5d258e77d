"""Additive moves of a minimal function and their closed move semigroup.

The completion loop works on finite presentations and alternates two phases
until a round changes nothing:

* structural saturation: add inverses, grow and merge components
  (a move meeting a component carries the overlap into the component),
  join same-map moves across continuity points, reduce;
* composition: compose every ordered pair of presentation moves.

All endpoints and parameters stay on the grid of the input breakpoints, so
the loop terminates for rational input.  A round budget guards against
anything else.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .complex2d import Face2D, build_complex, check_minimality, slack_at
from .exactnum import IntervalUnion, OpenInterval, common_denominator, format_rat
from .moves import Move, compose, fundamental_pieces
from .presentation import (
    FinitePresentation,
    canonical_eq,
    extend_moves_by_continuity,
    merge_components,
    presentation_points,
)
from .pwl import PwlFunction

log = logging.getLogger("groupcut.closure")


class NotMinimalError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


def _open(seg: tuple[Fraction, Fraction]) -> OpenInterval:
    return OpenInterval(seg[0], seg[1])


def _mod1(seg: tuple[Fraction, Fraction]) -> OpenInterval:
    lo, hi = seg
    if lo >= 1:
        lo, hi = lo - 1, hi - 1
    return OpenInterval(lo, hi)


def _edge_move(E: Face2D) -> Move:
    px, py, pz = E.projection(1), E.projection(2), E.projection(3)
    if py[0] == py[1]:  # horizontal: x -> x + y0
        chi, param, dom = 1, py[0], _open(px)
    elif px[0] == px[1]:  # vertical: y -> y + x0
        chi, param, dom = 1, px[0], _open(py)
    else:  # diagonal x + y = r: x -> r - x
        chi, param, dom = -1, pz[0], _open(px)
    pieces = fundamental_pieces(chi, param, dom)
    assert len(pieces) == 1, pieces
    return pieces[0]


def _merge_overlapping(comps: list[IntervalUnion]) -> list[IntervalUnion]:
    out: list[IntervalUnion] = []
    for c in comps:
        hit = [k for k, d in enumerate(out) if c.intersection(d)]
        for k in hit:
            c = c.union(out[k])
        out = [d for k, d in enumerate(out) if k not in hit] + [c]
    if len(out) < len(comps):
        return _merge_overlapping(out)
    return out


def initial_ensemble(fn: PwlFunction) -> FinitePresentation:
    """Additive and limit-additive moves plus the components of additive 2-D faces."""
    fn = fn.canonical()
    report = check_minimality(fn)
    if not report:
        raise NotMinimalError(f"function is not minimal: {report.reason}")
    A = fn.continuity_set()
    faces = build_complex(fn.xs)
    zeros: dict[Face2D, set] = {}
    for F in faces:
        zeros[F] = {v for v in F.vertices if slack_at(fn, v[0], v[1], F.approach(v)) == 0}
    squares = [F for F in faces if F.dim == 2]
    # squares by zero vertex, so each edge only looks at its neighbours
    at_zero: dict[tuple, list[Face2D]] = {}
    for F in squares:
        for v in zeros[F]:
            at_zero.setdefault(v, []).append(F)
    comps: list[IntervalUnion] = []
    for F in squares:
        if len(zeros[F]) == len(F.vertices):
            comps.append(IntervalUnion([_open(F.projection(1)), _open(F.projection(2)), _mod1(F.projection(3))]))
    moves: list[Move] = []
    for E in faces:
        if E.dim != 1:
            continue
        ev = set(E.vertices)
        if ev <= zeros[E] or any(ev <= zeros[F] for F in at_zero.get(E.vertices[0], ())):
            m = _edge_move(E)
            moves += [m, m.inverse()]
    p = FinitePresentation(moves, _merge_overlapping(comps), A)
    return extend_moves_by_continuity(p)


# completion


@dataclass
class ClosureResult:
    presentation: FinitePresentation
    steps: list[str] = field(default_factory=list)
    budget_exhausted: bool = False
    rounds: int = 0
    off_grid: int = 0

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.to_json(),
            "rounds": self.rounds,
            "budget_exhausted": self.budget_exhausted,
            "steps": list(self.steps),
        }


def _saturate(p: FinitePresentation) -> FinitePresentation:
    while True:
        nxt = FinitePresentation(list(p.moves) + [m.inverse() for m in p.moves], p.components, p.continuity)
        nxt = merge_components(nxt)
        nxt = extend_moves_by_continuity(nxt)
        if canonical_eq(nxt, p):
            return nxt
        p = nxt


def grid_denominator(p: FinitePresentation, extra: tuple[Fraction, ...] = ()) -> int:
    return common_denominator(list(presentation_points(p)) + list(p.continuity.boundary()) + list(extra))


def moves_closure(p: FinitePresentation, budget: Optional[int] = None, q: Optional[int] = None) -> ClosureResult:
    """Smallest closed presentation containing ``p`` (rational case)."""
    if q is None:
        q = grid_denominator(p)
    if budget is None:
        budget = 10 * q * q
    steps: list[str] = []
    state = _saturate(p)
    steps.append(f"saturate: {len(state.moves)} moves, {len(state.components)} components")
    off_grid = 0
    for rnd in range(1, budget + 1):
        products = []
        for outer in state.moves:
            for inner in state.moves:
                c = compose(outer, inner)
                if c.dom is not None:
                    products.append(c)
        nxt = _saturate(FinitePresentation(list(state.moves) + products, state.components, state.continuity))
        bad = [x for x in presentation_points(nxt) if (x * q).denominator != 1]
        if bad:
            off_grid += len(bad)
            log.warning("off-grid values %s appeared in round %d", [format_rat(b) for b in bad], rnd)
        steps.append(
            f"round {rnd}: {len(products)} compositions -> {len(nxt.moves)} moves, {len(nxt.components)} components"
        )
        log.debug(steps[-1])
        if canonical_eq(nxt, state):
            log.info("closure stable after %d rounds: %d moves, %d components", rnd, len(nxt.moves), len(nxt.components))
            return ClosureResult(nxt, steps, False, rnd, off_grid)
        state = nxt
    steps.append("budget exhausted")
    log.warning("closure budget of %d rounds exhausted", budget)
    return ClosureResult(state, steps, True, budget, off_grid)


def closure_of(fn: PwlFunction, budget: Optional[int] = None) -> ClosureResult:
    fn = fn.canonical()
    p = initial_ensemble(fn)
    q = common_denominator(list(fn.xs) + [fn.f])
    return moves_closure(p, budget=budget, q=q)


# respecting moves


@dataclass(frozen=True)
class RespectsReport:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _move_constants(theta: PwlFunction, m: Move, samples: int) -> list[Fraction]:
    d = m.dom
    assert d is not None
    out = []
    for k in range(1, samples + 1):
        x = d.lo + d.length * k / (samples + 1)
        out.append(theta(m.map(x)) - m.chi * theta(x))
    # one-sided limits at both ends; a reflection reverses the side
    out.append(theta.side(m.map(d.lo), m.chi) - m.chi * theta.side(d.lo, 1))
    out.append(theta.side(m.map(d.hi), -m.chi) - m.chi * theta.side(d.hi, -1))
    return out


def respects_check(theta: PwlFunction, p: FinitePresentation, samples: int = 32) -> RespectsReport:
    """Does theta(move(x)) - chi * theta(x) stay constant on every move, and is theta affine
    with a common slope on each component?"""
    failures = []
    for m in p.moves:
        cs = _move_constants(theta, m, samples)
        if len(set(cs)) != 1:
            failures.append(f"{m}: constants {sorted(set(map(format_rat, cs)))}")
    for c in p.components:
        slopes = set()
        for part in c:
            a, b = theta.side(part.lo, 1), theta.side(part.hi, -1)
            s = (b - a) / part.length
            slopes.add(s)
            for k in range(1, samples + 1):
                x = part.lo + part.length * k / (samples + 1)
                if theta(x) != a + s * (x - part.lo):
                    failures.append(f"component {c.format()}: not affine on {part}")
                    break
        if len(slopes) > 1:
            failures.append(f"component {c.format()}: slopes {sorted(map(format_rat, slopes))}")
    return RespectsReport(not failures, tuple(failures))
