"""Random continuous minimal functions with breakpoints on a grid (1/q)Z.

Candidates are symmetric random value vectors on a small rational lattice,
kept only when they pass the finite minimality check; the survivors are
interpolated.  A few interpolated gmic functions are mixed in so that the
corpus always holds extreme cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .complex2d import check_minimality
from .gridoracle import GridFunction, grid_minimality
from .pwl import PwlFunction, gmic, interpolate_from_grid


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    fn: PwlFunction
    q: int


def random_grid_candidate(rng: random.Random, q: int, f_index: int, lattice: int) -> GridFunction:
    vals: list[Fraction | None] = [None] * q
    vals[0] = Fraction(0)
    vals[f_index] = Fraction(1)
    for i in range(1, q):
        if vals[i] is not None:
            continue
        j = (f_index - i) % q
        v = Fraction(rng.randint(0, lattice), lattice)
        vals[i] = v
        vals[j] = 1 - v if j != i else Fraction(1, 2)
    return GridFunction(q, tuple(v for v in vals if v is not None), Fraction(f_index, q))


def random_minimal_grid_function(rng: random.Random, q: int, attempts: int = 2000) -> GridFunction | None:
    for _ in range(attempts):
        f_index = rng.randint(1, q - 1)
        lattice = rng.choice((2, 3, 4, 6))
        g = random_grid_candidate(rng, q, f_index, lattice)
        if grid_minimality(g):
            return g
    return None


def _interpolate(g: GridFunction) -> PwlFunction:
    return interpolate_from_grid({Fraction(i, g.q): v for i, v in enumerate(g.values)}, g.f).canonical()


def generate(count: int, seed: int = 0, max_q: int = 10) -> Iterator[CorpusEntry]:
    """Yield ``count`` distinct minimal functions; deterministic in ``seed``."""
    rng = random.Random(seed)
    seen: set = set()
    made = 0
    # a handful of gmic functions first
    for q in range(2, max_q + 1, 2):
        if made >= count:
            return
        fn = gmic(Fraction(rng.randint(1, q - 1), q))
        key = (fn.xs, fn.triples)
        if key not in seen:
            seen.add(key)
            made += 1
            yield CorpusEntry(f"gmic-{fn.f}", fn, q)
    while made < count:
        q = rng.randint(2, max_q)
        g = random_minimal_grid_function(rng, q)
        if g is None:
            continue
        fn = _interpolate(g)
        key = (fn.xs, fn.triples)
        if key in seen or not check_minimality(fn):
            continue
        seen.add(key)
        made += 1
        yield CorpusEntry(f"grid-q{q}-{made}", fn, q)
