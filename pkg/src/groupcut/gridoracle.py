"""Brute-force cross-check on the finite cyclic group (1/q)Z / Z.

Everything here is a direct finite computation over q grid points and is
kept independent of the move machinery on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import common_denominator, format_rat
from .linalg import nullspace
from .pwl import PwlFunction


@dataclass(frozen=True)
class GridFunction:
    q: int
    values: tuple[Fraction, ...]
    f: Fraction

    def __post_init__(self) -> None:
        if len(self.values) != self.q:
            raise ValueError("need one value per grid point")
        if (self.f * self.q).denominator != 1:
            raise ValueError(f"f = {format_rat(self.f)} is not on the grid (1/{self.q})Z")

    @property
    def f_index(self) -> int:
        return int(self.f * self.q) % self.q

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i % self.q]

    def to_json(self) -> dict:
        return {"q": self.q, "f": format_rat(self.f), "values": [format_rat(v) for v in self.values]}


def restrict_to_grid(fn: PwlFunction, q: int) -> GridFunction:
    if q < 2:
        raise ValueError("grid needs q >= 2 (f must be a non-integral grid point)")
    if fn.f is None or (fn.f * q).denominator != 1:
        raise ValueError(f"f is not on the grid (1/{q})Z")
    vals = []
    for i in range(q):
        x = Fraction(i, q)
        left, value, right = fn.limits(x)
        if not left == value == right:
            raise ValueError(f"function is discontinuous at grid point {format_rat(x)}")
        vals.append(value)
    return GridFunction(q, tuple(vals), fn.f)


def grid_minimality(g: GridFunction) -> bool:
    q, v = g.q, g.values
    if v[0] != 0 or v[g.f_index] != 1:
        return False
    if any(x < 0 for x in v):
        return False
    for i in range(q):
        for j in range(i, q):
            if v[i] + v[j] < v[(i + j) % q]:
                return False
        if v[i] + v[(g.f_index - i) % q] != 1:
            return False
    return True


def _system(g: GridFunction) -> list[list[Fraction]]:
    q, v = g.q, g.values
    rows = []

    def unit(*terms: tuple[int, int]) -> list[Fraction]:
        r = [Fraction(0)] * q
        for idx, c in terms:
            r[idx % q] += c
        return r

    rows.append(unit((0, 1)))
    rows.append(unit((g.f_index, 1)))
    for i in range(q):
        if v[i] == 0:
            rows.append(unit((i, 1)))
        for j in range(i, q):
            if v[i] + v[j] == v[(i + j) % q]:
                rows.append(unit((i, 1), (j, 1), (i + j, -1)))
    return rows


def grid_perturbation_basis(g: GridFunction) -> list[list[Fraction]]:
    """Null space of the tight equations: grid perturbations keeping every tight pair tight."""
    return nullspace(_system(g), g.q)


def grid_perturbation_dimension(g: GridFunction) -> int:
    return len(grid_perturbation_basis(g))


def oracle_grid_size(fn: PwlFunction, oversample: int = 4) -> int:
    fn = fn.canonical()
    assert fn.f is not None
    return oversample * common_denominator(list(fn.xs) + [fn.f])


def grid_extremality_oracle(fn: PwlFunction, oversample: int = 4) -> str:
    """"Extreme" or "NotExtreme" from the restriction to the 1/(oversample q) grid."""
    if not fn.is_continuous():
        raise ValueError("grid oracle is for continuous functions")
    g = restrict_to_grid(fn, oracle_grid_size(fn, oversample))
    if not grid_minimality(g):
        raise ValueError("restriction is not minimal on the grid")
    return "Extreme" if grid_perturbation_dimension(g) == 0 else "NotExtreme"


def grid_witness(fn: PwlFunction, oversample: int = 4) -> PwlFunction | None:
    """First grid perturbation interpolated to a continuous function, or None."""
    n = oracle_grid_size(fn, oversample)
    g = restrict_to_grid(fn, n)
    basis = grid_perturbation_basis(g)
    if not basis:
        return None
    vec = basis[0]
    pts = [(Fraction(i, n), vec[i]) for i in range(n)] + [(Fraction(1), vec[0])]
    return PwlFunction.continuous(pts, fn.f)
