"""Exact null spaces by fraction-free row reduction over the integers."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _integer_row(row: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in row:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in row]
    return _primitive(ints)


def _primitive(ints: list[int]) -> tuple[int, ...]:
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    lead = next(v for v in ints if v)
    if lead < 0:
        g = -g
    return tuple(v // g for v in ints)


def row_echelon(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced echelon form with integer rows; returns (rows, pivot columns)."""
    work = list({_integer_row(r) for r in rows if any(r)})
    work = [list(r) for r in sorted(work)]
    pivots: list[int] = []
    done: list[list[int]] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(work) if r[col] != 0), None)
        if idx is None:
            continue
        piv = work.pop(idx)
        a = piv[col]
        rest = []
        for r in work:
            b = r[col]
            if b:
                r = list(_primitive([a * x - b * y for x, y in zip(r, piv)]))
            if any(r):
                rest.append(r)
        work = rest
        done = [
            list(_primitive([a * x - d[col] * y for x, y in zip(d, piv)])) if d[col] else d for d in done
        ]
        done.append(list(_primitive(piv)))
        pivots.append(col)
    return done, pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows * v = 0}, one vector per free column, in exact rationals."""
    if ncols == 0:
        return []
    echelon, pivots = row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in zip(echelon, pivots):
            v[pc] = Fraction(-r[fc], r[pc])
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(row_echelon(rows, ncols)[1])
