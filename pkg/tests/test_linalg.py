from fractions import Fraction as F

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcut.linalg import nullspace, rank


def matrices():
    return st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-3, 3).map(F), min_size=n, max_size=n), max_size=7).map(lambda r: (r, n))
    )


@settings(max_examples=200)
@given(matrices())
def test_nullspace_matches_sympy(data):
    rows, n = data
    basis = nullspace(rows, n)
    for v in basis:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0
    expected = n - (sympy.Matrix(rows).rank() if rows else 0)
    assert len(basis) == expected
    if basis:
        assert sympy.Matrix(basis).rank() == len(basis)
    assert rank(rows, n) == n - len(basis)


def test_small_cases():
    assert nullspace([], 2) == [[1, 0], [0, 1]]
    assert nullspace([[F(1), F(-1)]], 2) == [[1, 1]]
    assert nullspace([[F(1, 2), 0], [0, F(3)]], 2) == []
