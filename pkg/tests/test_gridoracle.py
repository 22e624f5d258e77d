from fractions import Fraction as F

import pytest

from groupcut.gridoracle import (
    GridFunction,
    grid_extremality_oracle,
    grid_minimality,
    grid_perturbation_dimension,
    grid_witness,
    restrict_to_grid,
)
from groupcut.perturbation import epsilon_for, extremality_test
from groupcut.pwl import PwlFunction, equiv7_example_1, gmic

H = F(1, 2)
FLAT = PwlFunction.continuous([(0, 0), (F(1, 4), H), (H, H), (F(3, 4), 1), (1, 0)], F(3, 4))


def test_restrict():
    g = restrict_to_grid(gmic(H), 4)
    assert g.values == (0, H, 1, H)
    with pytest.raises(ValueError):
        restrict_to_grid(gmic(H), 1)
    with pytest.raises(ValueError):
        restrict_to_grid(gmic(F(1, 3)), 4)
    with pytest.raises(ValueError, match="discontinuous"):
        restrict_to_grid(equiv7_example_1(), 4)


def test_grid_minimality():
    g = restrict_to_grid(gmic(H), 4)
    assert grid_minimality(g)
    assert not grid_minimality(GridFunction(4, (0, 0, 0, 0), H))
    bumped = GridFunction(4, (0, H + 1, 1, H), H)
    assert not grid_minimality(bumped)


def test_grid_dimension():
    assert grid_perturbation_dimension(restrict_to_grid(gmic(H), 4)) == 0
    assert grid_perturbation_dimension(GridFunction(2, (0, 1), H)) == 0
    assert grid_perturbation_dimension(restrict_to_grid(FLAT, 16)) >= 1


def test_oracle():
    assert grid_extremality_oracle(gmic(F(4, 5))) == "Extreme"
    assert grid_extremality_oracle(FLAT) == "NotExtreme"
    assert extremality_test(FLAT).verdict == "NotExtreme"


def test_grid_witness_is_effective():
    w = grid_witness(FLAT)
    assert w is not None and epsilon_for(FLAT, w).epsilon > 0
    assert grid_witness(gmic(F(4, 5))) is None
