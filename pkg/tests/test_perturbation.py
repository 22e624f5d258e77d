import random
from fractions import Fraction as F

import pytest

from groupcut.closure import closure_of, respects_check
from groupcut.complex2d import check_minimality
from groupcut.exactnum import IntervalUnion, OpenInterval
from groupcut.moves import reflection, translation
from groupcut.perturbation import (
    decompose,
    epsilon_for,
    equivariant_sample,
    extremality_test,
    finite_dim_space,
    refine,
    uncovered_components,
)
from groupcut.presentation import FinitePresentation
from groupcut.pwl import PwlFunction, equiv7_example_1, gmic, linear_combine, minimal_no_covered_interval, two_slope

H, Q = F(1, 2), F(1, 4)


def setup(pi):
    pres = closure_of(pi).presentation
    ref = refine(pi, pres)
    return pres, ref, uncovered_components(pres, ref)


# expected basis element: 0 at 0, x - 1/4 on (0,1/2), 0 on [1/2,1)
EXPECTED_BASIS = PwlFunction([0, Q, H, 1], [(0, 0, -Q), (0, 0, 0), (Q, 0, 0), (0, 0, -Q)])


def test_refine_equiv7():
    pres, ref, _ = setup(equiv7_example_1())
    assert ref.X == [0, H, 1]
    assert ref.Z == [Q]
    assert ref.Bprime == [0, Q, H, 1]
    assert ref.U == IntervalUnion.of((0, H))
    assert ref.Uprime == IntervalUnion.of((0, Q), (Q, H))


def test_refine_others():
    _, ref, _ = setup(minimal_no_covered_interval())
    assert not ref.C and ref.Bprime == [0, Q, H, F(3, 4), 1]
    g = gmic(F(4, 5))
    _, ref, comps = setup(g)
    assert not ref.U and ref.Bprime == list(g.xs) and comps == []


def test_uncovered_components():
    _, _, comps = setup(equiv7_example_1())
    assert len(comps) == 1
    c = comps[0]
    assert c.intervals == (OpenInterval(0, Q), OpenInterval(Q, H))
    assert c.fundamental_domain == OpenInterval(0, Q)
    assert c.connecting_moves == (translation(0, 0, Q), reflection(H, 0, Q))
    _, _, comps = setup(minimal_no_covered_interval())
    assert [c.intervals for c in comps] == [
        (OpenInterval(0, Q), OpenInterval(Q, H)),
        (OpenInterval(H, F(3, 4)), OpenInterval(F(3, 4), 1)),
    ]


def test_finite_space_equiv7():
    pi = equiv7_example_1()
    pres, ref, comps = setup(pi)
    space = finite_dim_space(pi, ref, pres, comps)
    assert space.dimension == 1
    b = space.finite_basis[0]
    scale = b(F(1, 8)) / EXPECTED_BASIS(F(1, 8))
    assert b.same_values(EXPECTED_BASIS.scale(scale))


def test_finite_space_gmic():
    g = gmic(F(4, 5))
    pres, ref, comps = setup(g)
    assert finite_dim_space(g, ref, pres, comps).dimension == 0


def test_finite_space_refuses_two_sided():
    pi = minimal_no_covered_interval()
    pres, ref, comps = setup(pi)
    with pytest.raises(ValueError, match="two-sided"):
        finite_dim_space(pi, ref, pres, comps)


def test_equivariant_sample():
    pi = equiv7_example_1()
    pres, ref, comps = setup(pi)
    s = equivariant_sample(comps[0])
    assert s(F(1, 8)) == 1 and s(F(3, 8)) == -1
    for b in ref.Bprime:
        assert s.limits(b) == (0, 0, 0)
    assert respects_check(s, pres)
    assert epsilon_for(pi, s).epsilon > 0


def test_sample_violates_other_moves():
    _, _, comps = setup(equiv7_example_1())
    s = equivariant_sample(comps[0])
    # tau_{1/4} also maps the fundamental domain onto the second cell but is not a connecting move
    assert not respects_check(s, FinitePresentation([translation(Q, 0, Q)]))


def test_epsilon():
    pi = equiv7_example_1()
    e = epsilon_for(pi, EXPECTED_BASIS)
    assert e.epsilon > 0
    for sign in (1, -1):
        assert check_minimality(linear_combine([(1, pi), (sign * e.epsilon, EXPECTED_BASIS)]))
    assert epsilon_for(pi, linear_combine([(1, pi), (F(1, 4), EXPECTED_BASIS)]) - pi).epsilon > 0
    assert epsilon_for(pi, PwlFunction.zero()).epsilon == 1


def test_epsilon_rejects_non_perturbation():
    pi = equiv7_example_1()
    tent = PwlFunction.continuous([(0, 0), (Q, 1), (H, 0), (1, 0)])
    e = epsilon_for(pi, tent)
    assert e.epsilon == 0 and e.certificate


def test_decompose_trivial_cases():
    pi = equiv7_example_1()
    pres, ref, comps = setup(pi)
    fin, rest = decompose(pi, EXPECTED_BASIS, ref)
    assert fin.same_values(EXPECTED_BASIS) and rest.is_zero()
    s = equivariant_sample(comps[0])
    fin, rest = decompose(pi, s, ref)
    assert fin.is_zero() and rest.same_values(s)


def test_decompose_mixtures():
    pi = equiv7_example_1()
    pres, ref, comps = setup(pi)
    rng = random.Random(7)
    for _ in range(50):
        a = F(rng.randint(-6, 6), rng.randint(1, 6))
        b = F(rng.randint(-6, 6), rng.randint(1, 6))
        h = F(rng.randint(1, 5), rng.randint(1, 5))
        fin_part = EXPECTED_BASIS.scale(a)
        eq_part = equivariant_sample(comps[0], h).scale(b)
        mix = linear_combine([(1, fin_part), (1, eq_part)])
        fin, rest = decompose(pi, mix, ref, verify=False)
        assert fin.same_values(fin_part) and rest.same_values(eq_part)


def test_verdicts():
    assert extremality_test(gmic(F(4, 5))).verdict == "Extreme"
    r = extremality_test(equiv7_example_1())
    assert r.verdict == "NotExtreme" and r.epsilon > 0
    r = extremality_test(minimal_no_covered_interval())
    assert r.verdict == "Unsupported" and "two-sided discontinuous" in r.reason
    assert r.refinement is not None and len(r.components) == 2
    r = extremality_test(gmic(H).scale(H).with_f(H))
    assert r.verdict == "Unsupported" and r.reason.startswith("not minimal")
    assert extremality_test(two_slope(F(2, 3), 3)).verdict == "Extreme"


def test_report_json_is_deterministic():
    import json

    a = json.dumps(extremality_test(equiv7_example_1()).to_json())
    b = json.dumps(extremality_test(equiv7_example_1()).to_json())
    assert a == b
