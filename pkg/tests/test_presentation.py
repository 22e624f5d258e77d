import json
from fractions import Fraction as F

from groupcut.exactnum import UNIT, IntervalUnion
from groupcut.moves import reflection, translation
from groupcut.presentation import (
    FinitePresentation,
    canonical_eq,
    extend_component_by_move,
    extend_moves_by_continuity,
    joined_membership,
    merge_components,
    reduce,
    restrict_to,
)

H, Q = F(1, 2), F(1, 4)


def iu(*pairs):
    return IntervalUnion.of(*pairs)


def equiv7_presentation():
    return FinitePresentation([translation(0, 0, H), reflection(H, 0, H)], [iu((H, 1))])


def test_membership():
    p = equiv7_presentation()
    assert joined_membership(p, reflection(H, F(1, 8), F(3, 8)))
    assert joined_membership(p, translation(F(1, 8), F(5, 8), F(3, 4)))
    assert not joined_membership(p, translation(F(1, 8), 0, F(1, 8)))


def test_reduce():
    split = FinitePresentation([reflection(H, 0, Q), reflection(H, Q, H)], [], UNIT.remove_points([Q]))
    assert reduce(split) == split
    inside = FinitePresentation([translation(F(1, 8), F(5, 8), F(3, 4))], [iu((H, 1))])
    assert reduce(inside).moves == ()
    p = reduce(equiv7_presentation())
    assert reduce(p) == p


def test_extend_component_by_move():
    p = FinitePresentation([translation(Q, H, F(3, 4))], [iu((H, F(3, 4)))])
    assert extend_component_by_move(p, 0, 0).components == (iu((H, 1)),)
    refl = FinitePresentation([reflection(F(3, 2), H, F(3, 4))], [iu((H, F(3, 4)))], UNIT.remove_points([F(3, 4)]))
    assert extend_component_by_move(refl, 0, 0).components == (iu((H, F(3, 4)), (F(3, 4), 1)),)
    within = FinitePresentation([reflection(F(5, 4), F(5, 8), F(3, 4))], [iu((H, F(3, 4)))])
    assert extend_component_by_move(within, 0, 0).components == within.components


def test_merge_components():
    p = FinitePresentation([], [iu((0, Q), (H, F(3, 4))), iu((F(1, 8), H))])
    assert merge_components(p).components == (iu((0, F(3, 4))),)
    apart = FinitePresentation([], [iu((0, Q)), iu((H, F(3, 4)))], UNIT.remove_points([Q, H]))
    assert merge_components(apart).components == apart.components
    linked = FinitePresentation([translation(H, 0, Q)], [iu((0, Q)), iu((H, F(3, 4)))], UNIT.remove_points([Q, H]))
    assert len(merge_components(linked).components) == 1


def test_extend_by_continuity():
    split = FinitePresentation([reflection(H, 0, Q), reflection(H, Q, H)])
    assert extend_moves_by_continuity(split).moves == (reflection(H, 0, H),)
    broken = FinitePresentation([reflection(H, 0, Q), reflection(H, Q, H)], [], UNIT.remove_points([Q]))
    assert extend_moves_by_continuity(broken).moves == broken.moves
    single = FinitePresentation([translation(0, 0, H)])
    assert extend_moves_by_continuity(single) == single


def test_restrict_to():
    p = equiv7_presentation()
    got = restrict_to(p, iu((0, H)))
    assert got == [translation(0, 0, H), reflection(H, 0, H)]
    inner = restrict_to(p, iu((H, 1)))
    assert inner and all(iu((H, 1)).contains_interval(m.dom) and iu((H, 1)).contains_interval(m.image) for m in inner)


def test_canonical_eq():
    p = reduce(equiv7_presentation())
    q = reduce(FinitePresentation(list(p.moves) + [reflection(H, F(1, 8), Q)], p.components))
    assert canonical_eq(p, q)
    two = FinitePresentation([], [iu((0, Q)), iu((H, 1))])
    assert canonical_eq(two, FinitePresentation([], [iu((H, 1)), iu((0, Q))]))
    assert not canonical_eq(p, FinitePresentation([translation(0, 0, H), reflection(F(1, 3), 0, F(1, 3))], p.components))


def test_json_roundtrip():
    p = equiv7_presentation()
    text = json.dumps(p.to_json())
    assert FinitePresentation.from_json(json.loads(text)) == p
