from fractions import Fraction as F

from groupcut.complex2d import (
    LineSet,
    additive_faces,
    build_complex,
    check_minimality,
    delta_pi,
    delta_pi_limit,
    vertices,
)
from groupcut.pwl import PwlFunction, equiv7_example_1, gmic, minimal_no_covered_interval, two_slope

HALF = [0, F(1, 2), 1]


def test_face_counts_half_grid():
    faces = build_complex(HALF)
    assert sum(F_.dim == 2 for F_ in faces) == 8
    assert len(faces) == 33
    # every vertex sits on the 1/2 grid
    assert all((2 * x).denominator == 1 and (2 * y).denominator == 1 for f in faces for x, y in f.vertices)


def test_horizontal_edges_exist():
    faces = build_complex(HALF)
    edges = {f.vertices for f in faces if f.dim == 1}
    assert ((0, 0), (F(1, 2), 0)) in edges
    assert ((F(1, 2), 0), (1, 0)) in edges


def test_brute_force_vertex_set():
    # vertex set agrees with the intersections of all grid lines, found by brute force
    q = 6
    B = [0, F(1, 3), F(1, 2), 1]
    lines = LineSet(B)
    brute = set()
    for i in range(2 * q + 1):
        for j in range(2 * q + 1):
            x, y = F(i, 2 * q), F(j, 2 * q)
            if x > 1 or y > 1:
                continue
            hits = (x in lines) + (y in lines) + ((x + y) in lines)
            if hits >= 2:
                brute.add((x, y))
    assert set(vertices(lines)) == brute


def test_delta_pi_values():
    pi = equiv7_example_1()
    # closed form: pi(1/4) + pi(1/4) - pi(1/2) = 1/2 + 1/2 - 1 = 0
    assert delta_pi(pi, F(1, 4), F(1, 4)) == 0
    for x in [F(k, 12) for k in range(12)]:
        assert delta_pi(pi, x, F(1, 2) - x) == 0
        assert delta_pi(pi, x, 0) == 0


def test_delta_pi_limits():
    pi = minimal_no_covered_interval()
    faces = build_complex(pi.xs)
    low = next(f for f in faces if f.dim == 2 and f.contains((F(1, 8), F(1, 8))) and f.contains((F(1, 4), F(1, 4))))
    assert delta_pi_limit(pi, low, (F(1, 4), F(1, 4))) == F(1, 2)
    # the edge y = 1/2, x > 0 keeps the value at 1/2: pi(0+) + pi(1/2) - pi(1/2+)
    edge = next(f for f in faces if f.dim == 1 and f.vertices == ((0, F(1, 2)), (F(1, 2), F(1, 2))))
    assert delta_pi_limit(pi, edge, (0, F(1, 2))) == 1
    # a 2-D face above that edge sees the right limit at 1/2 instead
    above = next(f for f in faces if f.dim == 2 and f.contains((F(1, 8), F(5, 8))) and f.contains((0, F(1, 2))))
    assert delta_pi_limit(pi, above, (0, F(1, 2))) == F(1, 2)
    g = gmic(F(4, 5))
    for face in build_complex(g.xs):
        for v in face.vertices:
            assert delta_pi_limit(g, face, v) == delta_pi(g, *v)


def test_additive_faces():
    g = gmic(F(4, 5))
    adds = {a.face for a in additive_faces(g)}
    square = next(f for f in build_complex(g.xs) if f.dim == 2 and f.contains((F(1, 5), F(1, 5))))
    assert square in adds
    e = equiv7_example_1()
    diag = [a.face for a in additive_faces(e) if a.face.dim == 1 and a.face.vertices == ((0, F(1, 2)), (F(1, 2), 0))]
    assert diag


def test_minimality_catalog():
    for fn in [gmic(F(4, 5)), equiv7_example_1(), minimal_no_covered_interval(), two_slope(F(2, 3), 3)]:
        assert check_minimality(fn)
    rep = check_minimality(gmic(F(1, 2)).scale(F(1, 2)).with_f(F(1, 2)))
    assert not rep and rep.reason == "pi(f) != 1"


def test_subadditivity_violation_detected():
    # raising one interior value breaks subadditivity or symmetry
    bad = PwlFunction.continuous([(0, 0), (F(1, 4), 1), (F(1, 2), 1), (1, 0)], F(1, 2))
    assert not check_minimality(bad)
