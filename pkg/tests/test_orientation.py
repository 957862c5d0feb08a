import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from obstacle_sat.orientation import (CCW, COLLINEAR, CW, CollinearError, Point, check_axioms,
                                      derive_chirotope, det3, orient, parse_points, perturb, pt,
                                      random_general_position, serialize_points, sort_with_parity)

coords = st.integers(-50, 50)
points = st.builds(pt, coords, coords)


def test_basic_orientations():
    assert orient(pt(0, 0), pt(1, 0), pt(0, 1)) == CCW
    assert orient(pt(0, 0), pt(0, 1), pt(1, 0)) == CW
    assert orient(pt(0, 0), pt(1, 1), pt(3, 3)) == COLLINEAR
    assert det3(pt(0, 0), pt(2, 0), pt(0, 3)) == 6


def test_rationals_exact():
    third = Fraction(1, 3)
    assert orient(pt(0, 0), pt(third, third), pt(1, 1)) == COLLINEAR
    with pytest.raises(TypeError):
        Point(0.5, 1)
    with pytest.raises(TypeError):
        pt(1, 2.0)


def test_collinear_rejected():
    with pytest.raises(CollinearError) as exc:
        derive_chirotope([pt(0, 0), pt(5, 1), pt(1, 1), pt(2, 2)])
    assert exc.value.triple == (0, 2, 3)


def test_sort_with_parity():
    assert sort_with_parity((2, 0, 1)) == ((0, 1, 2), 1)
    assert sort_with_parity((1, 0, 2)) == ((0, 1, 2), -1)
    with pytest.raises(ValueError):
        sort_with_parity((1, 1, 2))


@given(points, points, points)
def test_permutation_sign(a, b, c):
    o = orient(a, b, c)
    assert orient(b, c, a) == o and orient(c, a, b) == o
    assert orient(b, a, c) == -o and orient(a, c, b) == -o


@given(points, points, points, coords, coords, st.integers(1, 9))
def test_translation_and_scaling(a, b, c, dx, dy, k):
    def move(p):
        return pt(k * p.x + dx, k * p.y + dy)
    assert orient(move(a), move(b), move(c)) == orient(a, b, c)
    mirror = [pt(-p.x, p.y) for p in (a, b, c)]
    assert orient(*mirror) == -orient(a, b, c)


def _pattern(pts, trip):
    chi = derive_chirotope(pts)
    return tuple(chi.is_cw(*t) for t in trip)


def test_axioms_single_out_realizable_four_point_patterns():
    # exactly 14 of the 16 sign patterns on 4 points survive, and those are
    # the ones random point sets produce
    trip = list(itertools.combinations(range(4), 3))
    ok = set()
    for bits in itertools.product([False, True], repeat=4):
        if not check_axioms(dict(zip(trip, bits)), 4):
            ok.add(bits)
    rng = random.Random(4)
    seen = {_pattern(random_general_position(4, rng, 30), trip) for _ in range(3000)}
    assert len(ok) == 14
    assert seen == ok


def test_axiom_violation_reported():
    trip = list(itertools.combinations(range(4), 3))
    # 0 sees 1,2,3 cyclically clockwise but 123 is counterclockwise
    bad = {t: True for t in trip}
    bad[(0, 2, 3)] = True
    bad[(1, 2, 3)] = False
    bad[(0, 1, 2)] = True
    bad[(0, 1, 3)] = False
    viol = check_axioms(bad, 4)
    assert viol and all(rule == "4pt" for rule, _ in viol)


def test_partial_assignment_rejected():
    with pytest.raises(ValueError, match="partial"):
        check_axioms({(0, 1, 2): True}, 4)


@given(st.integers(4, 7), st.integers(0, 10**6))
def test_random_point_sets_satisfy_axioms(n, seed):
    pts = random_general_position(n, random.Random(seed), 200)
    assert check_axioms(derive_chirotope(pts), n) == []


def test_perturb_breaks_collinearity_deterministically():
    line = [pt(i, 2 * i) for i in range(6)]
    moved = perturb(line)
    assert moved == perturb(line)
    derive_chirotope(moved)  # no CollinearError


@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=6, unique=True))
def test_perturb_keeps_strict_orientations(raw):
    pts = [pt(x, y) for x, y in raw]
    moved = perturb(pts)
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        o = orient(pts[i], pts[j], pts[k])
        if o != COLLINEAR:
            assert orient(moved[i], moved[j], moved[k]) == o


def test_points_json_round_trip():
    pts = [pt(1, 2), pt(Fraction(1, 3), -4)]
    assert parse_points(serialize_points(pts)) == pts
    with pytest.raises(ValueError, match="point #0"):
        parse_points('{"points": [[0.5, 1]]}')
