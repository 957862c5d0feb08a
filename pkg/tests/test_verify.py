import json
import math
import random
from fractions import Fraction
from pathlib import Path

import pytest
import shapely.geometry as sg
from hypothesis import given, reject, settings, strategies as st

from obstacle_sat import graphs
from obstacle_sat.cnf import eval_model
from obstacle_sat.encode import encode_outside
from obstacle_sat.orientation import pt
from obstacle_sat.verify import (DrawingError, Obstacle, ObstacleDrawing, assignment_of_drawing, check_polygon,
                                 check_representation, closed_segments_meet, convex_hull,
                                 open_segment_meets_closed_segment, parse_drawing, point_in_polygon,
                                 segment_meets_polygon, serialize_drawing)

DRAWINGS = Path(__file__).resolve().parent.parent / "drawings"
SQUARE = [(0, 0), (4, 0), (4, 4), (0, 4)]


def drawing(G, coords, polys=(), outside=False):
    return ObstacleDrawing(G, [pt(*p) for p in coords],
                           [Obstacle([pt(*q) for q in poly], outside) for poly in polys])


def test_c4_without_obstacles_is_invalid():
    rep = check_representation(drawing(graphs.cycle(4), SQUARE))
    assert not rep.valid
    assert rep.unblocked_non_edges == [(0, 2), (1, 3)]


def test_triangle_needs_no_obstacle():
    rep = check_representation(drawing(graphs.complete(3), [(0, 0), (4, 0), (1, 3)]))
    assert rep.valid and rep.num_obstacles == 0


def test_c4_with_central_obstacle():
    poly = [(1, 2), (2, 1), (3, 2), (2, 3)]
    rep = check_representation(drawing(graphs.cycle(4), SQUARE, [poly]))
    assert rep.valid
    # same obstacle claimed to be outside fails the outside check only
    rep = check_representation(drawing(graphs.cycle(4), SQUARE, [poly], outside=True))
    assert not rep.valid and rep.outside_check[0]["reason"].startswith("unclassified")


def test_pierced_edge_and_covered_vertex():
    poly = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
    rep = check_representation(drawing(graphs.cycle(4), SQUARE, [poly]))
    assert rep.covered_vertices == [(0, 0)]
    assert ((0, 1), 0) in rep.pierced_edges and ((0, 3), 0) in rep.pierced_edges
    assert not rep.valid


def test_touching_an_edge_counts():
    # the obstacle only touches edge 0-1 at one boundary point
    poly = [(2, 0), (1, -2), (3, -2)]
    rep = check_representation(drawing(graphs.path(2), [(0, 0), (4, 0)], [poly]))
    assert rep.pierced_edges == [((0, 1), 0)]


def test_blocking_is_about_the_open_segment():
    # touching only the endpoint of a non-edge does not block it
    G = graphs.empty(2)
    rep = check_representation(drawing(G, [(0, 0), (4, 0)], [[(4, 0), (6, -1), (6, 1)]]))
    assert rep.covered_vertices == [(1, 0)] and rep.unblocked_non_edges == [(0, 1)]


def test_structural_errors():
    with pytest.raises(DrawingError, match="collinear"):
        check_representation(drawing(graphs.empty(3), [(0, 0), (1, 1), (2, 2)]))
    with pytest.raises(DrawingError, match="counterclockwise"):
        check_polygon([(0, 0), (0, 4), (4, 0)])
    with pytest.raises(DrawingError, match="intersect"):
        check_polygon([(0, 0), (6, 0), (0, 4), (3, 5)])
    with pytest.raises(DrawingError, match="repeated"):
        check_polygon([(0, 0), (4, 0), (0, 0), (0, 4)])
    with pytest.raises(DrawingError, match="overlap"):
        check_polygon([(0, 0), (4, 0), (2, 0), (2, 3)])
    with pytest.raises(DrawingError, match="coordinates"):
        ObstacleDrawing(graphs.cycle(4), [pt(0, 0)])


def test_drawing_json_round_trip_and_errors(drawings_dir):
    d = parse_drawing((drawings_dir / "c5_pentagram.json").read_text())
    assert parse_drawing(serialize_drawing(d)) == d
    with pytest.raises(DrawingError, match="line 1, column"):
        parse_drawing('{"graph": ')
    with pytest.raises(DrawingError, match="keys"):
        parse_drawing('{"graph": {"n": 1, "edges": []}}')
    with pytest.raises(DrawingError, match="point #1"):
        parse_drawing('{"graph": {"n": 2, "edges": []}, "coords": [[0, 0], [0.5, 1]]}')
    with pytest.raises(DrawingError, match="obstacle #0"):
        parse_drawing('{"graph": {"n": 1, "edges": []}, "coords": [[0, 0]], "obstacles": [[1]]}')


def test_pentagram(drawings_dir):
    d = parse_drawing((drawings_dir / "c5_pentagram.json").read_text())
    rep = check_representation(d)
    assert rep.valid and rep.num_obstacles == 1 and rep.outside_check[0]["passed"]
    inst = encode_outside(graphs.cycle(5))
    assert eval_model(inst, assignment_of_drawing(d, "outside", inst))[0]
    json.dumps(rep.to_json())
    assert "outside: ok" in rep.summary()


def test_assignment_needs_valid_drawing():
    with pytest.raises(DrawingError, match="not a valid"):
        assignment_of_drawing(drawing(graphs.cycle(4), SQUARE), "outside")


def _transform(d, f, reverse=False):
    obs = [Obstacle([pt(*f(p)) for p in (ob.polygon[::-1] if reverse else ob.polygon)], ob.outside)
           for ob in d.obstacles]
    return ObstacleDrawing(d.graph, [pt(*f(p)) for p in d.coords], obs)


@settings(max_examples=15)
@given(st.sampled_from(["c5_pentagram", "k23", "c4_convex_no_obstacle"]),
       st.integers(-1000, 1000), st.integers(-1000, 1000), st.fractions(Fraction(1, 7), 9))
def test_invariant_under_similarity(name, dx, dy, k):
    d = parse_drawing((DRAWINGS / f"{name}.json").read_text())
    base = check_representation(d)
    moved = check_representation(_transform(d, lambda p: (k * p[0] + dx, k * p[1] + dy)))
    mirrored = check_representation(_transform(d, lambda p: (-p[0], p[1]), reverse=True))
    for rep in (moved, mirrored):
        assert rep.valid == base.valid
        assert rep.unblocked_non_edges == base.unblocked_non_edges


# ---- exact predicates against shapely on small integer inputs

small = st.integers(-6, 6)
ipt = st.tuples(small, small)


@st.composite
def star_polygons(draw):
    k = draw(st.integers(3, 7))
    rng = random.Random(draw(st.integers(0, 10**6)))
    pts = set()
    while len(pts) < k:
        pts.add((rng.randint(-6, 6), rng.randint(-6, 6)))
    cx, cy = sum(p[0] for p in pts) / k, sum(p[1] for p in pts) / k
    poly = sorted(pts, key=lambda p: (math.atan2(p[1] - cy, p[0] - cx), p))
    try:
        check_polygon(poly)
    except DrawingError:
        reject()
    return poly


@given(star_polygons(), ipt)
def test_point_in_polygon_vs_shapely(poly, m):
    assert point_in_polygon(m, poly) == sg.Polygon(poly).covers(sg.Point(m))


@given(star_polygons(), ipt, ipt)
def test_segment_vs_shapely(poly, p, q):
    region = sg.Polygon(poly)
    if p == q or region.covers(sg.Point(p)) or region.covers(sg.Point(q)):
        return  # open and closed segments differ only at the endpoints
    assert segment_meets_polygon((p, q), poly) == sg.LineString([p, q]).intersects(region)


@given(ipt, ipt, ipt, ipt)
def test_segment_predicates_vs_shapely(p, q, u, v):
    if p == q or u == v:
        return
    closed = sg.LineString([p, q]).intersects(sg.LineString([u, v]))
    assert closed_segments_meet(p, q, u, v) == closed
    # open (p, q): drop the endpoints unless the intersection reaches beyond them
    inter = sg.LineString([p, q]).intersection(sg.LineString([u, v]))
    ends = sg.MultiPoint([p, q])
    expect = closed and not inter.difference(ends).is_empty
    assert open_segment_meets_closed_segment(p, q, u, v) == expect


def test_convex_hull():
    hull = convex_hull([(0, 0), (2, 0), (4, 0), (4, 4), (0, 4), (2, 2)])
    assert hull == [(0, 0), (4, 0), (4, 4), (0, 4)]
