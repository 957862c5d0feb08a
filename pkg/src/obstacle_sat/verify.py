"""Exact certification of obstacle representations.

Obstacles are simple polygons, treated as closed regions. A segment is
blocked by an obstacle when its *open* segment meets the closed region;
edges must not meet any obstacle and no obstacle may contain a vertex.

An obstacle declared ``outside`` is accepted when it meets no edge and has
a vertex strictly outside the convex hull of the graph's vertices. That is
enough to put it in the unbounded face (the hull's exterior holds no part
of the drawing). Anything else is reported as failing, never guessed.

Drawing JSON::

    {
      "graph": {"n": 5, "edges": [[0, 1], ...]},
      "coords": [[x, y], [x_num, x_den, y_num, y_den], ...],
      "obstacles": [{"polygon": [[x, y], ...], "outside": true}, ...]
    }

Polygons are listed counterclockwise.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cnf import CnfInstance
from .encode import encode
from .graphs import Graph, GraphFormatError, non_edges, parse_graph, serialize_graph
from .orientation import CollinearError, Point, derive_chirotope, det3, point_from_json, point_to_json
from .paths import iter_paths


class DrawingError(ValueError):
    """A drawing violates a structural invariant (collinear vertices, bad polygon...)."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _t(p) -> tuple:
    return (p[0], p[1]) if not isinstance(p, Point) else (p.x, p.y)


def open_segment_meets_closed_segment(p, q, u, v) -> bool:
    """Does the open segment ``(p, q)`` meet the closed segment ``[u, v]``?"""
    p, q, u, v = _t(p), _t(q), _t(u), _t(v)
    d1, d2 = _sign(det3(p, q, u)), _sign(det3(p, q, v))
    if d1 == 0 and d2 == 0:
        # collinear: compare parameters along pq
        axis = 0 if p[0] != q[0] else 1
        span = q[axis] - p[axis]
        tu = Fraction(u[axis] - p[axis]) / span
        tv = Fraction(v[axis] - p[axis]) / span
        lo, hi = min(tu, tv), max(tu, tv)
        return lo < 1 and hi > 0
    d3, d4 = _sign(det3(u, v, p)), _sign(det3(u, v, q))
    return d1 * d2 <= 0 and d3 * d4 < 0


def closed_segments_meet(p, q, u, v) -> bool:
    p, q, u, v = _t(p), _t(q), _t(u), _t(v)
    d1, d2 = _sign(det3(p, q, u)), _sign(det3(p, q, v))
    d3, d4 = _sign(det3(u, v, p)), _sign(det3(u, v, q))
    if d1 == d2 == 0:
        axis = 0 if len({p[0], q[0], u[0], v[0]}) > 1 else 1
        a0, a1 = sorted((p[axis], q[axis]))
        b0, b1 = sorted((u[axis], v[axis]))
        return a0 <= b1 and b0 <= a1
    return d1 * d2 <= 0 and d3 * d4 <= 0


def point_on_segment(m, u, v) -> bool:
    m, u, v = _t(m), _t(u), _t(v)
    if det3(u, v, m) != 0:
        return False
    return min(u[0], v[0]) <= m[0] <= max(u[0], v[0]) and min(u[1], v[1]) <= m[1] <= max(u[1], v[1])


def _edges(poly):
    return [(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly))]


def point_in_polygon(m, poly) -> bool:
    """Closed-region membership: boundary counts as inside (crossing number)."""
    m = _t(m)
    poly = [_t(p) for p in poly]
    inside = False
    for u, v in _edges(poly):
        if point_on_segment(m, u, v):
            return True
        if (u[1] > m[1]) != (v[1] > m[1]):
            # x-coordinate of the edge at height m.y, compared without division
            lhs = (m[0] - u[0]) * (v[1] - u[1])
            rhs = (m[1] - u[1]) * (v[0] - u[0])
            if (lhs < rhs) == (v[1] > u[1]):
                inside = not inside
    return inside


def signed_area2(poly) -> Fraction:
    poly = [_t(p) for p in poly]
    return sum(u[0] * v[1] - v[0] * u[1] for u, v in _edges(poly))


def check_polygon(poly, label: str = "polygon") -> None:
    """Raise :class:`DrawingError` unless ``poly`` is simple and counterclockwise."""
    pts = [_t(p) for p in poly]
    if len(pts) < 3:
        raise DrawingError(f"{label}: needs at least 3 vertices")
    if len(set(pts)) != len(pts):
        raise DrawingError(f"{label}: repeated vertex")
    area = signed_area2(pts)
    if area == 0:
        raise DrawingError(f"{label}: degenerate (zero area)")
    es = _edges(pts)
    k = len(es)
    for i, j in itertools.combinations(range(k), 2):
        (a, b), (c, d) = es[i], es[j]
        if j == i + 1 or (i == 0 and j == k - 1):
            # adjacent edges share exactly one vertex; reject folding back
            shared, x, y = (b, a, d) if j == i + 1 else (a, b, c)
            if det3(x, shared, y) == 0 and (
                    (y[0] - shared[0]) * (x[0] - shared[0]) + (y[1] - shared[1]) * (x[1] - shared[1]) > 0):
                raise DrawingError(f"{label}: edges {i} and {j} overlap")
            continue
        if closed_segments_meet(a, b, c, d):
            raise DrawingError(f"{label}: edges {i} and {j} intersect")
    if area < 0:
        raise DrawingError(f"{label}: vertices must be listed counterclockwise")


def segment_meets_polygon(seg, poly) -> bool:
    """Does the open segment meet the closed polygonal region?

    Either the open segment touches the boundary somewhere, or it misses the
    boundary entirely and then lies wholly inside or wholly outside; the
    midpoint decides.
    """
    p, q = _t(seg[0]), _t(seg[1])
    pts = [_t(x) for x in poly]
    if len(pts) < 3 or signed_area2(pts) == 0:
        raise DrawingError("degenerate polygon")
    for u, v in _edges(pts):
        if open_segment_meets_closed_segment(p, q, u, v):
            return True
    mid = (Fraction(p[0] + q[0]) / 2, Fraction(p[1] + q[1]) / 2)
    return point_in_polygon(mid, pts)


def convex_hull(points) -> list:
    """Strict convex hull (no collinear points kept), counterclockwise."""
    pts = sorted(set(_t(p) for p in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and det3(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out
    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def strictly_outside_hull(m, hull) -> bool:
    m = _t(m)
    if len(hull) == 0:
        return True
    if len(hull) == 1:
        return m != hull[0]
    if len(hull) == 2:
        return not point_on_segment(m, hull[0], hull[1])
    return any(det3(u, v, m) < 0 for u, v in _edges(hull))


@dataclass
class Obstacle:
    polygon: list
    outside: bool = False


@dataclass
class ObstacleDrawing:
    graph: Graph
    coords: list  # Point per vertex
    obstacles: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.coords) != self.graph.n:
            raise DrawingError(f"{len(self.coords)} coordinates for {self.graph.n} vertices")


@dataclass
class VerificationReport:
    valid: bool
    unblocked_non_edges: list
    pierced_edges: list  # ((u, v), obstacle index)
    covered_vertices: list  # (vertex, obstacle index)
    outside_check: list  # dicts: obstacle, passed, witness / reason
    num_obstacles: int = 0

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "num_obstacles": self.num_obstacles,
            "unblocked_non_edges": [list(e) for e in self.unblocked_non_edges],
            "pierced_edges": [[list(e), i] for e, i in self.pierced_edges],
            "covered_vertices": [list(x) for x in self.covered_vertices],
            "outside_check": self.outside_check,
        }

    def summary(self) -> str:
        lines = [f"valid: {'yes' if self.valid else 'no'} ({self.num_obstacles} obstacle(s))"]
        if self.unblocked_non_edges:
            lines.append(f"unblocked non-edges ({len(self.unblocked_non_edges)}): "
                         + ", ".join(f"{a}-{b}" for a, b in self.unblocked_non_edges))
        for (u, v), i in self.pierced_edges:
            lines.append(f"edge {u}-{v} meets obstacle {i}")
        for v, i in self.covered_vertices:
            lines.append(f"vertex {v} lies in obstacle {i}")
        for oc in self.outside_check:
            state = "outside: ok" if oc["passed"] else f"outside: FAILED ({oc['reason']})"
            lines.append(f"obstacle {oc['obstacle']} {state}")
        return "\n".join(lines)


def check_representation(d: ObstacleDrawing) -> VerificationReport:
    pts = [_t(p) for p in d.coords]
    try:
        derive_chirotope(pts)
    except CollinearError as exc:
        raise DrawingError(f"vertices {exc.triple} are collinear") from None
    polys = []
    for i, ob in enumerate(d.obstacles):
        check_polygon(ob.polygon, f"obstacle {i}")
        polys.append([_t(p) for p in ob.polygon])
    G = d.graph
    pierced, covered = [], []
    for i, poly in enumerate(polys):
        for v in range(G.n):
            if point_in_polygon(pts[v], poly):
                covered.append((v, i))
        for u, v in G.edge_list():
            if segment_meets_polygon((pts[u], pts[v]), poly):
                pierced.append(((u, v), i))
    unblocked = [(a, b) for a, b in non_edges(G)
                 if not any(segment_meets_polygon((pts[a], pts[b]), poly) for poly in polys)]
    hull = convex_hull(pts)
    outside = []
    for i, ob in enumerate(d.obstacles):
        if not ob.outside:
            continue
        bad = [e for e, j in pierced if j == i] or [v for v, j in covered if j == i]
        witness = next((p for p in polys[i] if strictly_outside_hull(p, hull)), None)
        if bad:
            outside.append(dict(obstacle=i, passed=False, reason="meets the drawing"))
        elif witness is None:
            outside.append(dict(obstacle=i, passed=False,
                                reason="unclassified: no vertex outside the convex hull"))
        else:
            outside.append(dict(obstacle=i, passed=True,
                                witness=[str(witness[0]), str(witness[1])]))
    valid = not unblocked and not pierced and not covered and all(o["passed"] for o in outside)
    return VerificationReport(valid, unblocked, pierced, covered, outside, len(polys))


# ------------------------------------------------------------- assignments

_X = re.compile(r"^x\{(\d+),(\d+),(\d+)\}$")
_S = re.compile(r"^s\{(\d+),(\d+)\}$")
_SP = re.compile(r"^s\{(\d+),(\d+)\|(\d+),(\d+)\}$")
_K = re.compile(r"^k\{([\d-]+)\|(\d+),(\d+)\}$")


def instance_cap(inst: CnfInstance) -> Optional[int]:
    if "max_path_len" in inst.meta:
        return inst.meta["max_path_len"]
    for c in inst.comments:
        if c.startswith("max-path-len "):
            val = c.split()[1]
            return None if val == "none" else int(val)
    return None


def assignment_of_drawing(d: ObstacleDrawing, mode: str, inst: Optional[CnfInstance] = None,
                          max_path_len: Optional[int] = None) -> list:
    """Model of the ``mode`` instance read off an actual drawing.

    Triple variables come from the drawing's chirotope; side variables are
    the side of each non-edge's line that holds an internal vertex of every
    relevant path; key-path variables record whether a path stays on one
    side of line ``cd``. ``inst`` defaults to ``encode(G, mode, max_path_len)``.
    """
    report = check_representation(d)
    if not report.valid:
        raise DrawingError("drawing is not a valid obstacle representation")
    if len(d.obstacles) > 1:
        raise DrawingError(f"drawing uses {len(d.obstacles)} obstacles; at most 1 allowed")
    if mode == "outside" and d.obstacles and not d.obstacles[0].outside:
        raise DrawingError("outside mode needs the obstacle declared outside")
    G = d.graph
    if inst is None:
        inst = encode(G, mode, max_path_len)
    cap = instance_cap(inst)
    chi = derive_chirotope([_t(p) for p in d.coords])
    cw = chi.is_cw
    model = [False] * (inst.num_vars + 1)
    keypaths = {}
    pending = []
    for var, name in inst.names.items():
        if m := _X.match(name):
            model[var] = cw(*map(int, m.groups()))
        elif m := _K.match(name):
            path = tuple(int(t) for t in m.group(1).split("-"))
            c, dd = int(m.group(2)), int(m.group(3))
            off = [v for v in path if v not in (c, dd)]
            sides = {cw(c, dd, v) for v in off}
            model[var] = len(sides) == 1
            if model[var]:
                keypaths.setdefault(((path[0], path[-1]), (c, dd)), []).append(path)
        else:
            pending.append((var, name))
    for var, name in pending:
        if m := _S.match(name):
            a, b = int(m.group(1)), int(m.group(2))
            paths = [p[1:-1] for p in iter_paths(G, a, b, cap)]
        elif m := _SP.match(name):
            a, b, c, dd = map(int, m.groups())
            paths = [p[1:-1] for p in keypaths.get(((a, b), (c, dd)), [])]
        else:
            raise ValueError(f"unrecognized variable name {name!r}")
        model[var] = _special_side(cw, a, b, paths)
    return model


def _special_side(cw, a, b, internals) -> bool:
    """True when the clockwise side of ``ab`` holds an internal vertex of every path."""
    if all(any(cw(a, b, v) for v in inner) for inner in internals):
        return True
    if all(any(not cw(a, b, v) for v in inner) for inner in internals):
        return False
    raise DrawingError(f"no special side for non-edge {a}-{b}: no side holds a vertex of every path")


# -------------------------------------------------------------------- I/O

def parse_drawing(text: str) -> ObstacleDrawing:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DrawingError(f"drawing JSON: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(obj, dict) or not {"graph", "coords"} <= obj.keys():
        raise DrawingError('drawing JSON needs keys "graph" and "coords"')
    try:
        G = parse_graph(json.dumps(obj["graph"]))
        coords = [point_from_json(p, i) for i, p in enumerate(obj["coords"])]
        obstacles = []
        for i, ob in enumerate(obj.get("obstacles", [])):
            if not isinstance(ob, dict) or "polygon" not in ob:
                raise DrawingError(f'obstacle #{i}: expected an object with "polygon"')
            poly = [point_from_json(p, j) for j, p in enumerate(ob["polygon"])]
            obstacles.append(Obstacle(poly, bool(ob.get("outside", False))))
    except (GraphFormatError, ValueError) as exc:
        if isinstance(exc, DrawingError):
            raise
        raise DrawingError(f"drawing JSON: {exc}") from None
    return ObstacleDrawing(G, coords, obstacles)


def serialize_drawing(d: ObstacleDrawing) -> str:
    def pj(p):
        return point_to_json(p if isinstance(p, Point) else Point(Fraction(p[0]), Fraction(p[1])))
    return json.dumps({
        "graph": json.loads(serialize_graph(d.graph)),
        "coords": [pj(p) for p in d.coords],
        "obstacles": [{"polygon": [pj(p) for p in ob.polygon], "outside": ob.outside}
                      for ob in d.obstacles],
    })
