"""Derive certified single-outside-obstacle drawings and write them to drawings/.

Pick a centre O inside the drawing and cast rays towards every vertex, edge
crossing and axis direction. On each ray, take (1+eps) times the farthest
point of the drawing. Between two consecutive rays the outermost edge is one
segment, so chords joining those points stay in the unbounded face. The
obstacle is the band between that chain and its K-fold scaling about O, minus
a thin wedge so the polygon is simply connected. Placements come from a
seeded hill-climb over integer points; everything is exact, and the package
verifier has the final word on each drawing.

Usage:  python3 scripts/build_drawings.py [--out drawings] [--seed 1]
"""

from __future__ import annotations

import argparse
import functools
import itertools
import random
import sys
from fractions import Fraction
from pathlib import Path

from obstacle_sat import graphs
from obstacle_sat.orientation import det3, pt
from obstacle_sat.verify import (DrawingError, Obstacle, ObstacleDrawing, check_representation,
                                 serialize_drawing)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _half(d):
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _cmp_dir(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else 1 if c < 0 else 0


def segment_crossing(p, q, u, v):
    d = cross(sub(q, p), sub(v, u))
    if d == 0:
        return None
    t = Fraction(cross(sub(u, p), sub(v, u))) / d
    s = Fraction(cross(sub(u, p), sub(q, p))) / d
    if 0 < t < 1 and 0 < s < 1:
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
    return None


def ray_reach(o, d, coords, segs):
    """Farthest parameter t > 0 at which ray o + t d touches the drawing (0 if none)."""
    best = Fraction(0)
    for u, v in segs:
        den = cross(d, sub(v, u))
        if den == 0:
            continue
        t = Fraction(cross(sub(u, o), sub(v, u))) / den
        s = Fraction(cross(sub(u, o), d)) / den
        if t > 0 and 0 <= s <= 1:
            best = max(best, t)
    for p in coords:
        w = sub(p, o)
        if cross(d, w) == 0 and d[0] * w[0] + d[1] * w[1] > 0:
            best = max(best, Fraction(w[0]) / d[0] if d[0] else Fraction(w[1]) / d[1])
    return best


def envelope_obstacle(coords, edges, o, eps=Fraction(1, 100), k=4, wedge=0):
    """Star-shaped outside obstacle around centre ``o``; None if some ray misses the drawing.

    Event rays point at vertices, edge crossings and the axes. On each event
    ray the inner boundary sits at (1+eps) times the farthest point of the
    drawing. Between two consecutive event rays the outermost edge is a
    single segment (nothing starts, ends or crosses there), and both chord
    ends lie beyond its line, so the chord is clear of the drawing.
    """
    segs = [(coords[a], coords[b]) for a, b in edges]
    pts = list(coords)
    for (p, q), (u, v) in itertools.combinations(segs, 2):
        x = segment_crossing(p, q, u, v)
        if x is not None:
            pts.append(x)
    dirs = {sub(p, o) for p in pts} | {(1, 0), (0, 1), (-1, 0), (0, -1)}
    if (0, 0) in dirs:
        return None
    uniq = []
    for d in sorted(dirs, key=functools.cmp_to_key(_cmp_dir)):
        if uniq and _cmp_dir(uniq[-1], d) == 0:
            continue
        uniq.append(d)
    m = len(uniq)
    w = wedge % m
    d1, d2 = uniq[w], uniq[(w + 1) % m]
    cut_a = (2 * d1[0] + d2[0], 2 * d1[1] + d2[1])
    cut_b = (d1[0] + 2 * d2[0], d1[1] + 2 * d2[1])
    # counterclockwise from cut_b all the way round to cut_a
    rays = [cut_b] + [uniq[(w + 1 + j) % m] for j in range(m)] + [cut_a]
    chain = []
    for d in rays:
        t = ray_reach(o, d, coords, segs)
        if t == 0:
            return None
        chain.append((o[0] + t * d[0], o[1] + t * d[1]))

    def scaled(p, f):
        return (o[0] + f * (p[0] - o[0]), o[1] + f * (p[1] - o[1]))

    inner = [scaled(p, 1 + eps) for p in chain]
    outer = [scaled(p, k) for p in chain]
    poly = outer + inner[::-1]
    changed = True
    while changed:
        changed = False
        for i in range(len(poly)):
            a, b, c = poly[i - 1], poly[i], poly[(i + 1) % len(poly)]
            if det3(a, b, c) == 0:
                poly.pop(i)
                changed = True
                break
    area = sum(cross(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly)))
    if area < 0:
        poly.reverse()
    return poly


def certify(G, coords, centres=None, max_centres=4, wedges=2):
    """First (centre, wedge) giving a valid one-outside-obstacle drawing."""
    if centres is None:
        n = len(coords)
        cx = Fraction(sum(p[0] for p in coords), n)
        cy = Fraction(sum(p[1] for p in coords), n)
        centres = [(cx, cy)] + [
            (Fraction(sum(coords[i][0] for i in t), 3), Fraction(sum(coords[i][1] for i in t), 3))
            for t in itertools.combinations(range(n), 3)][:max_centres]
    for o in centres:
        for wedge in range(wedges):
            poly = envelope_obstacle(coords, G.edge_list(), o, wedge=wedge)
            if poly is None:
                break
            d = ObstacleDrawing(G, [pt(*p) for p in coords], [Obstacle([pt(*p) for p in poly], True)])
            try:
                rep = check_representation(d)
            except DrawingError:
                continue
            if rep.valid:
                return d
    return None


def _defects(G, pts):
    """(drawing, number of defects) for the centroid envelope; defects 99 if unusable."""
    if len(set(pts)) < len(pts) or any(det3(a, b, c) == 0 for a, b, c in itertools.combinations(pts, 3)):
        return None, 99
    n = len(pts)
    o = (Fraction(sum(p[0] for p in pts), n), Fraction(sum(p[1] for p in pts), n))
    poly = envelope_obstacle(pts, G.edge_list(), o)
    if poly is None:
        return None, 99
    d = ObstacleDrawing(G, [pt(*p) for p in pts], [Obstacle([pt(*p) for p in poly], True)])
    try:
        r = check_representation(d)
    except DrawingError:
        return None, 99
    return d, len(r.unblocked_non_edges) + len(r.pierced_edges) + len(r.covered_vertices)


def search(G, seed, restarts=200, steps=400, span=30):
    """Hill-climb integer placements, one vertex nudge at a time, until no defects remain."""
    rng = random.Random(seed)
    for attempt in range(restarts):
        pts = [(rng.randint(-span, span), rng.randint(-span, span)) for _ in range(G.n)]
        d, bad = _defects(G, pts)
        if bad == 99:
            continue
        for _ in range(steps):
            if bad == 0:
                return d, attempt
            q = list(pts)
            i = rng.randrange(G.n)
            q[i] = (q[i][0] + rng.randint(-6, 6), q[i][1] + rng.randint(-6, 6))
            d2, bad2 = _defects(G, q)
            if bad2 <= bad:
                pts, d, bad = q, d2, bad2
    return None, restarts


def pentagram_coords():
    # integer pentagon, vertex i placed at corner 2i mod 5 so cycle edges are diagonals
    corners = [(0, 100), (95, 31), (59, -81), (-59, -81), (-95, 31)]
    return [corners[(2 * i) % 5] for i in range(5)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="drawings")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    made = {}
    made["c5_pentagram"] = certify(graphs.cycle(5), pentagram_coords())
    plain = {
        "k3_triangle": (graphs.complete(3), [(0, 0), (4, 0), (1, 3)]),
        "c4_convex_no_obstacle": (graphs.cycle(4), [(0, 0), (4, 0), (4, 4), (0, 4)]),
    }
    for name, (G, coords) in plain.items():
        made[name] = ObstacleDrawing(G, [pt(*p) for p in coords], [])
    for name, G in [("c8", graphs.cycle(8)), ("k23", graphs.complete_bipartite(2, 3)),
                    ("k113", graphs.complete_multipartite(1, 1, 3)), ("x3", graphs.gyro_bipyramid(3))]:
        d, attempts = search(G, args.seed)
        print(f"{name}: {'found' if d else 'not found'} after {attempts + 1} restart(s)", file=sys.stderr)
        made[name] = d
    for name, d in made.items():
        if d is None:
            continue
        rep = check_representation(d)
        print(f"{name}: valid={rep.valid} obstacles={rep.num_obstacles}", file=sys.stderr)
        (out / f"{name}.json").write_text(serialize_drawing(d) + "\n")


if __name__ == "__main__":
    main()
