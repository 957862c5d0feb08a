"""Exact orientation of point triples and chirotopes of point sets.

Convention: ``orient(a, b, c)`` is the sign of

    | ax bx cx |
    | ay by cy |
    |  1  1  1 |

negative means clockwise (CW), positive counterclockwise (CCW). All
arithmetic is exact (``int`` / ``fractions.Fraction``).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Mapping, Sequence


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


CW, COLLINEAR, CCW = Orientation.CW, Orientation.COLLINEAR, Orientation.CCW


class CollinearError(ValueError):
    def __init__(self, triple):
        super().__init__(f"points {triple} are collinear")
        self.triple = triple


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        for name in ("x", "y"):
            v = getattr(self, name)
            if isinstance(v, float) or not isinstance(v, (int, Fraction)):
                raise TypeError(f"coordinates must be int or Fraction, got {type(v).__name__}")
            object.__setattr__(self, name, Fraction(v))

    def __iter__(self):
        yield self.x
        yield self.y

    def __getitem__(self, i):
        return (self.x, self.y)[i]


def pt(x, y) -> Point:
    return Point(x, y)


def det3(a, b, c):
    """The lifted 3x3 determinant ``[abc]``."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def orient(a, b, c) -> Orientation:
    d = det3(tuple(a), tuple(b), tuple(c))
    return CCW if d > 0 else CW if d < 0 else COLLINEAR


@dataclass(frozen=True)
class Chirotope:
    """Orientation of every sorted triple ``a < b < c`` of ``n`` points."""

    n: int
    orientation: Mapping[tuple, Orientation]

    def is_cw(self, a: int, b: int, c: int) -> bool:
        """Whether the (not necessarily sorted) triple ``abc`` is clockwise."""
        key, sign = sort_with_parity((a, b, c))
        cw = self.orientation[key] == CW
        return cw if sign > 0 else not cw


def sort_with_parity(t: Sequence[int]) -> tuple:
    """Sorted tuple and +1 / -1 for the parity of the sorting permutation."""
    items = list(t)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
            elif items[j] == items[j + 1]:
                raise ValueError(f"repeated vertex in {tuple(t)}")
    return tuple(items), sign


def derive_chirotope(points: Sequence) -> Chirotope:
    pts = [tuple(p) for p in points]
    orientation = {}
    for t in itertools.combinations(range(len(pts)), 3):
        o = orient(*(pts[i] for i in t))
        if o == COLLINEAR:
            raise CollinearError(t)
        orientation[t] = o
    return Chirotope(len(pts), orientation)


def _assignment_lookup(chi, n):
    """Normalize a chirotope or ``{sorted triple: bool is_cw}`` map."""
    if isinstance(chi, Chirotope):
        table = {t: o == CW for t, o in chi.orientation.items()}
    else:
        table = {}
        for t, v in chi.items():
            table[tuple(t)] = (v == CW) if isinstance(v, Orientation) else bool(v)
    missing = [t for t in itertools.combinations(range(n), 3) if t not in table]
    if missing:
        raise ValueError(f"partial assignment: {len(missing)} triple(s) unassigned, e.g. {missing[0]}")

    def cw(a, b, c):
        key, sign = sort_with_parity((a, b, c))
        return table[key] if sign > 0 else not table[key]
    return cw


def check_axioms(chi, n: int) -> list:
    """Violated instances of the 4-point and 5-point rules.

    ``chi`` is a :class:`Chirotope` or a total map from sorted triples to
    "is clockwise" booleans. Each violation is reported as
    ``(rule, ordered vertex tuple)`` with ``rule`` one of ``"4pt"``,
    ``"5pt-1"``, ``"5pt-2"``.
    """
    cw = _assignment_lookup(chi, n)
    out = []
    for sub in itertools.combinations(range(n), 4):
        for a, b, c, d in itertools.permutations(sub):
            if cw(a, b, c) and cw(a, c, d) and cw(a, d, b) and not cw(b, c, d):
                out.append(("4pt", (a, b, c, d)))
    for sub in itertools.combinations(range(n), 5):
        for a, b, c, d, e in itertools.permutations(sub):
            if not (cw(a, b, c) and cw(a, c, d) and cw(a, d, e) and cw(a, b, e)):
                continue
            abd, ace = cw(a, b, d), cw(a, c, e)
            if not abd and ace:
                out.append(("5pt-1", (a, b, c, d, e)))
            if abd and not ace:
                out.append(("5pt-2", (a, b, c, d, e)))
    return out


def random_general_position(n: int, rng: random.Random, span: int = 1000) -> list:
    """``n`` random integer points, no three collinear (rejection sampling)."""
    pts = []
    while len(pts) < n:
        p = (rng.randint(-span, span), rng.randint(-span, span))
        if p in pts:
            continue
        if any(det3(q, r, p) == 0 for q, r in itertools.combinations(pts, 2)):
            continue
        pts.append(p)
    return [pt(x, y) for x, y in pts]


def perturb(points: Sequence, scale: int = 10**6) -> list:
    """Deterministic integer perturbation that removes collinearities.

    Points are scaled by ``scale`` and point ``i`` is moved by ``(i, i*i)``
    (the moment curve), growing ``scale`` until no three points are collinear.
    """
    pts = [tuple(p) for p in points]
    while True:
        moved = [(x * scale + i, y * scale + i * i) for i, (x, y) in enumerate(pts)]
        if all(det3(*t) != 0 for t in itertools.combinations(moved, 3)):
            return [pt(x, y) for x, y in moved]
        scale *= 10


# point-set JSON: {"points": [[x, y], ...]} or [[x_num, x_den, y_num, y_den], ...]

def parse_points(text: str) -> list:
    obj = json.loads(text)
    if not isinstance(obj, dict) or not isinstance(obj.get("points"), list):
        raise ValueError('point-set JSON must be an object with a "points" list')
    return [point_from_json(p, i) for i, p in enumerate(obj["points"])]


def point_from_json(p, index: int = 0) -> Point:
    if not isinstance(p, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in p):
        raise ValueError(f"point #{index}: expected a list of integers, got {p!r}")
    if len(p) == 2:
        return pt(p[0], p[1])
    if len(p) == 4:
        if p[1] == 0 or p[3] == 0:
            raise ValueError(f"point #{index}: zero denominator")
        return pt(Fraction(p[0], p[1]), Fraction(p[2], p[3]))
    raise ValueError(f"point #{index}: expected [x, y] or [x_num, x_den, y_num, y_den]")


def point_to_json(p: Point) -> list:
    if p.x.denominator == 1 and p.y.denominator == 1:
        return [p.x.numerator, p.y.numerator]
    return [p.x.numerator, p.x.denominator, p.y.numerator, p.y.denominator]


def serialize_points(points: Sequence[Point]) -> str:
    return json.dumps({"points": [point_to_json(p) for p in points]})
