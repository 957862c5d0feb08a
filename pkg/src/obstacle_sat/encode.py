"""SAT instances whose unsatisfiability bounds the obstacle number from below.

Variables
---------
``x{a,b,c}`` (``a < b < c``)
    true iff the triple ``abc`` is clockwise. Any other ordering of the same
    three vertices is the same variable, negated for odd permutations.
``s{a,b}`` (outside mode, one per non-edge ``a < b``)
    true iff the special half-plane of ``ab`` is the clockwise side, i.e. the
    side holding points ``p`` with ``abp`` clockwise.
``s{a,b|c,d}`` (single mode, per ordered pair of non-edges)
    same meaning for the half-plane of ``ab`` chosen relative to ``cd``.
``k{P|c,d}`` (single mode)
    forced true when every vertex of path ``P`` is on one side of line ``cd``.

Ids are dense: triple variables first in lexicographic order, then side
variables in lexicographic order, then key-path variables in generation
order. Clause order is deterministic, so DIMACS output is byte-stable.

Path caps only ever drop clauses, so an UNSAT answer for a capped instance
is still a proof for the uncapped one.
"""

from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from . import __version__
from .cnf import CnfInstance
from .graphs import Graph, non_edges, serialize_graph
from .paths import iter_paths


@dataclass
class VariableTable:
    n: int
    triple_vars: dict = field(default_factory=dict)
    outside_side_vars: dict = field(default_factory=dict)
    pair_side_vars: dict = field(default_factory=dict)
    keypath_vars: dict = field(default_factory=dict)
    names: dict = field(default_factory=dict)
    num_vars: int = 0

    def __post_init__(self):
        for t in itertools.combinations(range(self.n), 3):
            self.triple_vars[t] = self._new("x{%d,%d,%d}" % t)
        # literal of every ordered triple, for fast clause generation
        self._lit = {}
        for t, v in self.triple_vars.items():
            a, b, c = t
            for p in ((a, b, c), (b, c, a), (c, a, b)):
                self._lit[p] = v
            for p in ((b, a, c), (a, c, b), (c, b, a)):
                self._lit[p] = -v

    def _new(self, name: str) -> int:
        self.num_vars += 1
        self.names[self.num_vars] = name
        return self.num_vars

    def x(self, a: int, b: int, c: int) -> int:
        try:
            return self._lit[(a, b, c)]
        except KeyError:
            raise ValueError(f"not a triple of distinct vertices < {self.n}: {(a, b, c)}") from None

    def add_outside_side(self, a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in self.outside_side_vars:
            self.outside_side_vars[key] = self._new("s{%d,%d}" % key)
        return self.outside_side_vars[key]

    def add_pair_side(self, ab: tuple, cd: tuple) -> int:
        key = (tuple(sorted(ab)), tuple(sorted(cd)))
        if key not in self.pair_side_vars:
            self.pair_side_vars[key] = self._new("s{%d,%d|%d,%d}" % (key[0] + key[1]))
        return self.pair_side_vars[key]

    def add_keypath(self, path: tuple, cd: tuple) -> int:
        key = (tuple(path), tuple(sorted(cd)))
        if key not in self.keypath_vars:
            name = "k{%s|%d,%d}" % ("-".join(map(str, path)), key[1][0], key[1][1])
            self.keypath_vars[key] = self._new(name)
        return self.keypath_vars[key]

    def decode(self, var: int) -> str:
        return self.names[var]


def triple_literal(vt: VariableTable, a: int, b: int, c: int) -> int:
    """Signed literal for "``abc`` is clockwise" in terms of the sorted triple."""
    if len({a, b, c}) != 3:
        raise ValueError(f"repeated vertex in triple {(a, b, c)}")
    return vt.x(a, b, c)


class _Dedup:
    """Clause list that keeps the first copy of each literal set."""

    def __init__(self):
        self.seen = set()
        self.clauses = []

    def add(self, clause) -> None:
        key = frozenset(clause)
        if key not in self.seen:
            self.seen.add(key)
            self.clauses.append(tuple(clause))


def _rotation_classes(sub, fixed):
    """The two cyclic orders of ``sub`` minus ``fixed`` (a 3-element rest)."""
    p, q, r = (v for v in sub if v not in fixed)
    return (p, q, r), (p, r, q)


def four_point_clauses(vt: VariableTable, n: int) -> list:
    """If abc, acd, adb are clockwise then so is bcd.

    Rotating ``(b, c, d)`` cyclically gives the same clause, so one clause is
    kept per ``a`` and per cyclic order of the rest: 8 per 4-subset. Note the
    8 clauses of a subset have only 2 distinct literal sets; they are all
    kept so the count matches the usual ``8 * C(n, 4)`` bookkeeping.
    """
    x = vt.x
    out = []
    for sub in itertools.combinations(range(n), 4):
        for a in sub:
            for b, c, d in _rotation_classes(sub, (a,)):
                out.append((-x(a, b, c), -x(a, c, d), -x(a, d, b), x(b, c, d)))
    return out


def five_point_clauses(vt: VariableTable, n: int) -> list:
    """If abc, acd, ade, abe are clockwise then abd and ace agree.

    The first clause is invariant under cyclic rotation of ``(b, c, d)``, the
    second under rotation of ``(c, d, e)``: 40 + 40 clauses per 5-subset.
    """
    x = vt.x
    out = []
    for sub in itertools.combinations(range(n), 5):
        for a in sub:
            for e in sub:
                if e == a:
                    continue
                for b, c, d in _rotation_classes(sub, (a, e)):
                    out.append((-x(a, b, c), -x(a, c, d), -x(a, d, e), -x(a, b, e),
                                x(a, b, d), -x(a, c, e)))
        for a in sub:
            for b in sub:
                if b == a:
                    continue
                for c, d, e in _rotation_classes(sub, (a, b)):
                    out.append((-x(a, b, c), -x(a, c, d), -x(a, d, e), -x(a, b, e),
                                -x(a, b, d), x(a, c, e)))
    return out


def graph_hash(G: Graph) -> str:
    return hashlib.sha256(serialize_graph(G).encode()).hexdigest()


def _header(G: Graph, mode: str, cap: Optional[int], extra=()) -> list:
    return [
        f"obstacle_sat {__version__}",
        f"mode {mode}",
        f"graph {serialize_graph(G)}",
        f"graph-sha256 {graph_hash(G)}",
        f"max-path-len {cap if cap is not None else 'none'}",
        *extra,
    ]


def _finish(vt, groups, comments, meta) -> CnfInstance:
    clauses = [c for _, cs in groups for c in cs]
    counts = {name: len(cs) for name, cs in groups}
    comments = comments + [f"clauses {name} {k}" for name, k in counts.items()]
    return CnfInstance(vt.num_vars, clauses, comments, dict(vt.names),
                       meta=dict(meta, counts=counts, table=vt))


def _map_jobs(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(it) for it in items]


def _outside_paths(args):
    G, ab, cap = args
    return [p[1:-1] for p in iter_paths(G, ab[0], ab[1], cap)]


def encode_outside(G: Graph, max_path_len: Optional[int] = None, jobs: int = 1) -> CnfInstance:
    """Instance that is satisfiable whenever ``G`` has a representation with
    one obstacle, that obstacle lying in the outer face."""
    vt = VariableTable(G.n)
    nes = non_edges(G)
    for a, b in nes:
        vt.add_outside_side(a, b)
    four = four_point_clauses(vt, G.n)
    five = five_point_clauses(vt, G.n)
    x = vt.x
    out = _Dedup()
    per_edge = _map_jobs(_outside_paths, [(G, ab, max_path_len) for ab in nes], jobs)
    for (a, b), internals in zip(nes, per_edge):
        s = vt.outside_side_vars[(a, b)]
        for inner in internals:
            out.add((-s, *(x(a, b, v) for v in inner)))
            out.add((s, *(-x(a, b, v) for v in inner)))
    return _finish(vt, [("four-point", four), ("five-point", five), ("path", out.clauses)],
                   _header(G, "outside", max_path_len),
                   dict(mode="outside", max_path_len=max_path_len, graph=G))


def non_edge_pairs(G: Graph, shared_vertex: bool = False) -> list:
    """Ordered pairs ``(ab, cd)`` of distinct non-edges used by single mode.

    Pairs sharing a vertex are included only when ``shared_vertex`` is set.
    """
    nes = non_edges(G)
    out = []
    for ab in nes:
        for cd in nes:
            if ab == cd:
                continue
            common = set(ab) & set(cd)
            if common and not shared_vertex:
                continue
            out.append((ab, cd))
    return out


def _single_paths(args):
    G, ab, cd, cap, avoid_cd = args
    forbidden = [v for v in cd if v not in ab] if avoid_cd else []
    return list(iter_paths(G, ab[0], ab[1], cap, forbidden))


def encode_single(G: Graph, max_path_len: Optional[int] = None, jobs: int = 1,
                  shared_vertex: bool = False, avoid_cd: bool = False) -> CnfInstance:
    """Instance that is satisfiable whenever ``G`` has a representation with
    at most one obstacle.

    For each ordered pair of disjoint non-edges ``(ab, cd)`` and each a,b-path
    ``P``, ``k{P|c,d}`` is forced when all vertices of ``P`` off line ``cd``
    lie on one side of it, and a forced ``k`` puts an internal vertex of ``P``
    on the special side of ``ab``. Paths may run through ``c`` or ``d``
    (those vertices sit on the line and are ignored by the side test);
    ``avoid_cd=True`` restricts to paths avoiding both, which gives a weaker
    instance.

    ``shared_vertex`` (experimental, off by default) also constrains pairs of
    non-edges with one common vertex.
    """
    vt = VariableTable(G.n)
    pairs = non_edge_pairs(G, shared_vertex)
    for ab, cd in pairs:
        vt.add_pair_side(ab, cd)
    four = four_point_clauses(vt, G.n)
    five = five_point_clauses(vt, G.n)
    x = vt.x
    key_defs, constraints = _Dedup(), _Dedup()
    all_paths = _map_jobs(_single_paths,
                          [(G, ab, cd, max_path_len, avoid_cd) for ab, cd in pairs], jobs)
    for (ab, cd), paths in zip(pairs, all_paths):
        (a, b), (c, d) = ab, cd
        s = vt.pair_side_vars[(ab, cd)]
        for p in paths:
            k = vt.add_keypath(p, cd)
            off_line = [v for v in p if v not in cd]
            key_defs.add((*(x(c, d, v) for v in off_line), k))
            key_defs.add((*(-x(c, d, v) for v in off_line), k))
            inner = p[1:-1]
            constraints.add((-k, -s, *(x(a, b, v) for v in inner)))
            constraints.add((-k, s, *(-x(a, b, v) for v in inner)))
    extra = []
    if shared_vertex:
        extra.append("shared-vertex-pairs on")
    if avoid_cd:
        extra.append("paths-avoid-cd on")
    return _finish(vt, [("four-point", four), ("five-point", five),
                        ("key-path", key_defs.clauses), ("path", constraints.clauses)],
                   _header(G, "single", max_path_len, extra),
                   dict(mode="single", max_path_len=max_path_len, graph=G,
                        shared_vertex=shared_vertex, avoid_cd=avoid_cd))


def encode(G: Graph, mode: str, max_path_len: Optional[int] = None, jobs: int = 1,
           shared_vertex: bool = False, avoid_cd: bool = False) -> CnfInstance:
    if mode == "outside":
        if shared_vertex or avoid_cd:
            raise ValueError("shared-vertex / avoid-cd options only apply to single mode")
        return encode_outside(G, max_path_len, jobs)
    if mode == "single":
        return encode_single(G, max_path_len, jobs, shared_vertex, avoid_cd)
    raise ValueError(f"unknown mode {mode!r} (expected 'outside' or 'single')")


def expected_axiom_counts(n: int) -> tuple:
    return 8 * comb(n, 4), 80 * comb(n, 5)
