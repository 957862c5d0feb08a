"""Small simple graphs: the generators we need, plus JSON / graph6 I/O.

Vertex labels are always ``0..n-1``. Every generator labels its vertices
deterministically so that downstream SAT instances are byte-reproducible.

Labeling of the gyroelongated bipyramid ``X_n`` (``gyro_bipyramid(n)``):

* ``0..n-1``     upper rim, drawn as the labels 1..n in the usual figures
* ``n..2n-1``    lower rim, labels 1'..n'
* ``2n``         upper hub (joined to the upper rim)
* ``2n+1``       lower hub (joined to the lower rim)

The band between the rims is the 2n-cycle ``0, n, 1, n+1, ..., n-1, 2n-1``.

Graph JSON format (the only writable format)::

    {"n": 4, "edges": [[0, 1], [0, 3], [1, 2], [2, 3]]}

with each edge written ``[u, v]`` with ``u < v`` and the list sorted.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable


class GraphFormatError(ValueError):
    """Raised for malformed graph text (JSON or graph6)."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset = frozenset()
    _adj: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValueError(f"vertex count must be a non-negative integer, got {self.n!r}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        adj = [set() for _ in range(self.n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple:
        """Neighbors of ``v`` in ascending order."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def edge_list(self) -> list:
        return sorted(self.edges)

    def num_edges(self) -> int:
        return len(self.edges)

    def non_edges(self) -> list:
        return non_edges(self)

    def components(self) -> list:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


def non_edges(G: Graph) -> list:
    """All unordered non-adjacent pairs ``(a, b)``, ``a < b``, lexicographic."""
    return [(a, b) for a, b in itertools.combinations(range(G.n), 2) if (a, b) not in G.edges]


# ---------------------------------------------------------------- generators

def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def path(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def wheel(n: int) -> Graph:
    """``W_n``: an n-cycle on ``0..n-1`` plus hub ``n``."""
    if n < 3:
        raise ValueError(f"wheel needs n >= 3, got {n}")
    rim = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n + 1, frozenset(rim + [(i, n) for i in range(n)]))


def complete_multipartite(*sizes: int) -> Graph:
    """Parts occupy consecutive vertex ranges in the given order."""
    if any(s < 0 for s in sizes):
        raise ValueError(f"part sizes must be non-negative, got {sizes}")
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [(u, v) for p, q in itertools.combinations(parts, 2) for u in p for v in q]
    return Graph(start, frozenset(edges))


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def k_star(a: int, b: int) -> Graph:
    """``K*_{a,b}``: ``K_{a,b}`` minus the matching ``{i, a+i}`` for ``i < a``."""
    if a < 1 or b < a:
        raise ValueError(f"k_star needs 1 <= a <= b, got a={a}, b={b}")
    edges = [(i, a + j) for i in range(a) for j in range(b) if i != j]
    return Graph(a + b, frozenset(edges))


def gyro_bipyramid(n: int) -> Graph:
    """Skeleton ``X_n`` of the gyroelongated n-bipyramid (labeling in module doc)."""
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"gyro_bipyramid needs n >= 3, got {n!r}")
    top, bottom = 2 * n, 2 * n + 1
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges += [(i, j), (n + i, n + j), (i, top), (n + i, bottom)]
        edges += [(i, n + i), (n + i, j)]
    return Graph(2 * n + 2, frozenset(edges))


def generalized_petersen(n: int, k: int) -> Graph:
    """Outer cycle ``0..n-1``, spokes ``i -- n+i``, inner star ``n+i -- n+(i+k)``."""
    edges = set()
    for i in range(n):
        edges.add((i, (i + 1) % n))
        edges.add((i, n + i))
        u, v = n + i, n + (i + k) % n
        edges.add((min(u, v), max(u, v)))
    return Graph(2 * n, frozenset((min(u, v), max(u, v)) for u, v in edges))


def petersen() -> Graph:
    return generalized_petersen(5, 2)


def dodecahedron() -> Graph:
    return generalized_petersen(10, 2)


def icosahedron() -> Graph:
    return gyro_bipyramid(5)


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    shift = G1.n
    edges = set(G1.edges) | {(u + shift, v + shift) for u, v in G2.edges}
    return Graph(G1.n + G2.n, frozenset(edges))


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    """Subgraph induced by ``S``, relabeled by ascending original id."""
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u, v in G.edges if u in index and v in index]
    return Graph(len(verts), frozenset(edges))


_NAMED = {
    "petersen": (0, petersen),
    "icosahedron": (0, icosahedron),
    "dodecahedron": (0, dodecahedron),
    "cycle": (1, cycle),
    "path": (1, path),
    "complete": (1, complete),
    "empty": (1, empty),
    "wheel": (1, wheel),
    "gyro": (1, gyro_bipyramid),
    "complete_bipartite": (2, complete_bipartite),
    "kstar": (2, k_star),
    "complete_multipartite": (None, complete_multipartite),
}

_NAME_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([0-9,\s]*)\))?\s*$")


def named_graph(name: str) -> Graph:
    """Look up a catalog graph such as ``"petersen"`` or ``"cycle(8)"``."""
    m = _NAME_RE.match(name)
    if not m or m.group(1) not in _NAMED:
        raise KeyError(f"unknown graph {name!r}; catalog: {', '.join(catalog())}")
    arity, fn = _NAMED[m.group(1)]
    raw = m.group(2)
    args = [int(t) for t in raw.split(",") if t.strip()] if raw else []
    if arity is not None and len(args) != arity:
        raise KeyError(f"graph {m.group(1)!r} takes {arity} argument(s), got {len(args)}")
    return fn(*args)


def catalog() -> list:
    out = []
    for key, (arity, _) in _NAMED.items():
        if arity == 0:
            out.append(key)
        elif arity is None:
            out.append(f"{key}(a,b,...)")
        else:
            out.append(f"{key}({','.join('abc'[:arity])})")
    return out


# ----------------------------------------------------------------------- I/O

def serialize_graph(G: Graph) -> str:
    return json.dumps({"n": G.n, "edges": [list(e) for e in G.edge_list()]})


def parse_graph(text: str) -> Graph:
    """Parse graph JSON, or a single graph6 line (optional ``>>graph6<<`` header)."""
    stripped = text.strip()
    # graph6 uses bytes 63..126 only (a 60-vertex graph6 string starts with "{"),
    # while any JSON object needs a quote
    if stripped.startswith("{") and not all(63 <= ord(ch) <= 126 for ch in stripped):
        return _parse_json(stripped)
    return parse_graph6(stripped)


def _parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"graph JSON: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError('graph JSON must be an object with keys "n" and "edges"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError(f'graph JSON: "n" must be a non-negative integer, got {n!r}')
    edges = []
    for i, e in enumerate(obj["edges"]):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise GraphFormatError(f"graph JSON: edge #{i} must be a pair of integers, got {e!r}")
        edges.append(tuple(e))
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(f"graph JSON: {exc}") from None


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (read-only support)."""
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"graph6: invalid character {ch!r} at offset {i}")
    if not data:
        raise GraphFormatError("graph6: empty input")
    vals = [ord(ch) - 63 for ch in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise GraphFormatError("graph6: truncated vertex count at offset 0")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise GraphFormatError(
            f"graph6: expected {need} data bytes for n={n}, got {len(body)} (offset {pos})")
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, frozenset(edges))
