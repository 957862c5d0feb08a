"""Simple a,b-path enumeration.

A path is a tuple of vertex ids ``(v0, ..., vk)``, always oriented so that
``v0 < vk``. Paths come out in lexicographic order of that tuple, which is
also the order a depth-first search visits them when neighbors are tried in
ascending order.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .graphs import Graph


def internal(p: tuple) -> tuple:
    """Internal vertices of a path (everything but the endpoints)."""
    return p[1:-1]


def iter_paths(G: Graph, a: int, b: int, max_len: Optional[int] = None,
               forbidden: Iterable[int] = ()) -> Iterator[tuple]:
    """Yield simple a,b-paths lazily; ``max_len`` counts edges."""
    _check_endpoints(G, a, b)
    if max_len is not None and max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    src, dst = min(a, b), max(a, b)
    limit = G.n - 1 if max_len is None else max_len
    on_path = [False] * G.n
    for v in forbidden:
        if v in (a, b):
            raise ValueError(f"forbidden set contains endpoint {v}")
        if not 0 <= v < G.n:
            raise ValueError(f"forbidden vertex {v} out of range")
        on_path[v] = True
    on_path[src] = True
    stack = [src]
    # iterator stack mirrors the vertex stack
    its = [iter(G.neighbors(src))]
    while its:
        advanced = False
        for w in its[-1]:
            if w == dst:
                yield tuple(stack) + (dst,)
                continue
            if on_path[w] or len(stack) >= limit:
                continue
            on_path[w] = True
            stack.append(w)
            its.append(iter(G.neighbors(w)))
            advanced = True
            break
        if not advanced:
            its.pop()
            on_path[stack.pop()] = False


def simple_paths(G: Graph, a: int, b: int, max_len: Optional[int] = None) -> list:
    return list(iter_paths(G, a, b, max_len))


def paths_avoiding(G: Graph, a: int, b: int, forbidden: Iterable[int],
                   max_len: Optional[int] = None) -> list:
    return list(iter_paths(G, a, b, max_len, forbidden))


def _check_endpoints(G: Graph, a: int, b: int) -> None:
    for v in (a, b):
        if not (isinstance(v, int) and 0 <= v < G.n):
            raise ValueError(f"vertex {v!r} out of range for n={G.n}")
    if a == b:
        raise ValueError("endpoints must be distinct")
