import networkx as nx
import pytest
from hypothesis import given, strategies as st

from obstacle_sat import graphs
from obstacle_sat.graphs import Graph
from obstacle_sat.paths import internal, iter_paths, paths_avoiding, simple_paths


def test_cycle_has_two_paths():
    assert simple_paths(graphs.cycle(5), 0, 2) == [(0, 1, 2), (0, 4, 3, 2)]
    # endpoints given in either order, paths still start at the smaller one
    assert simple_paths(graphs.cycle(5), 2, 0) == [(0, 1, 2), (0, 4, 3, 2)]


def test_complete_graph_count():
    # 1 direct + 2 via one vertex + 2 via two vertices
    assert len(simple_paths(graphs.complete(4), 0, 1)) == 5


def test_max_len_counts_edges():
    G = graphs.cycle(8)
    assert simple_paths(G, 0, 4, max_len=3) == []
    assert simple_paths(G, 0, 4, max_len=4) == [(0, 1, 2, 3, 4), (0, 7, 6, 5, 4)]
    assert simple_paths(G, 0, 1, max_len=1) == [(0, 1)]


def test_forbidden_vertices():
    G = graphs.cycle(6)
    assert paths_avoiding(G, 0, 3, [1]) == [(0, 5, 4, 3)]
    assert paths_avoiding(G, 0, 3, [1, 5]) == []
    with pytest.raises(ValueError, match="endpoint"):
        paths_avoiding(G, 0, 3, [3])


def test_bad_arguments():
    G = graphs.cycle(4)
    with pytest.raises(ValueError):
        simple_paths(G, 0, 0)
    with pytest.raises(ValueError):
        simple_paths(G, 0, 4)
    with pytest.raises(ValueError):
        simple_paths(G, 0, 2, max_len=0)


def test_internal():
    assert internal((3, 1, 4, 5)) == (1, 4)
    assert internal((0, 1)) == ()


def test_lazy():
    G = graphs.complete(12)
    it = iter_paths(G, 0, 1)
    assert next(it) == (0, 1)
    assert next(it) == (0, 2, 1)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 7))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True))
    a, b = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    return Graph.from_edges(n, edges), a, b


@given(small_graphs(), st.one_of(st.none(), st.integers(1, 6)))
def test_matches_networkx(gab, cap):
    G, a, b = gab
    ours = simple_paths(G, a, b, cap)
    H = nx.Graph(G.edge_list())
    H.add_nodes_from(range(G.n))
    lo, hi = min(a, b), max(a, b)
    ref = sorted(tuple(p) for p in nx.all_simple_paths(H, lo, hi, cutoff=cap))
    assert ours == ref  # same set, and ours is already lexicographic


@given(small_graphs())
def test_paths_are_simple_and_walk_edges(gab):
    G, a, b = gab
    for p in simple_paths(G, a, b):
        assert len(set(p)) == len(p)
        assert (p[0], p[-1]) == (min(a, b), max(a, b))
        assert all(G.has_edge(u, v) for u, v in zip(p, p[1:]))


@given(small_graphs(), st.integers(1, 5))
def test_cap_monotone(gab, k):
    G, a, b = gab
    assert set(simple_paths(G, a, b, k)) <= set(simple_paths(G, a, b, k + 1))
