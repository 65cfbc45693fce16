import heapq
import random

import pytest
from hypothesis import given, settings, strategies as st

from planarmcb.errors import Disconnected, NotAncestor, NotFinalized
from planarmcb.generators import gen_lower_bound, gen_path, gen_random_planar
from planarmcb.lexsp import lex_compare, lex_sp_tree, path_min_index
from planarmcb.planar_core import build_embedding

from helpers import c4, simple_paths


def lex_key(w, path):
    # weight, then hops, then the path holding the smallest vertex of the
    # symmetric difference; for equal hop counts that is the sorted vertex tuple
    return (w, len(path) - 1, tuple(sorted(path)))


def brute_force_paths(g, s):
    """Lex-smallest path to every vertex plus whether the minimum is unique."""
    best = {}
    for t in g.vertices:
        if t == s:
            continue
        keyed = sorted((lex_key(w, p), p) for w, p in simple_paths(g, s, t))
        unique = len(keyed) == 1 or keyed[0][0] != keyed[1][0]
        best[t] = (keyed[0][1], unique)
    return best


def test_c4_parents():
    t = lex_sp_tree(c4(), 1)
    assert {v: t.parent[v] for v in (2, 3, 4)} == {2: 1, 3: 2, 4: 1}


def test_c4_compare():
    t = lex_sp_tree(c4(), 1)
    assert lex_compare(t, 3, 2, 4) == -1
    assert lex_compare(t, 3, 4, 2) == 1
    assert lex_compare(t, 3, 2, 2) == 0


def test_path_graph():
    t = lex_sp_tree(gen_path(3), 1)
    assert t.parent[3] == 2 and t.parent[2] == 1
    assert tuple(t.dist[3]) == (2, 2)


def test_lower_bound_distances():
    t = lex_sp_tree(gen_lower_bound(5), 1)
    for j in range(1, 6):
        assert tuple(t.dist[j]) == (0, j - 1)


def test_disconnected():
    g = build_embedding([(0, 0), (1, 0), (5, 5)], [(1, 2, 1)])
    with pytest.raises(Disconnected):
        lex_sp_tree(g, 1)


def test_path_min_index_chain():
    # chain 5 -> 3 -> 9 -> 1 hanging from the source 5
    pts = [(i, 0) for i in range(9)]
    g = build_embedding(pts, [(5, 3, 1), (3, 9, 1), (9, 1, 1)] + [(2, 4, 1)], validate=False)
    t = lex_sp_tree(g, 5, require_all=False)
    assert path_min_index(t, 1, 5) == 1
    assert path_min_index(t, 9, 5) == 3
    assert path_min_index(t, 9, 9) == 9
    with pytest.raises(NotAncestor):
        path_min_index(t, 3, 1)
    with pytest.raises(NotFinalized):
        path_min_index(t, 2, 5)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(4, 64), seed=st.integers(1, 10_000))
def test_path_min_index_matches_scan(n, seed):
    g = gen_random_planar(n, seed=seed, max_weight=3)
    t = lex_sp_tree(g, 1)
    rng = random.Random(seed)
    for v in rng.sample(sorted(g.vertices), min(10, n)):
        path = t.path_vertices(v)  # v up to the source
        k = rng.randrange(len(path))
        assert path_min_index(t, v, path[k]) == min(path[: k + 1])


@pytest.mark.parametrize("seed", range(1, 41))
def test_matches_exhaustive_enumeration(seed):
    g = gen_random_planar(4 + seed % 7, seed=seed, max_weight=2, thin=0.3)
    for s in g.vertices:
        t = lex_sp_tree(g, s)
        for v, (path, unique) in brute_force_paths(g, s).items():
            assert unique
            assert list(reversed(t.path_vertices(v))) == path


@settings(max_examples=30, deadline=None)
@given(n=st.integers(4, 60), seed=st.integers(1, 10_000))
def test_projection_to_plain_dijkstra(n, seed):
    g = gen_random_planar(n, seed=seed, max_weight=4)
    s = 1 + seed % n
    dist = {s: 0}
    heap = [(0, s)]
    adj = g.adjacency()
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w, _ in adj[u]:
            if d + w < dist.get(v, d + w + 1):
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    t = lex_sp_tree(g, s)
    assert {v: t.dist[v].w for v in g.vertices} == dist
    for v in g.vertices:
        if v != s:
            p, e = t.parent[v], t.parent_edge[v]
            assert t.dist[v].w == t.dist[p].w + g.edges[e][2]
            assert t.dist[v].hops == t.dist[p].hops + 1
            assert t.up[v][0] == p


def test_deterministic():
    g = gen_random_planar(40, seed=7, max_weight=1)
    a, b = lex_sp_tree(g, 3), lex_sp_tree(g, 3)
    assert a.parent == b.parent
