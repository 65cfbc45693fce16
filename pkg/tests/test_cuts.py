import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from planarmcb.cuts import (
    GomoryHuTree,
    apmc,
    build_mincut_oracle,
    cut_separates,
    gomory_hu,
    induced_cut_weight,
    maxflow_reference,
    query_cut,
    query_weight,
    weight_vector,
)
from planarmcb.errors import Disconnected, SameVertex
from planarmcb.generators import gen_lower_bound, gen_random_planar
from planarmcb.gmcb_oracle import oracle_basis
from planarmcb.mcb_recursive import recursive_gmcb
from planarmcb.planar_core import build_embedding

from helpers import c4, star3, tri3


def random_tree_graph(n, rng, max_weight=20):
    # any rotation system of a tree is planar, so crossings in the drawing are harmless
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    edges = [(v, rng.randint(1, v - 1), rng.randint(0, max_weight)) for v in range(2, n + 1)]
    return build_embedding(pts, edges, validate=False)


def test_weight_vector_examples():
    assert weight_vector(recursive_gmcb(gen_lower_bound(5))) == [1, 1, 1]
    assert weight_vector(recursive_gmcb(tri3())) == [3]


@settings(max_examples=20, deadline=None)
@given(n=st.integers(4, 64), seed=st.integers(1, 10_000))
def test_weight_vector_matches_oracle(n, seed):
    g = gen_random_planar(n, seed=seed)
    assert weight_vector(recursive_gmcb(g)) == oracle_basis(g).weights()


def test_c4_cuts():
    g = c4()
    gh = gomory_hu(g)
    assert sorted(w for _, _, w, _ in gh.edges) == [2, 2, 2]
    o = build_mincut_oracle(gh)
    for s, t in itertools.combinations(g.vertices, 2):
        assert maxflow_reference(g, s, t) == 2
        assert o.query_weight(s, t) == 2
        cut = o.query_cut(s, t)
        assert len(cut) == 2 and cut_separates(g, cut, s, t)


def test_star_is_its_own_tree():
    g = star3()
    gh = gomory_hu(g)
    assert sorted((min(u, v), max(u, v), w) for u, v, w, _ in gh.edges) == [(1, 2, 5), (1, 3, 3), (1, 4, 7)]
    o = build_mincut_oracle(gh)
    assert query_weight(o, 2, 3) == 3
    assert [g.edges[e][2] for e in query_cut(o, 3, 1)] == [3]
    assert maxflow_reference(g, 2, 4) == 5


def test_tree_input_dual_basis_is_the_loops():
    # one dual vertex with a loop per tree edge: every cut is a single edge
    g = star3()
    b = apmc(g)
    assert sorted(b.cut_edges(k) for k in range(len(b.imcb.triples))) == [[0], [1], [2]]


def test_single_edge_flow():
    g = build_embedding([(0, 0), (1, 0)], [(1, 2, 9)])
    assert maxflow_reference(g, 1, 2) == 9


def test_path_tree_query():
    g = build_embedding([(0, 0), (1, 0), (2, 0), (3, 0)], [(1, 2, 3), (2, 3, 1), (3, 4, 2)])
    o = build_mincut_oracle(gomory_hu(g))
    assert o.query_weight(1, 4) == 1
    assert o.query_weight(3, 4) == 2


def test_same_vertex_rejected():
    o = build_mincut_oracle(gomory_hu(c4()))
    with pytest.raises(SameVertex):
        o.query_weight(1, 1)


def test_disconnected_rejected():
    g = build_embedding([(0, 0), (1, 0), (5, 5)], [(1, 2, 1)])
    with pytest.raises(Disconnected):
        gomory_hu(g)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 128), seed=st.integers(0, 10_000))
def test_oracle_on_random_trees(n, seed):
    rng = random.Random(seed)
    g = random_tree_graph(n, rng)
    gh = gomory_hu(g)
    o = build_mincut_oracle(gh)
    for s, t in itertools.combinations(sorted(g.vertices), 2):
        assert o.query_weight(s, t) == gh.path_min(s, t)
    assert o.counter.max_reads <= 12


def test_oracle_on_tree_256():
    rng = random.Random(256)
    g = random_tree_graph(256, rng)
    gh = gomory_hu(g)
    o = build_mincut_oracle(gh)
    for s, t in itertools.combinations(sorted(g.vertices), 2):
        assert o.query_weight(s, t) == gh.path_min(s, t)
    assert o.counter.max_reads <= 12


def test_neighbour_query_is_edge_weight():
    rng = random.Random(5)
    g = random_tree_graph(60, rng)
    gh = gomory_hu(g)
    o = build_mincut_oracle(gh)
    for u, v, w, _ in gh.edges:
        assert o.query_weight(u, v) == w


@pytest.mark.parametrize("seed", range(1, 13))
def test_random_planar_all_pairs(seed):
    g = gen_random_planar(8 + 2 * seed, seed=seed, thin=0.2 if seed % 2 else 0.0)
    gh = gomory_hu(g, n0=8)
    for k in range(len(gh.edges)):
        assert induced_cut_weight(g, gh.side_of_edge(k)) == gh.weight(k)
        assert sum(g.edges[e][2] for e in gh.cut_edges(k)) == gh.weight(k)
    o = build_mincut_oracle(gh)
    for s, t in itertools.combinations(sorted(g.vertices), 2):
        f = maxflow_reference(g, s, t)
        assert gh.path_min(s, t) == f
        assert o.query_weight(s, t) == f
        cut = o.query_cut(s, t)
        assert sum(g.edges[e][2] for e in cut) == f
        assert cut_separates(g, cut, s, t)
    assert o.counter.max_reads <= 12


def test_gh_tree_shape():
    g = gen_random_planar(30, seed=3)
    gh = gomory_hu(g)
    assert len(gh.edges) == g.n - 1
    assert isinstance(gh, GomoryHuTree)
    seen = {1}
    stack = [1]
    while stack:
        x = stack.pop()
        for y, _ in gh.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    assert seen == set(g.vertices)
