import math

import pytest
from hypothesis import given, settings, strategies as st

from planarmcb.errors import TooSmall
from planarmcb.generators import gen_grid, gen_path, gen_random_planar, gen_web
from planarmcb.separator import EXTERIOR, INTERIOR, cycle_separator, split_graph

from helpers import k4


def check_result(g, sep):
    n = g.n
    bset = set(sep.boundary)
    assert len(bset) == sep.r
    assert set(sep.vertex_side) == set(g.vertices)
    assert all(sep.vertex_side[v] == 0 for v in bset)
    assert sep.interior_count() + sep.exterior_count() + sep.r == n
    assert sep.interior_count() <= 2 * n / 3 + 1
    assert sep.exterior_count() <= 2 * n / 3 + 1
    # no edge joins the two open sides
    for e, (u, v, _) in g.edges.items():
        su, sv = sep.vertex_side[u], sep.vertex_side[v]
        if su and sv:
            assert su == sv
    # every edge gets exactly one side
    assert set(sep.edge_side) == set(g.edges)
    assert set(sep.edge_side.values()) <= {INTERIOR, EXTERIOR}


def test_k4():
    g = k4()
    sep = cycle_separator(g, n0=3)
    assert sep.r == 3
    check_result(g, sep)
    g1, g2 = split_graph(g, sep)
    assert sorted((g1.n, g2.n)) == [3, 4]


def test_grid_10x10():
    g = gen_grid(10, 10)
    sep = cycle_separator(g, n0=3)
    check_result(g, sep)
    assert sep.r <= 4 * math.sqrt(100)
    assert sep.interior_count() <= 66 and sep.exterior_count() <= 66
    g1, g2 = split_graph(g, sep)
    assert g1.n <= 66 + sep.r and g2.n <= 66 + sep.r
    assert g1.m + g2.m == g.m


def test_path_graph():
    g = gen_path(10)
    sep = cycle_separator(g, n0=3)
    check_result(g, sep)


def test_too_small():
    with pytest.raises(TooSmall):
        cycle_separator(k4(), n0=32)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(8, 200), seed=st.integers(1, 10_000), thin=st.sampled_from([0.0, 0.5]))
def test_random_separators(n, seed, thin):
    g = gen_random_planar(n, seed=seed, thin=thin)
    sep = cycle_separator(g, n0=4)
    check_result(g, sep)
    g1, g2 = split_graph(g, sep)
    assert set(g1.edges) | set(g2.edges) == set(g.edges)
    assert not set(g1.edges) & set(g2.edges)


def test_web():
    g = gen_web(6, 10, seed=3)
    sep = cycle_separator(g, n0=4)
    check_result(g, sep)


def test_ceiling_fails_loudly():
    from planarmcb.errors import SeparatorTooLarge
    with pytest.raises(SeparatorTooLarge):
        cycle_separator(gen_grid(10, 10), n0=3, ceiling=1)
