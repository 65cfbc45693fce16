import pytest
from hypothesis import given, settings, strategies as st

from planarmcb.generators import gen_lower_bound, gen_random_planar
from planarmcb.gmcb_oracle import (
    Cycle,
    CycleBasis,
    check_isometric,
    check_nested,
    gf2_extract,
    greedy_mcb_explicit,
    horton_cycles,
    interior_faces,
    oracle_basis,
    sorted_unique,
)
from planarmcb.errors import InsufficientRank

from helpers import all_simple_cycles, brute_force_mcb_weight, c4, k4, tri3


def test_triangle_horton():
    cs = horton_cycles(tri3(), [1])
    assert len(cs) == 1 and cs[0].weight == 3


def test_k4_candidates_hold_all_triangles():
    g = k4()
    sets = {c.edges for c in horton_cycles(g, g.vertices)}
    triangles = {(0, 1, 2), (0, 3, 4), (1, 4, 5), (2, 3, 5)}
    assert triangles <= sets


def test_lower_bound_horton_from_first_vertex():
    cs = horton_cycles(gen_lower_bound(5), [1])
    assert sorted(c.weight for c in cs) == [1, 1, 1]


def test_triangle_basis():
    b = greedy_mcb_explicit(tri3())
    assert len(b) == 1 and b.total_weight == 3
    assert gf2_extract(sorted_unique(horton_cycles(tri3(), [1])), 1).cycles == b.cycles


def test_lower_bound_basis():
    b = greedy_mcb_explicit(gen_lower_bound(5))
    assert (len(b), b.total_weight, b.total_length) == (3, 3, 12)
    assert sorted(c.length for c in b.cycles) == [3, 4, 5]
    assert oracle_basis(gen_lower_bound(6)).total_weight == 4


def test_k4_weight():
    assert greedy_mcb_explicit(k4()).total_weight == 9
    assert oracle_basis(k4()).total_weight == 9
    assert brute_force_mcb_weight(k4()) == 9


def test_insufficient_rank():
    with pytest.raises(InsufficientRank):
        gf2_extract([], 1)


def test_key_order():
    a = Cycle((0, 1, 2), 3, vertices=(1, 2, 3))
    b = Cycle((0, 1, 5), 3, vertices=(1, 2, 4))
    c = Cycle((0, 3), 3, vertices=(1, 4))
    assert sorted([b, a, c], key=Cycle.key) == [c, a, b]


def test_isometry_examples():
    g = k4()
    for c in oracle_basis(g).cycles:
        assert check_isometric(g, c)
    g = c4(chord=10)
    outer = Cycle((0, 1, 2, 3), 4)
    assert check_isometric(g, outer)
    g = c4(chord=0)
    assert not check_isometric(g, outer)


def test_interior_faces_of_face_cycle():
    g = k4()
    inner = interior_faces(g, (0, 1, 2))
    assert len(inner) == 3
    assert len(interior_faces(g, (0, 3, 4))) == 1


@settings(max_examples=25, deadline=None)
@given(n=st.integers(4, 9), seed=st.integers(1, 10_000), w=st.sampled_from([1, 3, 16]))
def test_gf2_matches_brute_force(n, seed, w):
    g = gen_random_planar(n, seed=seed, max_weight=w, thin=0.4)
    assert oracle_basis(g).total_weight == brute_force_mcb_weight(g)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(4, 32), seed=st.integers(1, 10_000), w=st.sampled_from([2, 16]))
def test_two_routes_agree_and_nest(n, seed, w):
    g = gen_random_planar(n, seed=seed, max_weight=w)
    a, b = greedy_mcb_explicit(g), oracle_basis(g)
    assert a.edge_sets() == b.edge_sets()
    assert check_nested(g, a)
    assert all(check_isometric(g, c) for c in a.cycles)


def test_crossing_family_not_nested():
    g = k4()
    crossing = CycleBasis([Cycle((0, 4, 5, 2), 4), Cycle((1, 5, 3, 0), 4)])
    assert not check_nested(g, crossing)


@pytest.mark.parametrize("seed", range(1, 13))
def test_first_separating_cycle_is_minimum(seed):
    # every pair of faces is separated by some basis cycle, and the first one
    # in greedy order is a lightest cycle separating them
    g = gen_random_planar(5 + seed % 4, seed=seed, max_weight=4, thin=0.2)
    basis = greedy_mcb_explicit(g)
    inside = [interior_faces(g, c.edges) for c in basis.cycles]
    every = [(sum(g.edges[e][2] for e in es), interior_faces(g, es)) for es in all_simple_cycles(g)]
    faces = range(len(g.faces()))
    for f1 in faces:
        for f2 in faces:
            if f1 >= f2:
                continue
            first = next(i for i, ins in enumerate(inside) if (f1 in ins) != (f2 in ins))
            lightest = min(w for w, ins in every if (f1 in ins) != (f2 in ins))
            assert basis.cycles[first].weight == lightest
