import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from planarmcb.errors import DegenerateWedge
from planarmcb.generators import gen_grid, gen_lower_bound, gen_random_planar, gen_web
from planarmcb.gmcb_oracle import check_isometric, check_nested, oracle_basis
from planarmcb.mcb_recursive import (
    ImplicitMcb,
    base_case,
    expand_cycle,
    explicit_mcb,
    recursive_gmcb,
    wedge_contains,
    wedge_contains_vertices,
)
from planarmcb.planar_core import build_embedding

from helpers import tri3


def same_as_oracle(g, **kw):
    got = explicit_mcb(recursive_gmcb(g, **kw))
    ref = oracle_basis(g)
    return got.edge_sets() == ref.edge_sets() and got.weights() == ref.weights()


def test_triangle():
    im = recursive_gmcb(tri3())
    assert len(im.triples) == 1 and im.triples[0][2] == 3
    c = expand_cycle(im, 0)
    assert c.edges == (0, 1, 2)
    assert len(explicit_mcb(im)) == 1


@pytest.mark.parametrize("n", [5, 10])
def test_lower_bound(n):
    im = recursive_gmcb(gen_lower_bound(n), n0=4)
    assert len(im.triples) == n - 2
    assert sum(w for _, _, w in im.triples) == n - 2


def test_lower_bound_lengths():
    b = explicit_mcb(recursive_gmcb(gen_lower_bound(5)))
    assert sorted(c.length for c in b.cycles) == [3, 4, 5]


def test_tree_input_has_empty_basis():
    g = build_embedding([(0, 0), (1, 0), (2, 1)], [(1, 2, 1), (2, 3, 4)])
    im = recursive_gmcb(g)
    assert im.triples == [] and len(explicit_mcb(im)) == 0


def test_grid_forced_recursion():
    g = gen_grid(8, 8)
    stats = {}
    assert same_as_oracle(g, n0=6, check=True, stats=stats)
    assert stats.get("levels", 0) >= 2


@pytest.mark.parametrize("seed", range(1, 31))
def test_random_with_structure_checks(seed):
    rng = random.Random(seed)
    g = gen_random_planar(rng.randint(12, 32), seed=seed, max_weight=rng.choice([2, 16]),
                          thin=rng.choice([0.0, 0.3]))
    stats = {}
    assert same_as_oracle(g, n0=rng.choice([4, 6, 9]), check=True, stats=stats)


@pytest.mark.parametrize("rings,spokes,seed", [(3, 8, 1), (4, 6, 2), (5, 7, 3), (4, 9, 4), (6, 5, 5)])
def test_web_graphs(rings, spokes, seed):
    g = gen_web(rings, spokes, seed=seed, max_weight=4)
    assert same_as_oracle(g, n0=5, check=True)


def test_web_sweep_reaches_every_merge_case():
    stats = {}
    for seed in range(1, 25):
        g = gen_web(3 + seed % 3, 6 + seed % 4, seed=seed, max_weight=3)
        assert same_as_oracle(g, n0=5, stats=stats)
    for key in ("horton_accepted", "normal_accepted", "mirror_accepted", "passive_accepted"):
        assert stats.get(key, 0) > 0, key


@settings(max_examples=30, deadline=None)
@given(n=st.integers(4, 48), seed=st.integers(1, 100_000), n0=st.sampled_from([4, 8, 16]))
def test_matches_oracle_and_invariants(n, seed, n0):
    g = gen_random_planar(n, seed=seed)
    im = recursive_gmcb(g, n0=n0)
    b = explicit_mcb(im)
    assert b.edge_sets() == oracle_basis(g).edge_sets()
    assert check_nested(g, b)
    assert all(check_isometric(g, c) for c in b.cycles)
    assert len(im.triples) == g.m - g.n + 1


def test_region_tree_matches_base_case():
    for seed in range(1, 11):
        g = gen_random_planar(40, seed=seed)
        im = recursive_gmcb(g, n0=8)
        ref = base_case(g)
        flat = ImplicitMcb.from_level(g, ref)
        got = sorted((im.expand_cycle(k).edges, im.face[k + 1]) for k in range(len(im.triples)))
        want = sorted((flat.expand_cycle(k).edges, flat.face[k + 1]) for k in range(len(flat.triples)))
        assert got == want


# wedges

def star(angles):
    pts = [(0.0, 0.0)] + [(math.cos(a), math.sin(a)) for a in angles]
    return build_embedding(pts, [(1, i + 2, 1) for i in range(len(angles))])


def angular_oracle(angles, r1, l1, r2, l2):
    tau = 2 * math.pi
    off = lambda x: (angles[x] - angles[r1]) % tau
    span = lambda a, b: (angles[b] - angles[a]) % tau or tau
    return off(r2) + span(r2, l2) <= span(r1, l1) + 1e-12


def test_identical_and_swapped_wedges():
    g = star([0.0, 1.0, 2.5, 4.0])
    assert wedge_contains_vertices(g, 1, 2, 4, 2, 4)
    assert not wedge_contains_vertices(g, 1, 2, 4, 4, 2)
    with pytest.raises(DegenerateWedge):
        wedge_contains_vertices(g, 2, 1, 3, 1, 1)


@settings(max_examples=80, deadline=None)
@given(k=st.integers(2, 9), seed=st.integers(0, 10_000))
def test_wedges_match_angles(k, seed):
    rng = random.Random(seed)
    angles = sorted(rng.sample(range(360), k))
    g = star([math.radians(a) for a in angles])
    leaf = {i: i + 2 for i in range(k)}
    rad = {i: math.radians(a) for i, a in enumerate(angles)}
    for _ in range(20):
        r1, l1, r2, l2 = (rng.randrange(k) for _ in range(4))
        darts = [g.dart_between(1, leaf[i]) for i in (r1, l1, r2, l2)]
        assert wedge_contains(g, *darts) == angular_oracle(rad, r1, l1, r2, l2)


@pytest.mark.parametrize("seed", range(1, 16))
def test_delta_sets_match_point_location(seed, monkeypatch):
    from planarmcb import mcb_recursive
    from planarmcb.gmcb_oracle import interior_faces

    calls = []
    original = mcb_recursive.Merger.delta_sets

    def checked(self, j, e, delta_r):
        d_int, d_ext, d_on = original(self, j, e, delta_r)
        t = self.trees[j]
        a, b, _ = self.g.edges[e]
        cyc = t.path_edges(a) + t.path_edges(b) + [e]
        on_c = {x for ed in cyc for x in self.g.edges[ed][:2]}
        inner = interior_faces(self.g, cyc)
        fm = self.fm
        want = (set(), set(), set())
        for i in delta_r:
            x = self.bverts[i]
            if x in on_c:
                want[2].add(i)
            elif fm.face_of[self.g.rotation[x][0]] in inner:
                want[0].add(i)
            else:
                want[1].add(i)
        calls.append(((d_int, d_ext, d_on), want))
        return d_int, d_ext, d_on

    monkeypatch.setattr(mcb_recursive.Merger, "delta_sets", checked)
    g = gen_random_planar(20 + seed % 13, seed=seed, max_weight=(2, 16)[seed % 2])
    assert same_as_oracle(g, n0=5)
    assert calls
    for got, want in calls:
        assert got == want
