import pytest
from hypothesis import given, settings, strategies as st

from planarmcb.errors import ParseError, TooSmall
from planarmcb.formats import (
    ImcbDocument,
    PlgDocument,
    parse_imcb,
    parse_plg,
    serialize_imcb,
    serialize_plg,
    write_graph,
)
from planarmcb.generators import gen_lower_bound, gen_random_planar
from planarmcb.mcb_recursive import explicit_mcb, recursive_gmcb

from helpers import tri3

T3_TEXT = """PLG 1
3 3
v 1 0.000000 0.000000
v 2 1.000000 0.000000
v 3 0.000000 1.000000
e 1 2 1
e 2 3 1
e 3 1 1
"""


def test_triangle_round_trip_bytes():
    assert write_graph(tri3()) == T3_TEXT
    assert serialize_plg(parse_plg(T3_TEXT)) == T3_TEXT


def test_comments_and_blank_lines():
    text = "# a triangle\n\n" + T3_TEXT.replace("e 1 2 1", "# first edge\ne 1 2 1")
    assert parse_plg(text) == parse_plg(T3_TEXT)


@pytest.mark.parametrize("cut,line", [(1, 2), (4, 5), (7, 8)])
def test_truncated_file_reports_next_line(cut, line):
    text = "\n".join(T3_TEXT.splitlines()[:cut]) + "\n"
    with pytest.raises(ParseError) as err:
        parse_plg(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


@pytest.mark.parametrize("bad,line", [
    ("PLG 2", 1),
    ("v 2 0.0 0.0", 3),
    ("e 1 9 1", 6),
    ("e 1 2 -3", 6),
    ("e 1 2 x", 6),
])
def test_malformed_lines(bad, line):
    lines = T3_TEXT.splitlines()
    lines[line - 1] = bad
    with pytest.raises(ParseError) as err:
        parse_plg("\n".join(lines) + "\n")
    assert err.value.line == line


def test_trailing_content():
    with pytest.raises(ParseError) as err:
        parse_plg(T3_TEXT + "e 1 2 3\n")
    assert err.value.line == 9


@settings(max_examples=20, deadline=None)
@given(n=st.integers(3, 80), seed=st.integers(1, 10_000))
def test_plg_round_trip_random(n, seed):
    g = gen_random_planar(n, seed=seed)
    text = write_graph(g)
    doc = parse_plg(text)
    assert serialize_plg(doc) == text
    h = doc.to_graph()
    assert h.edges == g.edges and h.rotation == g.rotation


def test_imcb_lower_bound_round_trip():
    g = gen_lower_bound(5)
    im = recursive_gmcb(g)
    doc = ImcbDocument.from_implicit(im)
    assert len(doc.triples) == g.m - g.n + 1
    text = serialize_imcb(doc)
    again = parse_imcb(text)
    assert again == doc
    assert serialize_imcb(again) == text
    assert again.expand(g).edge_sets() == explicit_mcb(im).edge_sets()


@settings(max_examples=15, deadline=None)
@given(n=st.integers(4, 64), seed=st.integers(1, 10_000))
def test_imcb_expand_random(n, seed):
    g = gen_random_planar(n, seed=seed)
    im = recursive_gmcb(g, n0=8)
    doc = parse_imcb(serialize_imcb(ImcbDocument.from_implicit(im)))
    assert doc.expand(g).edge_sets() == explicit_mcb(im).edge_sets()


def test_imcb_errors():
    text = serialize_imcb(ImcbDocument.from_implicit(recursive_gmcb(gen_lower_bound(5))))
    lines = text.splitlines()
    with pytest.raises(ParseError):
        parse_imcb("\n".join(lines[:-1]) + "\n")
    bad = [ln if not ln.startswith("t ") else "t 7 0 1" for ln in lines]
    with pytest.raises(ParseError):
        parse_imcb("\n".join(bad) + "\n")


# generators

def test_lower_bound_family():
    g = gen_lower_bound(5)
    assert g.m == 7
    t = gen_lower_bound(3)
    assert sorted(w for _, _, w in t.edges.values()) == [0, 0, 1]
    with pytest.raises(TooSmall):
        gen_lower_bound(2)


def test_random_planar_deterministic_and_sparse():
    a, b = gen_random_planar(50, seed=9), gen_random_planar(50, seed=9)
    assert a.edges == b.edges and a.coords == b.coords
    assert a.m <= 3 * a.n - 6
    assert all(0 <= w <= 16 for _, _, w in a.edges.values())
    thin = gen_random_planar(50, seed=9, thin=0.5)
    assert thin.is_connected() and thin.m < a.m


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("PMCB_SEED", "42")
    assert gen_random_planar(20).edges == gen_random_planar(20, seed=42).edges


def test_plg_needs_coordinates():
    from planarmcb.planar_core import simplify_multigraph
    g = simplify_multigraph(tri3()).graph
    with pytest.raises(ValueError):
        PlgDocument.from_graph(g)
