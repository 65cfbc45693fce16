"""Text formats: PLG v1 for embedded graphs, IMCB v1 for implicit bases.

PLG v1::

    PLG 1
    <n> <m>
    v <id> <x> <y>        n lines, ids 1..n in order, 6 decimals
    e <u> <v> <w>         m lines, edge id = position

IMCB v1::

    IMCB 1
    graph <n> <m>
    trees <k>
    tree <root> <p_1> ... <p_n>    parent per vertex; 0 for the root, -1 if absent
    triples <t>
    t <i> <e> <w>
    regions <t + 1>
    r <parent> <face> <triple>     parent -1 and triple -1 for the root

Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from .errors import ParseError
from .gmcb_oracle import Cycle, CycleBasis
from .mcb_recursive import ImplicitMcb
from .planar_core import PlanarGraph, build_embedding


@dataclass
class PlgDocument:
    vertices: List[Tuple[int, float, float]] = field(default_factory=list)
    edges: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def to_graph(self, validate: bool = True) -> PlanarGraph:
        return build_embedding([(x, y) for _, x, y in self.vertices], self.edges, validate=validate)

    @classmethod
    def from_graph(cls, g: PlanarGraph) -> "PlgDocument":
        if g.coords is None:
            raise ValueError("PLG needs vertex coordinates")
        ids = sorted(g.vertices)
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError("PLG needs vertex ids 1..n")
        verts = [(v, float(g.coords[v][0]), float(g.coords[v][1])) for v in ids]
        edges = [g.edges[e] for e in sorted(g.edges)]
        return cls(verts, edges)


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield no, s.split()


class _Reader:
    def __init__(self, text: str):
        self.it = _lines(text)
        self.last = 0
        self.total = len(text.splitlines())

    def next(self, what: str) -> Tuple[int, List[str]]:
        try:
            no, toks = next(self.it)
        except StopIteration:
            raise ParseError(f"unexpected end of file, expected {what}", line=self.total + 1) from None
        self.last = no
        return no, toks

    def end(self) -> None:
        for no, _ in self.it:
            raise ParseError("trailing content after last record", line=no)


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", line=no) from None


def _float(tok: str, no: int, what: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"{what} must be a number, got {tok!r}", line=no) from None


def _expect(toks: List[str], no: int, tag: str, count: int) -> None:
    if toks[0] != tag:
        raise ParseError(f"expected {tag!r} record, got {toks[0]!r}", line=no)
    if len(toks) != count:
        raise ParseError(f"{tag!r} record needs {count - 1} fields, got {len(toks) - 1}", line=no)


def parse_plg(text: str) -> PlgDocument:
    r = _Reader(text)
    no, toks = r.next("header")
    if toks != ["PLG", "1"]:
        raise ParseError("missing 'PLG 1' header", line=no)
    no, toks = r.next("sizes")
    if len(toks) != 2:
        raise ParseError("sizes line needs n and m", line=no)
    n, m = _int(toks[0], no, "n"), _int(toks[1], no, "m")
    if n < 0 or m < 0:
        raise ParseError("sizes must be non-negative", line=no)
    doc = PlgDocument()
    for i in range(1, n + 1):
        no, toks = r.next(f"vertex {i}")
        _expect(toks, no, "v", 4)
        vid = _int(toks[1], no, "vertex id")
        if vid != i:
            raise ParseError(f"vertex ids must run 1..n in order, expected {i}", line=no)
        doc.vertices.append((vid, _float(toks[2], no, "x"), _float(toks[3], no, "y")))
    for _ in range(m):
        no, toks = r.next("edge record")
        _expect(toks, no, "e", 4)
        u, v, w = (_int(t, no, name) for t, name in zip(toks[1:], ("u", "v", "w")))
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"edge endpoint outside 1..{n}", line=no)
        if w < 0:
            raise ParseError("edge weight must be non-negative", line=no)
        doc.edges.append((u, v, w))
    r.end()
    return doc


def serialize_plg(doc: PlgDocument) -> str:
    out = ["PLG 1", f"{doc.n} {doc.m}"]
    out += [f"v {i} {x:.6f} {y:.6f}" for i, x, y in doc.vertices]
    out += [f"e {u} {v} {w}" for u, v, w in doc.edges]
    return "\n".join(out) + "\n"


def read_graph(path: str, validate: bool = True) -> PlanarGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_plg(fh.read()).to_graph(validate=validate)


def write_graph(g: PlanarGraph) -> str:
    return serialize_plg(PlgDocument.from_graph(g))


# ---------------------------------------------------------------- IMCB

@dataclass
class ImcbDocument:
    n: int
    m: int
    trees: List[Tuple[int, List[int]]] = field(default_factory=list)
    triples: List[Tuple[int, int, int]] = field(default_factory=list)
    regions: List[Tuple[int, int, int]] = field(default_factory=list)

    @classmethod
    def from_implicit(cls, im: ImplicitMcb) -> "ImcbDocument":
        g = im.graph
        ids = sorted(g.vertices)
        trees = []
        for t in im.trees:
            parents = []
            for v in ids:
                if v not in t.parent:
                    parents.append(-1)
                else:
                    p = t.parent[v]
                    parents.append(0 if p is None else p)
            trees.append((t.source, parents))
        regions = [(im.parent[0], im.face[0], -1)]
        regions += [(im.parent[k], im.face[k], k - 1) for k in range(1, len(im.parent))]
        return cls(g.n, g.m, trees, list(im.triples), regions)

    def expand(self, g: PlanarGraph) -> CycleBasis:
        """Explicit cycles, rebuilt from the stored parent arrays."""
        ids = sorted(g.vertices)
        basis = CycleBasis()
        for i, e, w in self.triples:
            root, parents = self.trees[i]
            parent = dict(zip(ids, parents))
            a, b, _ = g.edges[e]
            es = [e]
            for x in (a, b):
                while parent[x] not in (0, -1):
                    es.append(g.dart_between(x, parent[x]) >> 1)
                    x = parent[x]
            basis.cycles.append(Cycle(tuple(sorted(es)), w, root, e))
        return basis


def parse_imcb(text: str) -> ImcbDocument:
    r = _Reader(text)
    no, toks = r.next("header")
    if toks != ["IMCB", "1"]:
        raise ParseError("missing 'IMCB 1' header", line=no)
    no, toks = r.next("graph sizes")
    _expect(toks, no, "graph", 3)
    doc = ImcbDocument(_int(toks[1], no, "n"), _int(toks[2], no, "m"))
    no, toks = r.next("tree count")
    _expect(toks, no, "trees", 2)
    for _ in range(_int(toks[1], no, "tree count")):
        no, toks = r.next("tree record")
        _expect(toks, no, "tree", doc.n + 2)
        doc.trees.append((_int(toks[1], no, "root"), [_int(t, no, "parent") for t in toks[2:]]))
    no, toks = r.next("triple count")
    _expect(toks, no, "triples", 2)
    for _ in range(_int(toks[1], no, "triple count")):
        no, toks = r.next("triple record")
        _expect(toks, no, "t", 4)
        i, e, w = (_int(t, no, "triple field") for t in toks[1:])
        if not 0 <= i < len(doc.trees):
            raise ParseError(f"triple names tree {i}, only {len(doc.trees)} stored", line=no)
        doc.triples.append((i, e, w))
    no, toks = r.next("region count")
    _expect(toks, no, "regions", 2)
    count = _int(toks[1], no, "region count")
    if count != len(doc.triples) + 1:
        raise ParseError("region count must be triple count + 1", line=no)
    for _ in range(count):
        no, toks = r.next("region record")
        _expect(toks, no, "r", 4)
        doc.regions.append(tuple(_int(t, no, "region field") for t in toks[1:]))
    r.end()
    return doc


def serialize_imcb(doc: ImcbDocument) -> str:
    out = ["IMCB 1", f"graph {doc.n} {doc.m}", f"trees {len(doc.trees)}"]
    for root, parents in doc.trees:
        out.append("tree " + " ".join(map(str, [root] + list(parents))))
    out.append(f"triples {len(doc.triples)}")
    out += [f"t {i} {e} {w}" for i, e, w in doc.triples]
    out.append(f"regions {len(doc.regions)}")
    out += [f"r {p} {f} {k}" for p, f, k in doc.regions]
    return "\n".join(out) + "\n"
