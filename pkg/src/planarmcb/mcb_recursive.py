"""Divide-and-conquer greedy minimum cycle basis with an implicit result.

Each level splits the graph along a separator curve, solves every connected
piece of both sides recursively, and then replays the greedy scan over two
candidate streams merged in one order: Horton cycles rooted at separator
vertices, and the surviving cycles of the pieces.  Regions of the current
face partition keep, for every separator vertex inside them, a contracted
and a pruned copy of that vertex's dual tree.  A Horton cycle C(v, e) is
accepted exactly when the dual edge of e is still in the pruned tree.
Cycles from the pieces are decided by comparing white-face counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .dual_forest import (
    DualTree,
    TVertex,
    _alternate,
    build_from_parent,
    contract_edges,
    delete_edge,
    prune,
    remove_vertices,
)
from .errors import DegenerateWedge, Disconnected, TooSmall, UnknownTriple
from .gmcb_oracle import (
    Cycle,
    CycleBasis,
    greedy_scan,
    horton_cycles,
    interior_faces,
    sorted_unique,
    tree_cycle_vertices,
)
from .lexsp import LexSPT, lex_sp_tree
from .planar_core import PlanarGraph, locate_face
from .separator import EXTERIOR, INTERIOR, cycle_separator, split_graph

ACTIVE, PASSIVE, CROSS = 0, 1, 2


# ---------------------------------------------------------------- records

class CycleRec:
    """A cycle given by a tree, a non-tree edge and its weight."""

    __slots__ = ("tree", "e", "a", "b", "w", "length", "_edges", "_verts")

    def __init__(self, tree: LexSPT, e: int, a: int, b: int, w: int, length: int):
        self.tree = tree
        self.e = e
        self.a = a
        self.b = b
        self.w = w
        self.length = length
        self._edges: Optional[Tuple[int, ...]] = None
        self._verts: Optional[Tuple[int, ...]] = None

    def vertices(self) -> Tuple[int, ...]:
        if self._verts is None:
            self._verts = tree_cycle_vertices(self.tree, self.a, self.b)
        return self._verts

    def tie_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.vertices(), self.edges()

    def edges(self) -> Tuple[int, ...]:
        if self._edges is None:
            t = self.tree
            es = t.path_edges(self.a) + t.path_edges(self.b)
            es.append(self.e)
            self._edges = tuple(sorted(es))
        return self._edges


class Node:
    """Region tree node; the root has ``cycle`` None."""

    __slots__ = ("cycle", "parent", "face", "inner", "outer", "children", "depth",
                 "tin", "tout", "id")

    def __init__(self, cycle: Optional[CycleRec] = None):
        self.cycle = cycle
        self.parent: Optional[Node] = None
        self.face: Optional[int] = None
        self.inner = 0
        self.outer = 0
        self.children: List[Node] = []
        self.depth = 0
        self.tin = 0
        self.tout = 0
        self.id = 0


class EulerLCA:
    """Constant-time LCA from an Euler tour and a sparse table of depths."""

    def __init__(self, root: Node):
        tour: List[Node] = []
        first: Dict[int, int] = {}
        stack = [(root, 0)]
        while stack:
            x, i = stack.pop()
            if i == 0:
                first[id(x)] = len(tour)
            tour.append(x)
            if i < len(x.children):
                stack.append((x, i + 1))
                stack.append((x.children[i], 0))
        self.first = first
        self.tour = tour
        n = len(tour)
        table = [list(range(n))]
        k = 1
        while (1 << k) <= n:
            prev = table[-1]
            half = 1 << (k - 1)
            row = []
            for i in range(n - (1 << k) + 1):
                x, y = prev[i], prev[i + half]
                row.append(x if tour[x].depth <= tour[y].depth else y)
            table.append(row)
            k += 1
        self.table = table

    def lca(self, a: Node, b: Node) -> Node:
        i, j = self.first[id(a)], self.first[id(b)]
        if i > j:
            i, j = j, i
        k = (j - i + 1).bit_length() - 1
        x, y = self.table[k][i], self.table[k][j - (1 << k) + 1]
        return self.tour[x] if self.tour[x].depth <= self.tour[y].depth else self.tour[y]


class LevelResult:
    """GMCB of one (sub)graph: cycles, region tree and face ownership."""

    def __init__(self, graph: PlanarGraph, root: Node, nodes: List[Node]):
        self.graph = graph
        self.root = root
        self.nodes = nodes          # accepted cycles, in acceptance order
        self.face_node: Dict[int, Node] = {}
        self._lca: Optional[EulerLCA] = None

    def prepare(self) -> None:
        self.root.id = 0
        for i, x in enumerate(self.nodes):
            x.id = i + 1
        for x in [self.root] + self.nodes:
            x.children = []
        for x in self.nodes:
            x.parent.children.append(x)
        clock = 0
        stack = [(self.root, 0)]
        self.root.depth = 0
        while stack:
            x, i = stack.pop()
            if i == 0:
                x.tin = clock
                clock += 1
            if i < len(x.children):
                stack.append((x, i + 1))
                c = x.children[i]
                c.depth = x.depth + 1
                stack.append((c, 0))
            else:
                x.tout = clock
                clock += 1
        self.face_node = {x.face: x for x in [self.root] + self.nodes}
        assert len(self.face_node) == len(self.nodes) + 1 == len(self.graph.faces()), \
            "every face must own exactly one region"

    @property
    def lca(self) -> EulerLCA:
        if self._lca is None:
            self._lca = EulerLCA(self.root)
        return self._lca

    @staticmethod
    def is_ancestor(x: Node, y: Node) -> bool:
        return x.tin <= y.tin and y.tout <= x.tout


@dataclass
class Config:
    n0: int = 32
    check: bool = False
    stats: Dict[str, int] = field(default_factory=dict)

    def bump(self, key: str, by: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + by


# ---------------------------------------------------------------- base case

def _trivial(g: PlanarGraph) -> LevelResult:
    root = Node()
    root.face = g.external_face()
    res = LevelResult(g, root, [])
    res.prepare()
    return res


def base_case(g: PlanarGraph, cfg: Optional[Config] = None) -> LevelResult:
    """Explicit greedy on a small graph, packaged as a level result."""
    if cfg is not None:
        cfg.bump("base_cases")
    dim = g.m - g.n + 1
    if dim == 0:
        return _trivial(g)
    trees: Dict[int, LexSPT] = {}
    cands = sorted_unique(horton_cycles(g, g.vertices, trees))
    accepted, interiors, counts = greedy_scan(g, cands, dim, with_counts=True)
    root = Node()
    root.face = g.external_face()
    nodes = []
    for c, (n_in, n_out) in zip(accepted, counts):
        a, b, _ = g.edges[c.edge]
        t = trees[c.root]
        rec = CycleRec(t, c.edge, a, b, c.weight, c.length)
        rec._edges = c.edges
        rec._verts = c.vertices
        x = Node(rec)
        x.inner, x.outer = n_in, n_out
        nodes.append(x)
    # smallest containing cycle per face
    nf = len(g.faces())
    holder: List[Tuple[int, int]] = [(nf + 1, -1)] * nf
    for i, inside in enumerate(interiors):
        size = len(inside)
        for f in inside:
            if size < holder[f][0]:
                holder[f] = (size, i)
    order = sorted(range(len(nodes)), key=lambda i: len(interiors[i]))
    for i in order:
        # parent: smallest strictly larger interior holding one of our faces
        best = None
        f0 = next(iter(interiors[i]))
        for j in range(len(nodes)):
            if j != i and f0 in interiors[j] and len(interiors[j]) > len(interiors[i]):
                if best is None or len(interiors[j]) < len(interiors[best]):
                    best = j
        nodes[i].parent = root if best is None else nodes[best]
    for f in range(nf):
        i = holder[f][1]
        x = root if i < 0 else nodes[i]
        assert x.face is None or x is root and f == root.face, "region holds two faces"
        x.face = f
    res = LevelResult(g, root, nodes)
    res.prepare()
    return res


# ---------------------------------------------------------------- level state

class Entry:
    """A face of a region: white (graph face), child (a cycle's inside) or outer."""

    __slots__ = ("white", "kind", "face", "node", "region", "c", "p")

    def __init__(self, kind: str, face: Optional[int] = None, node: Optional[Node] = None):
        self.kind = kind
        self.white = kind == "face"
        self.face = face
        self.node = node
        self.region: Optional[Region] = None
        self.c: Dict[int, TVertex] = {}
        self.p: Dict[int, TVertex] = {}

    def __repr__(self) -> str:
        return f"{self.kind}:{self.face if self.white else id(self) % 997}"


class Region:
    __slots__ = ("entries", "white", "node", "delta", "ctree", "ptree", "outer")

    def __init__(self, node: Node):
        self.entries: Dict[Entry, None] = {}
        self.white = 0
        self.node = node
        self.delta: Set[int] = set()
        self.ctree: Dict[int, DualTree] = {}
        self.ptree: Dict[int, DualTree] = {}
        self.outer: Optional[Entry] = None

    def add(self, en: Entry) -> None:
        self.entries[en] = None
        en.region = self
        if en.white:
            self.white += 1

    def drop(self, en: Entry) -> None:
        del self.entries[en]
        if en.white:
            self.white -= 1


class RecState:
    __slots__ = ("state", "considered", "accepted", "mirror", "entry", "level_node")

    def __init__(self):
        self.state = ACTIVE
        self.considered = False
        self.accepted = False
        self.mirror = False
        self.entry: Optional[Entry] = None
        self.level_node: Optional[Node] = None


class Child:
    def __init__(self, side: int, graph: PlanarGraph, res: LevelResult, face_j: int):
        self.side = side
        self.graph = graph
        self.res = res
        self.face_j = face_j
        self.node_j = res.face_node[face_j]
        self.upto = self.node_j  # cross marks cover the path below this node
        self.state: Dict[int, RecState] = {id(x): RecState() for x in res.nodes}


def wedge_contains(g: PlanarGraph, r1: int, l1: int, r2: int, l2: int) -> bool:
    """Is the sector from dart ``r2`` ccw to ``l2`` inside the one from ``r1`` to ``l1``?

    All four darts must leave the same vertex; equal legs mean the full turn.
    """
    center = g.tail(r1)
    for d in (l1, r2, l2):
        if d not in g._pos or g.tail(d) != center:
            raise DegenerateWedge("legs must leave the wedge centre")
    deg = g.degree(center)
    pos = g._pos

    def span(x, y):
        s = (pos[y] - pos[x]) % deg
        return s if s else deg

    return (pos[r2] - pos[r1]) % deg + span(r2, l2) <= span(r1, l1)


def wedge_contains_vertices(g: PlanarGraph, center: int, r1: int, l1: int, r2: int, l2: int) -> bool:
    """Vertex-leg form of :func:`wedge_contains` for simple graphs."""
    try:
        darts = [g.dart_between(center, x) for x in (r1, l1, r2, l2)]
    except KeyError as exc:
        raise DegenerateWedge(f"{exc} is not a neighbour of {center}") from None
    return wedge_contains(g, *darts)


class Merger:
    def __init__(self, g: PlanarGraph, sep, children: List[Child], cfg: Config):
        self.g = g
        self.fm = g.faces()
        self.sep = sep
        self.cfg = cfg
        self.bverts = list(sep.boundary)
        self.r = len(self.bverts)
        self.children = children
        self.trees = [lex_sp_tree(g, v) for v in self.bverts]
        self.root = Node()
        self.accepted: List[Node] = []
        self.regions: List[Region] = []
        self.edge_child: Dict[int, int] = {}
        for ci, ch in enumerate(children):
            for e in ch.graph.edges:
                self.edge_child[e] = ci
        self.clinks: List[dict] = [dict() for _ in range(self.r)]
        self.plinks: List[dict] = [dict() for _ in range(self.r)]
        self.child_face: List[Dict[int, int]] = []
        self.static_parent: List[Dict[int, Optional[int]]] = []
        self._interiors: Dict[int, Set[int]] = {}
        self.root_face: Optional[int] = None
        self._build_initial()

    # setup
    def _build_initial(self) -> None:
        fm = self.fm
        ext = self.g.external_face()
        self.ext_face = ext
        R = Region(self.root)
        self.regions.append(R)
        self.face_entry: Dict[int, Entry] = {}
        for f in fm.faces:
            en = Entry("face", face=f.id)
            self.face_entry[f.id] = en
            R.add(en)
        R.delta = set(range(self.r))
        for j, t in enumerate(self.trees):
            tree_edges = {pe for pe in t.parent_edge.values() if pe is not None}
            parent: Dict[int, Optional[int]] = {ext: None}
            pstatic: Dict[int, Optional[int]] = {ext: None}
            order = [ext]
            i = 0
            while i < len(order):
                f = order[i]
                i += 1
                for d in fm.faces[f].boundary:
                    e = d >> 1
                    if e in tree_edges:
                        continue
                    nf = fm.face_of[d ^ 1]
                    if nf not in parent:
                        parent[nf] = f
                        pstatic[nf] = e
                        order.append(nf)
            self.child_face.append({pstatic[f]: f for f in order if pstatic[f] is not None})
            self.static_parent.append(parent)
            entry_of = self.face_entry.__getitem__
            ct, cvx = build_from_parent("contracted", order, parent, pstatic, entry_of, self.clinks[j])
            pt, pvx = build_from_parent("pruned", order, parent, pstatic, entry_of, self.plinks[j])
            for f in order:
                self.face_entry[f].c[j] = cvx[f]
                self.face_entry[f].p[j] = pvx[f]
            ct.region = pt.region = R
            ct.owner = pt.owner = j
            R.ctree[j] = ct
            R.ptree[j] = pt

    # candidate stream
    def candidates(self):
        vj = set(self.bverts)
        items = []
        for j, t in enumerate(self.trees):
            v = self.bverts[j]
            tree_edges = {pe for pe in t.parent_edge.values() if pe is not None}
            for e, (a, b, w) in self.g.edges.items():
                if e in tree_edges or t.lca(a, b) != v:
                    continue
                wt = t.dist[a].w + t.dist[b].w + w
                ln = t.depth[a] + t.depth[b] + 1
                items.append((wt, ln, 0, j, e, None))
        marked_cache: Dict[int, Set[int]] = {}
        for ci, ch in enumerate(self.children):
            for x in ch.res.nodes:
                rec = x.cycle
                t = rec.tree
                marks = marked_cache.get(id(t))
                if marks is None:
                    marks = set()
                    for u in t.order:
                        p = t.parent[u]
                        if u in vj or (p is not None and p in marks):
                            marks.add(u)
                    marked_cache[id(t)] = marks
                if rec.a in marks or rec.b in marks:
                    continue
                items.append((rec.w, rec.length, 1, ci, x.id, x))
        items.sort(key=lambda it: (it[0], it[1]))
        out = []
        i = 0
        while i < len(items):
            k = i
            while k < len(items) and items[k][:2] == items[i][:2]:
                k += 1
            group = items[i:k]
            if len(group) > 1:
                group.sort(key=lambda it: (self._tie_key(it), it[2], it[3], it[4]))
            out.extend(group)
            i = k
        self.cfg.bump("candidates", len(out))
        return out

    def _tie_key(self, it):
        if it[2] == 1:
            return it[5].cycle.tie_key()
        t = self.trees[it[3]]
        a, b, _ = self.g.edges[it[4]]
        return (tree_cycle_vertices(t, a, b),
                tuple(sorted(t.path_edges(a) + t.path_edges(b) + [it[4]])))

    # main loop
    def run(self) -> LevelResult:
        for it in self.candidates():
            if it[2] == 0:
                changed = self.try_horton(it[3], it[4], it[0], it[1])
            else:
                changed = self.try_recursive(it[3], it[5])
            if changed and self.cfg.check:
                self.check_structures()
        return self.finalize()

    def try_horton(self, j: int, e: int, w: int, length: int) -> bool:
        rec = self.plinks[j].get(e)
        if rec is None or not rec.alive:
            return False
        R = rec.a.tree.region
        a, b, _ = self.g.edges[e]
        node = Node(CycleRec(self.trees[j], e, a, b, w, length))
        self.accepted.append(node)
        self.insert_horton(j, e, R, node)
        self.mark_crossing(j, e)
        self.cfg.bump("horton_accepted")
        return True

    # Horton insertion
    def insert_horton(self, j: int, e: int, R: Region, node: Node) -> None:
        T = R.ctree[j]
        rec = self.clinks[j][e]
        side, verts, _ = _alternate((rec.a, rec.b), (lambda x: True, lambda x: True), skip=rec)
        int_smaller = side == 1
        new = Region(node if int_smaller else R.node)
        self.regions.append(new)
        for x in verts:
            en = x.entry
            R.drop(en)
            new.add(en)
        if int_smaller:
            R1, R2 = new, R
        else:
            R1, R2 = R, new
            new.outer = R.outer
        R1.node = node
        f1 = Entry("outer")
        f2 = Entry("child", node=node)
        R1.add(f1)
        R2.add(f2)
        R1.outer = f1
        d_int, d_ext, d_on = self.delta_sets(j, e, R.delta)
        old_c, old_p = R.ctree, R.ptree
        R1.ctree, R1.ptree, R2.ctree, R2.ptree = {}, {}, {}, {}
        R1.delta = d_int | d_on
        R2.delta = d_ext | d_on
        for u in d_int:
            self._contract_side(u, old_c[u], old_p[u], R1, R2, f1)
        for u in d_ext:
            self._contract_side(u, old_c[u], old_p[u], R2, R1, f2)
        for u in d_on:
            self._split_tree(u, old_c[u], old_p[u], R1, R2, f1, f2)
        node.inner = R1.white
        node.outer = R2.white

    def _first_vertex(self, region: Region, u: int, field_name: str = "c") -> Optional[TVertex]:
        for en in region.entries:
            x = getattr(en, field_name).get(u)
            if x is not None:
                return x
        return None

    def _contract_side(self, u, T, P, keep: Region, other: Region, new_entry: Entry) -> None:
        """Collapse the part of ``T`` lying in ``other`` into one vertex for ``new_entry``."""
        start = self._first_vertex(other, u)
        S = [start]
        seen = {id(start)}
        inner_edges = []
        i = 0
        while i < len(S):
            x = S[i]
            i += 1
            for ed in x.adj:
                y = ed.other(x)
                if id(y) in seen or y.entry.region is not other:
                    continue
                seen.add(id(y))
                S.append(y)
                inner_edges.append(ed)
        entries = [x.entry for x in S]
        for en in entries:
            del en.c[u]
        if len(S) == 1:
            base = S[0]
            base.entry = new_entry
        else:
            base = contract_edges(T, inner_edges, new_entry)
        new_entry.c[u] = base
        T.region = keep
        keep.ctree[u] = T
        pverts = []
        for en in entries:
            px = en.p.pop(u, None)
            if px is not None:
                pverts.append(px)
        if pverts:
            pb = self._contract_set(P, pverts, new_entry)
            new_entry.p[u] = pb
            self._prune(u, P, [pb])
        P.region = keep
        keep.ptree[u] = P

    def _prune(self, u: int, P: DualTree, seeds: Iterable[TVertex]) -> None:
        for x in prune(P, seeds):
            x.entry.p.pop(u, None)

    def _split_tree(self, u, T, P, R1: Region, R2: Region, f1: Entry, f2: Entry) -> None:
        """Separator vertex on the new cycle: cut its tree along the crossing edge."""
        s1 = self._first_vertex(R1, u)
        s2 = self._first_vertex(R2, u)
        side, verts, leaving = _alternate(
            (s1, s2), (lambda x: x.entry.region is R1, lambda x: x.entry.region is R2)
        )
        assert len(leaving) == 1, "a cycle meets each dual tree in one edge"
        cross = leaving[0]
        moved = {id(x) for x in verts}
        first = verts[0]
        x_small = cross.a if id(cross.a) in moved else cross.b
        x_large = cross.other(x_small)
        cross.kill()
        cross.a.adj.pop(cross)
        cross.b.adj.pop(cross)
        Tn = DualTree("contracted", T.links)
        for x in verts:
            x.tree = Tn
        Tn.size = len(verts)
        T.size -= len(verts)
        if id(T.root) in moved:
            Tn.root = T.root
            T.root = x_large
        else:
            Tn.root = x_small
        T_int, T_ext = (Tn, T) if side == 0 else (T, Tn)
        x_int, x_ext = (x_small, x_large) if side == 0 else (x_large, x_small)
        v1 = T_int.new_vertex(f1)
        T_int.attach(x_int, v1)
        f1.c[u] = v1
        v2 = T_ext.new_vertex(f2)
        T_ext.attach(x_ext, v2)
        f2.c[u] = v2
        for tr, reg in ((T_int, R1), (T_ext, R2)):
            tr.region = reg
            tr.owner = u
            reg.ctree[u] = tr
        # pruned copy
        pe = self.plinks[u].get(cross.static) if cross.static is not None else None
        if pe is not None and pe.alive:
            small, large = delete_edge(P, pe)
            ends = (pe.a, pe.b)
            for tr in (small, large):
                reg = tr.root.entry.region if tr.root is not None else None
                tr.region = reg
                tr.owner = u
                reg.ptree[u] = tr
                self._prune(u, tr, [x for x in ends if x.tree is tr])
        else:
            empty = DualTree("pruned", P.links)
            if P.root is None or P.root.entry.region is R1:
                P_int, P_ext = P, empty
            else:
                P_int, P_ext = empty, P
            for tr, reg in ((P_int, R1), (P_ext, R2)):
                tr.region = reg
                tr.owner = u
                reg.ptree[u] = tr
        for reg in (R1, R2):
            if u not in reg.ptree:
                tr = DualTree("pruned", P.links)
                tr.region = reg
                tr.owner = u
                reg.ptree[u] = tr

    # separator vertices relative to a cycle
    def delta_sets(self, j: int, e: int, delta_r: Set[int]):
        t = self.trees[j]
        v = self.bverts[j]
        a, b, _ = self.g.edges[e]
        on = [i for i in range(self.r)
              if t.is_ancestor(self.bverts[i], a) or t.is_ancestor(self.bverts[i], b)]
        f_int = self.child_face[j][e]
        left_int = self.fm.face_of[2 * e] == f_int
        side = [0] * self.r
        k = len(on)
        for idx in range(k):
            i2 = on[idx]
            i1 = on[idx - 1]
            gap = (i2 - i1 - 1) % self.r if k > 1 else self.r - 1
            if gap == 0:
                continue
            inside = self._corner_inside(t, v, a, b, e, left_int, self.bverts[i2],
                                         self.sep.corner_in[i2])
            s = INTERIOR if inside else EXTERIOR
            i = (i2 - 1) % self.r
            for _ in range(gap):
                side[i] = s
                i = (i - 1) % self.r
        on_set = set(on)
        d_on = {i for i in delta_r if i in on_set}
        d_int = {i for i in delta_r if i not in on_set and side[i] == INTERIOR}
        d_ext = {i for i in delta_r if i not in on_set and side[i] == EXTERIOR}
        return d_int, d_ext, d_on

    def _dart(self, p: int, edge: int) -> int:
        return 2 * edge if self.g.edges[edge][0] == p else 2 * edge + 1

    def _toward(self, t: LexSPT, x: int, p: int) -> int:
        """Vertex after ``p`` on the tree path from ``p`` down to ``x``."""
        return t.ancestor(x, t.depth[x] - t.depth[p] - 1)

    def _corner_inside(self, t, v, a, b, e, left_int, p, corner) -> bool:
        # darts from p to its predecessor and successor along v -> a -> b -> v
        if p == v:
            d_out = self._dart(p, e) if v == a else self._dart(p, t.parent_edge[self._toward(t, a, p)])
            d_in = self._dart(p, e) if v == b else self._dart(p, t.parent_edge[self._toward(t, b, p)])
        elif t.is_ancestor(p, a):
            d_in = self._dart(p, t.parent_edge[p])
            d_out = self._dart(p, e) if p == a else self._dart(p, t.parent_edge[self._toward(t, a, p)])
        else:
            d_out = self._dart(p, t.parent_edge[p])
            d_in = self._dart(p, e) if p == b else self._dart(p, t.parent_edge[self._toward(t, b, p)])
        g = self.g
        if left_int:
            return wedge_contains(g, d_out, d_in, corner, g.rot_next(corner))
        return wedge_contains(g, d_in, d_out, corner, g.rot_next(corner))

    # crossing marks on recursive cycles
    def mark_crossing(self, j: int, e: int) -> None:
        ci = self.edge_child.get(e)
        if ci is None:
            return
        ch = self.children[ci]
        res = ch.res
        kf = ch.graph.faces()
        n1 = res.face_node[kf.face_of[2 * e]]
        n2 = res.face_node[kf.face_of[2 * e + 1]]
        nj = ch.node_j
        lca = res.lca.lca
        a1, a2, a3 = lca(n1, n2), lca(n1, nj), lca(n2, nj)
        x = a1
        while x is not res.root and not res.is_ancestor(x, nj):
            st = ch.state[id(x)]
            if st.state == CROSS:
                break
            if st.state == ACTIVE and not st.considered:
                st.state = CROSS
                self.cfg.bump("cross_marked")
            x = x.parent
        top = a2 if a2.depth >= a3.depth else a3
        if top.depth < ch.upto.depth:
            x = ch.upto
            while x is not top:
                st = ch.state[id(x)]
                if st.state == ACTIVE and not st.considered:
                    st.state = CROSS
                    self.cfg.bump("cross_marked")
                x = x.parent
            ch.upto = top

    # cycles from the pieces
    def _white_entry(self, ch: Child, kface: int) -> Entry:
        en = self.face_entry[self._gface(ch, kface)]
        assert en.region is not None and en.region.entries.get(en, 1) is None, "face rolled up"
        return en

    def _gface(self, ch: Child, kface: int) -> int:
        """Face of this level holding the key dart of a child face."""
        return self.fm.face_of[ch.graph.faces().faces[kface].key]

    def try_recursive(self, ci: int, x: Node) -> bool:
        ch = self.children[ci]
        st = ch.state[id(x)]
        if st.state == CROSS:
            self.cfg.bump("cross_skipped")
            return False
        st.considered = True
        if st.state == PASSIVE:
            node = Node(x.cycle)
            node.inner, node.outer = x.inner, x.outer
            st.level_node = node
            st.accepted = True
            self.accepted.append(node)
            self.cfg.bump("passive_accepted")
            return False
        mirror = ch.side == 2 and ch.res.is_ancestor(x, ch.node_j)
        if not mirror:
            R = self._white_entry(ch, x.face).region
            if R.white <= x.inner:
                return False
            node = Node(x.cycle)
            st.level_node = node
            st.accepted = True
            self.accepted.append(node)
            collected = [self._white_entry(ch, x.face)]
            for y in x.children:
                self._collect_below(ch, y, collected)
            new = Entry("child", node=node)
            self._rollup(R, collected, new)
            st.entry = new
            node.inner = x.inner
            node.outer = R.white
            self.cfg.bump("normal_accepted")
            return True
        parent = x.parent
        R = self._white_entry(ch, parent.face).region
        if R.white <= x.outer:
            return False
        node = Node(x.cycle)
        st.level_node = node
        st.accepted = True
        st.mirror = True
        self.accepted.append(node)
        collected: List[Entry] = []
        cur = x
        while True:
            p = cur.parent
            if p is ch.res.root:
                collected.append(self._white_entry(ch, p.face))
                self.root_face = self._gface(ch, p.face)
                for y in p.children:
                    if y is not cur:
                        self._collect_below(ch, y, collected)
                break
            sp = ch.state[id(p)]
            stop = sp.considered and sp.mirror and sp.accepted
            if not stop:
                sp.state = PASSIVE
            collected.append(self._white_entry(ch, p.face))
            for y in p.children:
                if y is not cur:
                    self._collect_below(ch, y, collected)
            if stop:
                break
            cur = p
        if R.outer is not None:
            collected.append(R.outer)
        new = Entry("outer")
        self._rollup(R, collected, new)
        R.outer = new
        R.node = node
        node.outer = x.outer
        node.inner = R.white
        self.cfg.bump("mirror_accepted")
        return True

    def _collect_below(self, ch: Child, y: Node, out: List[Entry]) -> None:
        stack = [y]
        while stack:
            z = stack.pop()
            sz = ch.state[id(z)]
            if sz.considered:
                if sz.accepted and sz.entry is not None and sz.entry.region is not None \
                        and sz.entry in sz.entry.region.entries:
                    out.append(sz.entry)
                continue
            if sz.state != ACTIVE:
                continue
            sz.state = PASSIVE
            out.append(self._white_entry(ch, z.face))
            stack.extend(z.children)

    def _rollup(self, R: Region, collected: List[Entry], new: Entry) -> None:
        for en in collected:
            assert en.region is R, "rolled-up faces must share one region"
            R.drop(en)
        R.add(new)
        for u in R.delta:
            T = R.ctree[u]
            verts = [en.c.pop(u) for en in collected]
            base = self._contract_set(T, verts, new)
            new.c[u] = base
            P = R.ptree[u]
            pverts = [en.p.pop(u) for en in collected if u in en.p]
            if pverts:
                pb = self._contract_set(P, pverts, new)
                new.p[u] = pb
                self._prune(u, P, [pb])
        for en in collected:
            en.region = None

    @staticmethod
    def _contract_set(T: DualTree, verts: List[TVertex], new: Entry) -> TVertex:
        if len(verts) == 1:
            verts[0].entry = new
            return verts[0]
        ids = {id(x) for x in verts}
        edges = []
        for x in verts:
            pe = x.parent_edge()
            if pe is not None and id(pe.other(x)) in ids:
                edges.append(pe)
        return contract_edges(T, edges, new)

    # output
    def finalize(self) -> LevelResult:
        root = self.root
        for R in self.regions:
            whites = [en for en in R.entries if en.white]
            assert len(whites) == 1, f"region ends with {len(whites)} faces"
            R.node.face = whites[0].face
            for en in R.entries:
                if en.kind == "child":
                    en.node.parent = R.node
        for ch in self.children:
            for x in ch.res.nodes:
                st = ch.state[id(x)]
                node = st.level_node
                if node is None:
                    continue
                if node.parent is None:
                    p = x.parent
                    node.parent = root if p is ch.res.root else ch.state[id(p)].level_node
                    assert node.parent is not None, "parent of a rolled-up cycle not kept"
                if node.face is None:
                    node.face = self._gface(ch, x.face)
        if root.face is None:
            root.face = self.root_face
        res = LevelResult(self.g, root, self.accepted)
        res.prepare()
        return res

    # instrumented verification
    def _interior(self, node: Node) -> Set[int]:
        s = self._interiors.get(id(node))
        if s is None:
            s = interior_faces(self.g, node.cycle.edges())
            self._interiors[id(node)] = s
        return s

    def check_structures(self) -> None:
        """Compare every maintained tree with a rebuild from the accepted cycles."""
        self.cfg.bump("structure_checks")
        active_nodes = [x for x in self.accepted]
        interiors = {id(x): self._interior(x) for x in active_nodes}
        sig: Dict[int, frozenset] = {}
        for f in range(len(self.fm)):
            sig[f] = frozenset(id(x) for x in active_nodes if f in interiors[id(x)])
        by_id = {id(x): x for x in active_nodes}
        for R in self.regions:
            whites = [en.face for en in R.entries if en.white]
            assert whites, "region without white faces"
            s_r = sig[whites[0]]
            expect_whites = {f for f in sig if sig[f] == s_r}
            assert expect_whites == set(whites), "region faces differ from rebuild"
            child_entry = {id(en.node): en for en in R.entries if en.kind == "child"}

            def cls(f):
                if sig[f] == s_r:
                    return self.face_entry[f]
                if s_r < sig[f]:
                    extra = [by_id[i] for i in sig[f] - s_r]
                    top = max(extra, key=lambda x: len(interiors[id(x)]))
                    return child_entry[id(top)]
                return R.outer

            classes = {f: cls(f) for f in sig}
            assert set(classes.values()) == set(R.entries), "entries differ from rebuild"
            for u in R.delta:
                T, P = R.ctree[u], R.ptree[u]
                T.check()
                P.check()
                parent = self.static_parent[u]
                exp_edges = []
                for f, p in parent.items():
                    if p is not None and classes[f] is not classes[p]:
                        exp_edges.append(frozenset((id(classes[f]), id(classes[p]))))
                got = [frozenset((id(ed.a.entry), id(ed.b.entry))) for ed in T.edges()]
                assert sorted(map(sorted, exp_edges)) == sorted(map(sorted, got)), \
                    "contracted tree differs from rebuild"
                assert {id(x.entry) for x in T.vertices()} == {id(en) for en in R.entries}
                for en in R.entries:
                    assert en.c[u].entry is en
                # pruned: strip black leaves from the expected tree
                adj: Dict[int, Set[int]] = {id(en): set() for en in R.entries}
                for pair in exp_edges:
                    x, y = tuple(pair)
                    adj[x].add(y)
                    adj[y].add(x)
                colour = {id(en): en.white for en in R.entries}
                alive = set(adj)
                changed = True
                while changed:
                    changed = False
                    for x in list(alive):
                        if not colour[x] and len(adj[x] & alive) <= 1:
                            alive.discard(x)
                            changed = True
                got_p = {id(x.entry) for x in P.vertices()}
                assert got_p == alive, "pruned tree differs from rebuild"
                for x in P.vertices():
                    if not x.entry.white:
                        assert x.degree >= 2, "black leaf left in pruned tree"
                    assert x.entry.p[u] is x


# ---------------------------------------------------------------- driver

def _solve(g: PlanarGraph, cfg: Config) -> LevelResult:
    if g.m - g.n + 1 == 0:
        return _trivial(g)
    if g.n <= cfg.n0:
        return base_case(g, cfg)
    try:
        sep = cycle_separator(g, n0=cfg.n0)
    except TooSmall:
        return base_case(g, cfg)
    if sep.interior_count() == 0 or sep.exterior_count() == 0:
        cfg.bump("separator_fallbacks")
        return base_case(g, cfg)
    cfg.bump("levels")
    cfg.stats["max_boundary"] = max(cfg.stats.get("max_boundary", 0), sep.r)
    children: List[Child] = []
    for side, want in ((1, INTERIOR), (2, EXTERIOR)):
        verts = [v for v, s in sep.vertex_side.items() if s == want] + list(sep.boundary)
        eids = [e for e, s in sep.edge_side.items() if s == want]
        h = g.subgraph(verts, eids)
        for comp in h.components():
            cs = set(comp)
            ce = [e for e in eids if g.edges[e][0] in cs]
            if len(ce) - len(comp) + 1 <= 0:
                continue
            k = g.subgraph(comp, ce)
            res = _solve(k, cfg)
            if side == 1:
                fj = k.external_face()
            else:
                fj = k.faces().face_of[locate_face(g, k, sep.piece_face[0], comp[0])]
            children.append(Child(side, k, res, fj))
    return Merger(g, sep, children, cfg).run()


class ImplicitMcb:
    """Trees, cycle triples (tree index, edge, weight) and the region tree.

    Node 0 is the root region; node k >= 1 belongs to triple k - 1.
    """

    def __init__(self, graph: PlanarGraph, trees: List[LexSPT], triples: List[Tuple[int, int, int]],
                 parent: List[int], face: List[int]):
        self.graph = graph
        self.trees = trees
        self.triples = triples
        self.parent = parent
        self.face = face

    @classmethod
    def from_level(cls, g: PlanarGraph, res: LevelResult) -> "ImplicitMcb":
        tree_index: Dict[int, int] = {}
        trees: List[LexSPT] = []
        triples = []
        for x in res.nodes:
            t = x.cycle.tree
            if id(t) not in tree_index:
                tree_index[id(t)] = len(trees)
                trees.append(t)
            triples.append((tree_index[id(t)], x.cycle.e, x.cycle.w))
        parent = [-1] + [x.parent.id for x in res.nodes]
        face = [res.root.face] + [x.face for x in res.nodes]
        return cls(g, trees, triples, parent, face)

    def __len__(self) -> int:
        return len(self.triples)

    def expand_cycle(self, k: int) -> Cycle:
        if not 0 <= k < len(self.triples):
            raise UnknownTriple(f"no triple {k}")
        i, e, w = self.triples[k]
        t = self.trees[i]
        a, b, _ = self.graph.edges[e]
        es = t.path_edges(a) + t.path_edges(b) + [e]
        return Cycle(tuple(sorted(es)), w, t.source, e, tree_cycle_vertices(t, a, b))

    def explicit(self) -> CycleBasis:
        return CycleBasis([self.expand_cycle(k) for k in range(len(self.triples))])

    def weights(self) -> List[int]:
        return sorted(w for _, _, w in self.triples)

    def storage(self) -> int:
        """Stored integers: tree parent arrays, triples and region-tree arrays."""
        return sum(len(t.order) for t in self.trees) + 3 * len(self.triples) + 2 * len(self.parent)


def recursive_gmcb(g: PlanarGraph, n0: int = 32, check: bool = False,
                   stats: Optional[Dict[str, int]] = None) -> ImplicitMcb:
    if not g.is_connected():
        raise Disconnected("recursive_gmcb needs a connected graph")
    cfg = Config(n0=n0, check=check, stats=stats if stats is not None else {})
    res = _solve(g, cfg)
    return ImplicitMcb.from_level(g, res)


def explicit_mcb(imcb: ImplicitMcb) -> CycleBasis:
    return imcb.explicit()


def expand_cycle(imcb: ImplicitMcb, k: int) -> Cycle:
    return imcb.expand_cycle(k)
