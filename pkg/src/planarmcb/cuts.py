"""Min cuts through the dual: weight vector, Gomory-Hu tree and a cut oracle.

The greedy basis of the (simplified) dual graph is laminar, so its region
tree is already a Gomory-Hu tree once every region is replaced by the primal
vertex behind its unique face.  The oracle splits that tree into about
sqrt(n) edge-disjoint pieces and answers path-minimum queries with a fixed
number of array reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import Disconnected, SameVertex
from .mcb_recursive import ImplicitMcb, recursive_gmcb
from .planar_core import DualGraph, PlanarGraph, Simplified, dual_graph, simplify_multigraph


def weight_vector(imcb: ImplicitMcb) -> List[int]:
    return sorted(w for _, _, w in imcb.triples)


# ---------------------------------------------------------------- dual basis

@dataclass
class DualBasis:
    """Implicit greedy basis of the simplified dual, with maps back to ``primal``."""

    primal: PlanarGraph
    dual: DualGraph
    simple: Simplified
    imcb: ImplicitMcb

    def cut_edges(self, k: int) -> List[int]:
        """Primal edge ids of the cut given by basis cycle ``k``."""
        c = self.imcb.expand_cycle(k)
        return self.simple.map_edges(c.edges)

    def face_vertex(self, face_id: int) -> int:
        """Primal vertex behind a face of the simplified dual."""
        d = self.simple.graph.faces().faces[face_id].boundary[0]
        orig = 2 * self.simple.origin[d >> 1] + (d & 1)
        return self.primal.head(orig)


def apmc(g: PlanarGraph, n0: int = 32) -> DualBasis:
    """All-pairs min cuts, implicitly, as the greedy basis of the dual."""
    if not g.is_connected():
        raise Disconnected("apmc needs a connected graph")
    dual = dual_graph(g)
    simple = simplify_multigraph(dual.graph)
    return DualBasis(g, dual, simple, recursive_gmcb(simple.graph, n0=n0))


# ---------------------------------------------------------------- Gomory-Hu tree

@dataclass
class GomoryHuTree:
    """Tree on the vertices of ``graph``; edge k is (u, v, weight, basis cycle or None)."""

    graph: PlanarGraph
    edges: List[Tuple[int, int, int, Optional[int]]]
    basis: Optional[DualBasis] = None
    adj: Dict[int, List[Tuple[int, int]]] = field(default_factory=dict)

    def __post_init__(self):
        self.adj = {v: [] for v in self.graph.vertices}
        for k, (u, v, _, _) in enumerate(self.edges):
            self.adj[u].append((v, k))
            self.adj[v].append((u, k))

    @property
    def vertices(self) -> List[int]:
        return list(self.graph.vertices)

    def weight(self, k: int) -> int:
        return self.edges[k][2]

    def cut_edges(self, k: int) -> List[int]:
        """Primal edges of the minimum cut that tree edge ``k`` stands for."""
        u, v, _, link = self.edges[k]
        if link is None:
            return [self.graph.dart_between(u, v) >> 1]
        return self.basis.cut_edges(link)

    def path_edges(self, s: int, t: int) -> List[int]:
        prev: Dict[int, Tuple[int, int]] = {s: (s, -1)}
        stack = [s]
        while stack:
            x = stack.pop()
            if x == t:
                break
            for y, k in self.adj[x]:
                if y not in prev:
                    prev[y] = (x, k)
                    stack.append(y)
        out = []
        while t != s:
            t, k = prev[t]
            out.append(k)
        return out

    def path_min(self, s: int, t: int) -> int:
        """Naive scan: smallest edge weight on the tree path."""
        if s == t:
            raise SameVertex("path_min needs two distinct vertices")
        return min(self.edges[k][2] for k in self.path_edges(s, t))

    def side_of_edge(self, k: int) -> set:
        """Vertices on the ``v`` side after removing edge k = (u, v, ...)."""
        u, v, _, _ = self.edges[k]
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y, kk in self.adj[x]:
                if kk != k and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen


def _tree_is_own_gh(g: PlanarGraph) -> GomoryHuTree:
    return GomoryHuTree(g, [(u, v, w, None) for _, (u, v, w) in sorted(g.edges.items())])


def gomory_hu(g: PlanarGraph, n0: int = 32) -> GomoryHuTree:
    """Gomory-Hu tree read off the dual basis region tree."""
    if not g.is_connected():
        raise Disconnected("gomory_hu needs a connected graph")
    if g.m == g.n - 1:
        return _tree_is_own_gh(g)
    basis = apmc(g, n0=n0)
    im = basis.imcb
    # one step per region-tree node: its unique face names a primal vertex
    vertex = [basis.face_vertex(f) for f in im.face]
    edges = []
    for node in range(1, len(im.parent)):
        k = node - 1
        edges.append((vertex[node], vertex[im.parent[node]], im.triples[k][2], k))
    return GomoryHuTree(g, edges, basis)


def induced_cut_weight(g: PlanarGraph, side: set) -> int:
    return sum(w for u, v, w in g.edges.values() if (u in side) != (v in side))


# ---------------------------------------------------------------- oracle

class ReadCounter:
    """Counts array reads made while answering one query."""

    def __init__(self):
        self.reads = 0
        self.max_reads = 0

    def start(self) -> None:
        self.reads = 0

    def read(self, value):
        self.reads += 1
        return value

    def stop(self) -> None:
        self.max_reads = max(self.max_reads, self.reads)


def _split_vertex(vertices: List[int], adj: Dict[int, List[Tuple[int, int]]], edge_set: set):
    """Smallest-id vertex splitting the subtree into two parts of m/4..3m/4 vertices."""
    m = len(vertices)
    if m < 3:
        return None
    root = vertices[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y, k in adj[x]:
            if k in edge_set and y not in parent:
                parent[y] = x
                order.append(y)
    size = {x: 1 for x in order}
    for x in reversed(order):
        if parent[x] is not None:
            size[parent[x]] += size[x]
    lo, hi = m / 4, 3 * m / 4
    for v in sorted(vertices):
        branches = []
        for y, k in adj[v]:
            if k not in edge_set:
                continue
            s = size[y] if parent.get(y) == v else m - size[v]
            branches.append((s, y, k))
        if len(branches) < 2:
            continue
        branches.sort(key=lambda b: (-b[0], b[1]))
        group, total = [], 0
        for b in branches:
            if total + 1 >= lo:
                break
            group.append(b)
            total += b[0]
        if len(group) == len(branches):
            group.pop()
            total -= branches[-1][0]
        a_size, b_size = total + 1, m - total
        if group and lo <= a_size <= hi and lo <= b_size <= hi:
            return v, [b[2] for b in group]
    return None


class MinCutOracle:
    """Constant-read min-cut queries on a Gomory-Hu tree."""

    def __init__(self, gh: GomoryHuTree):
        self.gh = gh
        self.counter = ReadCounter()
        vs = gh.vertices
        n = len(vs)
        self.n = n
        self.weights = [e[2] for e in gh.edges]
        self.levels = int(math.floor(math.log2(math.sqrt(n)))) if n > 1 else 0
        pieces = [(list(vs), set(range(len(gh.edges))))]
        for _ in range(self.levels):
            nxt = []
            for verts, eset in pieces:
                sp = _split_vertex(verts, gh.adj, eset)
                if sp is None:
                    nxt.append((verts, eset))
                    continue
                v, group_edges = sp
                part_a = self._grow(v, group_edges, eset)
                rest = eset - part_a[1]
                part_b = self._grow(v, [k for y, k in gh.adj[v] if k in rest], rest)
                nxt.append((sorted(part_a[0]), part_a[1]))
                nxt.append((sorted(part_b[0]), part_b[1]))
            pieces = nxt
        self.pieces = [(sorted(v), e) for v, e in pieces]
        count: Dict[int, int] = {}
        for verts, _ in self.pieces:
            for x in verts:
                count[x] = count.get(x, 0) + 1
        self.is_boundary = {x: count[x] > 1 for x in vs}
        self.boundary = sorted(x for x in vs if self.is_boundary[x])
        self.piece_of: Dict[int, int] = {}
        for i, (verts, _) in enumerate(self.pieces):
            for x in verts:
                if not self.is_boundary[x]:
                    self.piece_of[x] = i
        # boundary vertex -> (vertex -> argmin edge on the tree path)
        self.from_boundary: Dict[int, Dict[int, int]] = {
            b: self._path_min_edges(b, None) for b in self.boundary
        }
        # per piece: exit boundary vertex toward every other piece
        exits = [self._exits(i) for i in range(len(self.pieces))]
        self.exit: Dict[int, List[Optional[int]]] = {}
        self.within: Dict[int, Dict[int, int]] = {}
        for x, i in self.piece_of.items():
            self.exit[x] = exits[i]
            self.within[x] = self._path_min_edges(x, self.pieces[i][1])

    def _grow(self, v: int, first_edges: List[int], eset: set):
        verts = {v}
        edges = set()
        stack = []
        for k in first_edges:
            a, b, _, _ = self.gh.edges[k]
            y = b if a == v else a
            edges.add(k)
            verts.add(y)
            stack.append(y)
        while stack:
            x = stack.pop()
            for y, k in self.gh.adj[x]:
                if k in eset and k not in edges:
                    edges.add(k)
                    if y not in verts:
                        verts.add(y)
                        stack.append(y)
        return verts, edges

    def _path_min_edges(self, src: int, eset: Optional[set]) -> Dict[int, int]:
        out: Dict[int, int] = {}
        stack = [(src, -1)]
        seen = {src}
        w = self.weights
        while stack:
            x, best = stack.pop()
            for y, k in self.gh.adj[x]:
                if y in seen or (eset is not None and k not in eset):
                    continue
                seen.add(y)
                nb = k if best < 0 or w[k] < w[best] else best
                out[y] = nb
                stack.append((y, nb))
        return out

    def _exits(self, i: int) -> List[Optional[int]]:
        verts, eset = self.pieces[i]
        label: Dict[int, int] = {}
        stack = []
        for b in verts:
            if self.is_boundary[b]:
                label[b] = b
                stack.append(b)
        while stack:
            x = stack.pop()
            for y, k in self.gh.adj[x]:
                if k in eset or y in label:
                    continue
                label[y] = label[x]
                stack.append(y)
        out: List[Optional[int]] = []
        for j, (vj, _) in enumerate(self.pieces):
            if j == i:
                out.append(None)
                continue
            out.append(label[vj[0]])
        return out

    def storage(self) -> int:
        """Array entries held by the oracle."""
        total = sum(len(a) for a in self.from_boundary.values())
        total += sum(len(a) for a in self.within.values())
        total += sum(len(self.pieces) for _ in self.exit)
        return total

    def _argmin(self, u: int, v: int) -> int:
        if u == v:
            raise SameVertex("query needs two distinct vertices")
        c = self.counter
        c.start()
        w = self.weights
        if c.read(self.is_boundary[u]):
            k = c.read(self.from_boundary[u][v])
        elif c.read(self.is_boundary[v]):
            k = c.read(self.from_boundary[v][u])
        else:
            su = c.read(self.piece_of[u])
            sv = c.read(self.piece_of[v])
            if su == sv:
                k = c.read(self.within[u][v])
            else:
                b = c.read(self.exit[u][sv])
                e1 = c.read(self.within[u][b])
                e2 = c.read(self.from_boundary[b][v])
                k = e1 if c.read(w[e1]) <= c.read(w[e2]) else e2
        c.stop()
        return k

    def query_weight(self, u: int, v: int) -> int:
        return self.weights[self._argmin(u, v)]

    def query_cut(self, u: int, v: int) -> List[int]:
        return self.gh.cut_edges(self._argmin(u, v))


def build_mincut_oracle(t: GomoryHuTree) -> MinCutOracle:
    return MinCutOracle(t)


def query_weight(o: MinCutOracle, u: int, v: int) -> int:
    return o.query_weight(u, v)


def query_cut(o: MinCutOracle, u: int, v: int) -> List[int]:
    return o.query_cut(u, v)


# ---------------------------------------------------------------- reference

def maxflow_reference(g: PlanarGraph, s: int, t: int) -> int:
    """Exact s-t min cut weight by Edmonds-Karp on integer capacities."""
    if s == t:
        raise SameVertex("maxflow needs two distinct vertices")
    index = {v: i for i, v in enumerate(g.vertices)}
    n = len(index)
    cap: Dict[Tuple[int, int], int] = {}
    for u, v, w in g.edges.values():
        a, b = index[u], index[v]
        cap[(a, b)] = cap.get((a, b), 0) + w
        cap[(b, a)] = cap.get((b, a), 0) + w
    if not cap:
        return 0
    rows, cols = zip(*cap.keys())
    data = np.array(list(cap.values()), dtype=np.int64)
    mat = csr_matrix((data, (rows, cols)), shape=(n, n))
    return int(maximum_flow(mat, index[s], index[t], method="edmonds_karp").flow_value)


def cut_separates(g: PlanarGraph, cut: Sequence[int], s: int, t: int) -> bool:
    """Does removing the edges in ``cut`` disconnect ``s`` from ``t``?"""
    gone = set(cut)
    adj: Dict[int, List[int]] = {v: [] for v in g.vertices}
    for e, (u, v, _) in g.edges.items():
        if e not in gone:
            adj[u].append(v)
            adj[v].append(u)
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return t not in seen
