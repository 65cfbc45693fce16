"""Explicit minimum cycle bases for small graphs.

Two independent routes:

* ``greedy_mcb_explicit`` scans Horton candidates in ``Cycle.key`` order and
  keeps a cycle when it splits some current region into two parts that both
  contain a face of the graph.
* ``gf2_extract`` runs greedy Gaussian elimination over GF(2) on the same
  sorted candidates, with edge sets stored as Python integers.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import Disconnected, InsufficientRank
from .lexsp import LexSPT, lex_sp_tree
from .planar_core import PlanarGraph


@dataclass(frozen=True)
class Cycle:
    edges: Tuple[int, ...]
    weight: int
    root: Optional[int] = None
    edge: Optional[int] = None
    vertices: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    def key(self) -> Tuple[int, int, Tuple[int, ...], Tuple[int, ...]]:
        """Total order: weight, length, sorted vertex ids, sorted edge ids.

        For equal lengths, comparing sorted vertex tuples favours the cycle
        holding the smallest vertex not on the other one, which is the same
        preference the lex shortest-path trees use.
        """
        return (self.weight, len(self.edges), self.vertices, self.edges)


@dataclass
class CycleBasis:
    cycles: List[Cycle] = field(default_factory=list)

    @property
    def total_weight(self) -> int:
        return sum(c.weight for c in self.cycles)

    @property
    def total_length(self) -> int:
        return sum(c.length for c in self.cycles)

    def weights(self) -> List[int]:
        return sorted(c.weight for c in self.cycles)

    def edge_sets(self) -> List[Tuple[int, ...]]:
        return sorted(c.edges for c in self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)


def horton_cycle(g: PlanarGraph, t: LexSPT, e: int) -> Optional[Cycle]:
    """C(root, e) if the two tree paths meet only at the root, else None."""
    a, b, w = g.edges[e]
    if t.parent_edge.get(a) == e or t.parent_edge.get(b) == e or a == b:
        return None
    if t.lca(a, b) != t.source:
        return None
    edges = t.path_edges(a) + t.path_edges(b)
    edges.append(e)
    return Cycle(tuple(sorted(edges)), t.dist[a].w + t.dist[b].w + w, t.source, e,
                 tree_cycle_vertices(t, a, b))


def tree_cycle_vertices(t: LexSPT, a: int, b: int) -> Tuple[int, ...]:
    return tuple(sorted(set(t.path_vertices(a)) | set(t.path_vertices(b))))


def horton_cycles(
    g: PlanarGraph,
    roots: Iterable[int],
    trees: Optional[Dict[int, LexSPT]] = None,
) -> List[Cycle]:
    out = []
    for r in roots:
        t = trees[r] if trees is not None and r in trees else lex_sp_tree(g, r)
        if trees is not None:
            trees[r] = t
        tree_edges = {pe for pe in t.parent_edge.values() if pe is not None}
        for e in g.edges:
            if e in tree_edges:
                continue
            c = horton_cycle(g, t, e)
            if c is not None:
                out.append(c)
    return out


def sorted_unique(cycles: Iterable[Cycle]) -> List[Cycle]:
    """Deterministic candidate order, one representative per edge set."""
    out = []
    seen: Set[Tuple[int, ...]] = set()
    for c in sorted(cycles, key=lambda c: (c.key(), c.root)):
        if c.edges not in seen:
            seen.add(c.edges)
            out.append(c)
    return out


def gf2_extract(cycles: Sequence[Cycle], dim: int) -> CycleBasis:
    """Greedy independent prefix of an already sorted candidate list."""
    pivots: Dict[int, int] = {}
    basis = CycleBasis()
    for c in cycles:
        vec = 0
        for e in c.edges:
            vec ^= 1 << e
        while vec:
            low = vec & -vec
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = vec
                basis.cycles.append(c)
                break
            vec ^= piv
        if len(basis) == dim:
            break
    if len(basis) < dim:
        raise InsufficientRank(f"candidates span rank {len(basis)} < {dim}")
    return basis


def cycle_space_dim(g: PlanarGraph) -> int:
    return g.m - g.n + g.c


def interior_faces(g: PlanarGraph, edge_ids: Iterable[int]) -> Set[int]:
    """Face ids enclosed by a simple cycle (external face is never inside)."""
    fm = g.faces()
    wall = set(edge_ids)
    start = g.external_face()
    outside = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for d in fm.faces[f].boundary:
            if (d >> 1) in wall:
                continue
            nf = fm.face_of[d ^ 1]
            if nf not in outside:
                outside.add(nf)
                queue.append(nf)
    return {f.id for f in fm.faces if f.id not in outside}


class ExplicitRegions:
    """Partition of faces into regions by the cycles accepted so far."""

    def __init__(self, g: PlanarGraph):
        self.g = g
        self.nfaces = len(g.faces())
        self.label = [0] * self.nfaces
        self.next_label = 1

    def splits(self, inside: Set[int]) -> bool:
        inside_labels = {self.label[f] for f in inside}
        for f in range(self.nfaces):
            if f not in inside and self.label[f] in inside_labels:
                return True
        return False

    def accept(self, inside: Set[int]) -> None:
        remap: Dict[int, int] = {}
        for f in inside:
            old = self.label[f]
            if old not in remap:
                remap[old] = self.next_label
                self.next_label += 1
            self.label[f] = remap[old]


def greedy_scan(g: PlanarGraph, candidates: Sequence[Cycle], dim: int, with_counts: bool = False):
    """Accepted cycles and their interior face sets, in acceptance order.

    With ``with_counts`` also returns, per cycle, the face counts of the split
    region inside and outside the cycle at acceptance time.
    """
    regions = ExplicitRegions(g)
    accepted: List[Cycle] = []
    interiors: List[Set[int]] = []
    counts: List[Tuple[int, int]] = []
    for c in candidates:
        if len(accepted) == dim:
            break
        inside = interior_faces(g, c.edges)
        if regions.splits(inside):
            if with_counts:
                labels = {regions.label[f] for f in inside}
                outside = {regions.label[f] for f in range(regions.nfaces) if f not in inside}
                split = labels & outside
                lab = next(iter(split))
                n_in = sum(1 for f in inside if regions.label[f] == lab)
                n_all = sum(1 for x in regions.label if x == lab)
                counts.append((n_in, n_all - n_in))
            regions.accept(inside)
            accepted.append(c)
            interiors.append(inside)
    if with_counts:
        return accepted, interiors, counts
    return accepted, interiors


def greedy_mcb_explicit(g: PlanarGraph) -> CycleBasis:
    if not g.is_connected():
        raise Disconnected("greedy_mcb_explicit needs a connected graph")
    dim = cycle_space_dim(g)
    cands = sorted_unique(horton_cycles(g, g.vertices))
    accepted, _ = greedy_scan(g, cands, dim)
    return CycleBasis(accepted)


def oracle_basis(g: PlanarGraph) -> CycleBasis:
    """GF(2) route over all Horton candidates."""
    cands = sorted_unique(horton_cycles(g, g.vertices))
    return gf2_extract(cands, cycle_space_dim(g))


# structural checks

def _dijkstra(g: PlanarGraph, s: int) -> Dict[int, int]:
    dist = {s: 0}
    heap = [(0, s)]
    adj = g.rotation
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for dart in adj[u]:
            a, b, w = g.edges[dart >> 1]
            v = a if dart & 1 else b
            nd = d + w
            if nd < dist.get(v, nd + 1):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def cycle_vertex_order(g: PlanarGraph, edge_ids: Sequence[int]) -> List[Tuple[int, int]]:
    """(vertex, weight of the edge leaving it) walking once around the cycle."""
    adj: Dict[int, List[Tuple[int, int]]] = {}
    for e in edge_ids:
        a, b, w = g.edges[e]
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    start = min(adj)
    out = []
    prev_e = None
    v = start
    while True:
        nxt, e = next((x, ee) for x, ee in adj[v] if ee != prev_e)
        out.append((v, g.edges[e][2]))
        prev_e = e
        v = nxt
        if v == start:
            break
    return out


def is_simple_cycle(g: PlanarGraph, edge_ids: Sequence[int]) -> bool:
    deg: Dict[int, int] = {}
    for e in edge_ids:
        a, b, _ = g.edges[e]
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if not deg or any(x != 2 for x in deg.values()):
        return False
    return len(cycle_vertex_order(g, edge_ids)) == len(deg)


def check_isometric(g: PlanarGraph, c: Cycle) -> bool:
    order = cycle_vertex_order(g, c.edges)
    k = len(order)
    prefix = [0]
    for _, w in order:
        prefix.append(prefix[-1] + w)
    total = prefix[-1]
    for i, (u, _) in enumerate(order):
        dist = _dijkstra(g, u)
        for j in range(i + 1, k):
            along = prefix[j] - prefix[i]
            if min(along, total - along) != dist[order[j][0]]:
                return False
    return True


def check_nested(g: PlanarGraph, basis: CycleBasis) -> bool:
    sets = [interior_faces(g, c.edges) for c in basis.cycles]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            a, b = sets[i], sets[j]
            if a & b and not (a <= b or b <= a):
                return False
    return True
