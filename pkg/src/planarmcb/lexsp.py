"""Lexicographically shortest path trees.

Ties between shortest paths are broken first by edge count, then in favour
of the path whose symmetric difference with the other contains the smaller
vertex id.  Ancestor tables (binary lifting) make each tie decision cost
O(log n).
"""

from __future__ import annotations

import heapq
from typing import Dict, List, NamedTuple, Optional, Tuple

from .errors import Disconnected, NotAncestor, NotFinalized
from .planar_core import PlanarGraph


class LexWeight(NamedTuple):
    w: int
    hops: int

    def __add__(self, other):  # type: ignore[override]
        return LexWeight(self.w + other[0], self.hops + other[1])


class LexSPT:
    """Shortest path tree rooted at ``source`` with lifting tables.

    ``up[v][i]`` is the ancestor 2**i edges above ``v``.  ``low[v][i]`` is the
    smallest id among the 2**i vertices starting at ``v`` and walking upward
    (``v`` included, ``up[v][i]`` excluded).
    """

    def __init__(self, source: int):
        self.source = source
        self.parent: Dict[int, Optional[int]] = {source: None}
        self.parent_edge: Dict[int, Optional[int]] = {source: None}
        self.dist: Dict[int, LexWeight] = {source: LexWeight(0, 0)}
        self.depth: Dict[int, int] = {}
        self.up: Dict[int, List[int]] = {}
        self.low: Dict[int, List[int]] = {}
        self.order: List[int] = []
        self.tin: Dict[int, int] = {}
        self.tout: Dict[int, int] = {}
        self.children: Dict[int, List[int]] = {}

    # construction helpers
    def _finalize(self, v: int) -> None:
        p = self.parent[v]
        self.order.append(v)
        if p is None:
            self.depth[v] = 0
            self.up[v] = []
            self.low[v] = [v]
            return
        self.depth[v] = self.depth[p] + 1
        up = [p]
        low = [v]
        i = 0
        while True:
            # low[i + 1] covers v's first 2**i vertices and the next 2**i from up[i]
            anc = up[i]
            anc_low = self.low[anc]
            if i >= len(anc_low):
                break
            low.append(min(low[i], anc_low[i]))
            anc_up = self.up[anc]
            if i >= len(anc_up):
                break
            up.append(anc_up[i])
            i += 1
        self.up[v] = up
        self.low[v] = low

    def finalized(self, v: int) -> bool:
        return v in self.depth

    def _build_euler(self) -> None:
        for v in self.order:
            self.children[v] = []
        for v in self.order:
            p = self.parent[v]
            if p is not None:
                self.children[p].append(v)
        clock = 0
        stack = [(self.source, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                self.tin[v] = clock
                clock += 1
            kids = self.children[v]
            if i < len(kids):
                stack.append((v, i + 1))
                stack.append((kids[i], 0))
            else:
                self.tout[v] = clock
                clock += 1

    # queries
    def vertices(self) -> List[int]:
        return list(self.order)

    def ancestor(self, v: int, k: int) -> int:
        """Ancestor ``k`` edges above ``v``."""
        i = 0
        while k:
            if k & 1:
                v = self.up[v][i]
            k >>= 1
            i += 1
        return v

    def ancestor_at_depth(self, v: int, d: int) -> int:
        return self.ancestor(v, self.depth[v] - d)

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if ``a`` lies on the tree path from the root to ``b``."""
        return self.tin[a] <= self.tin[b] and self.tout[b] <= self.tout[a]

    def lca(self, a: int, b: int) -> int:
        if self.depth[a] < self.depth[b]:
            a, b = b, a
        a = self.ancestor(a, self.depth[a] - self.depth[b])
        if a == b:
            return a
        for i in range(len(self.up[a]) - 1, -1, -1):
            ua, ub = self.up[a], self.up[b]
            if i < len(ua) and ua[i] != ub[i]:
                a, b = ua[i], ub[i]
        return self.parent[a]

    def path_edges(self, v: int, top: Optional[int] = None) -> List[int]:
        """Edge ids on the tree path from ``v`` up to ``top`` (default: root)."""
        out = []
        while v != top and self.parent[v] is not None:
            out.append(self.parent_edge[v])
            v = self.parent[v]
        return out

    def path_vertices(self, v: int) -> List[int]:
        out = [v]
        while self.parent[v] is not None:
            v = self.parent[v]
            out.append(v)
        return out


def path_min_index(t: LexSPT, a: int, anc: int) -> int:
    """Smallest vertex id on the tree path from ``anc`` down to ``a``."""
    if a not in t.depth or anc not in t.depth:
        raise NotFinalized("vertex not in tree")
    span = t.depth[a] - t.depth[anc]
    if span < 0 or t.ancestor(a, span) != anc:
        raise NotAncestor(f"{anc} is not an ancestor of {a}")
    return _segment_min(t, a, span + 1)


def _segment_min(t: LexSPT, v: int, count: int) -> int:
    best = v
    i = 0
    while count:
        if count & 1:
            best = min(best, t.low[v][i])
            if count > 1:
                v = t.up[v][i]
        count >>= 1
        i += 1
    return best


def lex_compare(t: LexSPT, v: int, p: int, p2: int) -> int:
    """-1 if the path into ``v`` via ``p`` wins, 1 if via ``p2``, 0 if equal."""
    for x in (p, p2):
        if not t.finalized(x):
            raise NotFinalized(f"vertex {x} is not finalized")
    if p == p2:
        return 0
    a, b = p, p2
    if t.depth[a] != t.depth[b]:
        # different hop counts cannot tie; shorter wins
        return -1 if t.depth[a] < t.depth[b] else 1
    q = t.lca(a, b)
    k = t.depth[a] - t.depth[q]
    ma = _segment_min(t, a, k)
    mb = _segment_min(t, b, k)
    return -1 if ma < mb else 1


def lex_sp_tree(g: PlanarGraph, s: int, require_all: bool = True) -> LexSPT:
    """Dijkstra on (weight, hops) with index-based tie breaking."""
    t = LexSPT(s)
    heap: List[Tuple[int, int, int]] = [(0, 0, s)]
    rotation = g.rotation
    edges = g.edges
    dist = t.dist
    parent = t.parent
    pedge = t.parent_edge
    while heap:
        w, h, u = heapq.heappop(heap)
        if u in t.depth:
            continue
        t._finalize(u)
        for d in rotation[u]:
            e = d >> 1
            a, b, we = edges[e]
            v = a if d & 1 else b
            if v in t.depth:
                continue
            cand = (w + we, h + 1)
            cur = dist.get(v)
            if cur is None or cand < cur:
                dist[v] = LexWeight(*cand)
                parent[v] = u
                pedge[v] = e
                heapq.heappush(heap, (cand[0], cand[1], v))
            elif cand == cur and parent[v] != u:
                if lex_compare(t, v, parent[v], u) > 0:
                    parent[v] = u
                    pedge[v] = e
    if require_all and len(t.order) != g.n:
        raise Disconnected(f"source {s} reaches {len(t.order)} of {g.n} vertices")
    t._build_euler()
    return t
