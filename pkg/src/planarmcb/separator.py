"""Balanced cycle separators from BFS fundamental cycles.

Every face that is not a triangle gets a new star vertex inside it, which
makes the graph triangulated.  A non-tree edge of a BFS tree closes a cycle;
the number of original vertices on each side of every such cycle is read off
dual-subtree sums in O(log n), and the shortest balanced cycle wins.

The separator curve follows the cycle: through star vertices it stays inside
the starred face, and along an original edge it is pushed just off the edge
into the exterior, so that edge belongs to the interior part.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .errors import Disconnected, SeparatorTooLarge, TooSmall
from .planar_core import PlanarGraph

INTERIOR, EXTERIOR, ON_CURVE = 1, 2, 0


class SeparatorNotFound(TooSmall):
    """No balanced fundamental cycle; treat as a base case."""


@dataclass
class Triangulated:
    graph: PlanarGraph
    real: Set[int]
    # star vertex -> face id of the original graph
    star_face: Dict[int, int]
    # spoke edge id -> corner dart of the original graph it sits in
    spoke_corner: Dict[int, int]
    # face of the triangulation -> face of the original graph
    orig_face: Dict[int, int]


def triangulate(g: PlanarGraph) -> Triangulated:
    fm = g.faces()
    next_v = max(g.vertices) + 1
    next_e = max(g.edges) + 1 if g.edges else 0
    edges = dict(g.edges)
    spoke_of_corner: Dict[int, int] = {}
    rotation: Dict[int, List[int]] = {}
    star_face: Dict[int, int] = {}
    spoke_corner: Dict[int, int] = {}
    for f in fm.faces:
        b = f.boundary
        if len(b) == 3 and len({g.tail(d) for d in b}) == 3:
            continue
        star = next_v
        next_v += 1
        star_face[star] = f.id
        rot = []
        for d in b:
            x = g.tail(d)
            s = next_e
            next_e += 1
            edges[s] = (star, x, 0)
            rot.append(2 * s)
            spoke_of_corner[d] = 2 * s + 1
            spoke_corner[s] = d
        rotation[star] = rot
    for v in g.vertices:
        r = []
        for c in g.rotation[v]:
            r.append(c)
            sp = spoke_of_corner.get(c)
            if sp is not None:
                r.append(sp)
        rotation[v] = r
    tri = PlanarGraph(list(g.vertices) + list(star_face), edges, rotation, validate=False)
    tfm = tri.faces()
    orig_face = {}
    for f in tfm.faces:
        star = next((tri.tail(d) for d in f.boundary if tri.tail(d) in star_face), None)
        if star is not None:
            orig_face[f.id] = star_face[star]
        else:
            orig_face[f.id] = fm.face_of[f.boundary[0]]
    return Triangulated(tri, set(g.vertices), star_face, spoke_corner, orig_face)


@dataclass
class SeparatorResult:
    boundary: List[int]                 # V_J, clockwise (interior on the right)
    piece_face: List[int]               # face of the graph holding piece i -> i+1
    corner_in: List[int]                # corner dart at v_i where the curve arrives
    corner_out: List[int]               # corner dart at v_i where the curve leaves
    piece_edge: List[Optional[int]]     # graph edge followed by piece i, if any
    vertex_side: Dict[int, int] = field(default_factory=dict)
    edge_side: Dict[int, int] = field(default_factory=dict)
    face_side: Dict[int, int] = field(default_factory=dict)
    cycle_length: int = 0

    @property
    def r(self) -> int:
        return len(self.boundary)

    def interior_count(self) -> int:
        return sum(1 for s in self.vertex_side.values() if s == INTERIOR)

    def exterior_count(self) -> int:
        return sum(1 for s in self.vertex_side.values() if s == EXTERIOR)


def _bfs(tri: PlanarGraph, root: int):
    parent = {root: None}
    pedge = {root: None}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for d in tri.rotation[x]:
            y = tri.head(d)
            if y not in depth:
                depth[y] = depth[x] + 1
                parent[y] = x
                pedge[y] = d >> 1
                order.append(y)
                queue.append(y)
    return parent, pedge, depth, order


def _pick_roots(tri: PlanarGraph, real: Set[int]) -> List[int]:
    first = min(real)
    _, _, depth, order = _bfs(tri, first)
    a = max((v for v in order if v in real), key=lambda v: (depth[v], -v))
    parent, _, depth, order = _bfs(tri, a)
    b = max((v for v in order if v in real), key=lambda v: (depth[v], -v))
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    mid = path[len(path) // 2]
    if mid not in real:
        mid = path[len(path) // 2 + 1]
    roots = [mid, first, a]
    out = []
    for r in roots:
        if r not in out:
            out.append(r)
    return out


class _Lift:
    """Binary lifting over a BFS parent map."""

    def __init__(self, parent, depth, order):
        self.depth = depth
        self.up = [dict((v, parent[v] if parent[v] is not None else v) for v in order)]
        k = 1
        n = len(order)
        while (1 << k) < n:
            prev = self.up[-1]
            self.up.append({v: prev[prev[v]] for v in order})
            k += 1

    def lca(self, a, b):
        da, db = self.depth[a], self.depth[b]
        if da < db:
            a, b, da, db = b, a, db, da
        diff = da - db
        i = 0
        while diff:
            if diff & 1:
                a = self.up[i][a]
            diff >>= 1
            i += 1
        if a == b:
            return a
        for i in range(len(self.up) - 1, -1, -1):
            ua, ub = self.up[i][a], self.up[i][b]
            if ua != ub:
                a, b = ua, ub
        return self.up[0][a]


def _evaluate_root(tri: Triangulated, root: int, outer_tri_face: int, n_real: int):
    """Best (score, edge) for fundamental cycles of a BFS tree from ``root``."""
    t = tri.graph
    real = tri.real
    parent, pedge, depth, order = _bfs(t, root)
    tree_edges = {e for e in pedge.values() if e is not None}
    tfm = t.faces()
    # dual tree on non-tree edges, rooted at a face inside the original outer face
    dparent: Dict[int, Optional[int]] = {outer_tri_face: None}
    dorder = [outer_tri_face]
    stack = [outer_tri_face]
    while stack:
        f = stack.pop()
        for d in tfm.faces[f].boundary:
            if (d >> 1) in tree_edges:
                continue
            nf = tfm.face_of[d ^ 1]
            if nf not in dparent:
                dparent[nf] = f
                dorder.append(nf)
                stack.append(nf)
    # face assigned to each vertex: corner just after its parent dart
    assigned: Dict[int, int] = {}
    for v in order:
        if pedge[v] is None:
            d0 = t.rotation[v][0]
        else:
            e = pedge[v]
            d0 = 2 * e if t.tail(2 * e) == v else 2 * e + 1
        assigned[v] = tfm.face_of[d0]
    weight = {f: 0 for f in dorder}
    for v, f in assigned.items():
        if v in real:
            weight[f] += 1
    sub = dict(weight)
    for f in reversed(dorder):
        p = dparent[f]
        if p is not None:
            sub[p] += sub[f]
    tin: Dict[int, int] = {}
    tout: Dict[int, int] = {}
    children: Dict[int, List[int]] = {f: [] for f in dorder}
    for f in dorder:
        if dparent[f] is not None:
            children[dparent[f]].append(f)
    clock = 0
    st = [(outer_tri_face, 0)]
    while st:
        f, i = st.pop()
        if i == 0:
            tin[f] = clock
            clock += 1
        if i < len(children[f]):
            st.append((f, i + 1))
            st.append((children[f][i], 0))
        else:
            tout[f] = clock
            clock += 1
    # number of real vertices strictly between v and the root on the tree path
    real_above: Dict[int, int] = {}
    for v in order:
        p = parent[v]
        real_above[v] = 0 if p is None else real_above[p] + (1 if p in real else 0)
    lift = _Lift(parent, depth, order)
    limit = 2 * n_real / 3
    best = None
    for e, (a, b, _) in t.edges.items():
        if e in tree_edges:
            continue
        f1, f2 = tfm.face_of[2 * e], tfm.face_of[2 * e + 1]
        inner = f1 if dparent.get(f1) == f2 else f2

        def inside(f, inner=inner):
            return tin[inner] <= tin[f] and tout[f] <= tout[inner]

        q = lift.lca(a, b)
        # real vertices on the cycle
        between_a = real_above[a] - real_above[q] - (1 if q in real and q != a else 0)
        between_b = real_above[b] - real_above[q] - (1 if q in real and q != b else 0)
        if q == a:
            between_a = 0
        if q == b:
            between_b = 0
        ends = {a, b, q}
        on_cycle = between_a + between_b + sum(1 for x in ends if x in real)
        # dart b -> a closes the cycle a..q..b -> a; interior on its left?
        dart_ba = 2 * e + 1 if t.tail(2 * e) == a else 2 * e
        left_inside = inside(tfm.face_of[dart_ba])
        corr = between_a if left_inside else between_b
        corr += sum(1 for x in ends if x in real and inside(assigned[x]))
        n_in = sub[inner] - corr
        n_out = n_real - n_in - on_cycle
        if n_in > limit or n_out > limit:
            continue
        empty_side = n_in == 0 or n_out == 0
        score = (empty_side, on_cycle, e)
        if best is None or score < best[0]:
            best = (score, e, parent, pedge, q, inner, n_in, n_out)
    return best


def cycle_separator(
    g: PlanarGraph,
    n0: int = 32,
    ceiling: Optional[float] = None,
) -> SeparatorResult:
    if not g.is_connected():
        raise Disconnected("cycle_separator needs a connected graph")
    if g.n < max(n0, 3):
        raise TooSmall(f"n={g.n} below base-case threshold {n0}")
    tri = triangulate(g)
    t = tri.graph
    tfm = t.faces()
    fm = g.faces()
    ext_face = g.external_face()
    outer_tri_face = next(f for f, of in tri.orig_face.items() if of == ext_face)
    best = None
    for root in _pick_roots(t, tri.real):
        cand = _evaluate_root(tri, root, outer_tri_face, g.n)
        if cand is not None and (best is None or cand[0] < best[0]):
            best = cand
        if best is not None and not best[0][0]:
            break
    if best is None:
        raise SeparatorNotFound("no balanced fundamental cycle")
    (_, on_cycle, _), e, parent, pedge, q, inner, n_in, n_out = best
    ceiling = 8 * math.sqrt(g.n) if ceiling is None else ceiling
    if on_cycle > ceiling:
        raise SeparatorTooLarge(f"{on_cycle} boundary vertices > {ceiling:.1f}")
    res = _build_result(g, tri, e, parent, pedge, q, inner)
    assert (res.interior_count(), res.exterior_count()) == (n_in, n_out)
    return res


def _build_result(g, tri, e, parent, pedge, q, inner_face) -> SeparatorResult:
    t = tri.graph
    tfm = t.faces()
    fm = g.faces()
    a, b, _ = t.edges[e]
    # vertex cycle a -> ... -> q -> ... -> b -> a with the dart used to leave each vertex
    up_a = [a]
    while up_a[-1] != q:
        up_a.append(parent[up_a[-1]])
    up_b = [b]
    while up_b[-1] != q:
        up_b.append(parent[up_b[-1]])
    cyc = up_a + list(reversed(up_b[:-1]))
    darts = []
    for i in range(len(cyc)):
        x = cyc[i]
        if i < len(up_a) - 1:
            pe = pedge[x]
            darts.append(2 * pe if t.tail(2 * pe) == x else 2 * pe + 1)
        elif i < len(cyc) - 1:
            child = cyc[i + 1]
            pe = pedge[child]
            darts.append(2 * pe if t.tail(2 * pe) == x else 2 * pe + 1)
        else:
            darts.append(2 * e if t.tail(2 * e) == x else 2 * e + 1)
    # faces strictly inside the cycle
    cyc_edges = {d >> 1 for d in darts}
    inside_faces = {inner_face}
    queue = deque([inner_face])
    while queue:
        f = queue.popleft()
        for d in tfm.faces[f].boundary:
            if (d >> 1) in cyc_edges:
                continue
            nf = tfm.face_of[d ^ 1]
            if nf not in inside_faces:
                inside_faces.add(nf)
                queue.append(nf)
    # clockwise means the interior is on the right, i.e. left faces are outside
    if tfm.face_of[darts[0]] in inside_faces:
        cyc = [cyc[0]] + list(reversed(cyc[1:]))
        darts = [d ^ 1 for d in reversed(darts)]
    # collapse star vertices into curve pieces between consecutive real vertices
    real = tri.real
    start = next(i for i, x in enumerate(cyc) if x in real)
    cyc = cyc[start:] + cyc[:start]
    darts = darts[start:] + darts[:start]
    boundary: List[int] = []
    piece_face: List[int] = []
    piece_edge: List[Optional[int]] = []
    corner_out: List[int] = []
    corner_arrive: List[int] = []
    i = 0
    k = len(cyc)
    while i < k:
        x = cyc[i]
        d = darts[i]
        boundary.append(x)
        if t.head(d) in real:
            # an original edge: the curve hugs it on the exterior (left) side
            piece_edge.append(d >> 1)
            piece_face.append(fm.face_of[d])
            corner_out.append(d)
            corner_arrive.append(g.face_next(d))
            i += 1
        else:
            star = t.head(d)
            piece_edge.append(None)
            piece_face.append(tri.star_face[star])
            corner_out.append(tri.spoke_corner[d >> 1])
            d2 = darts[(i + 1) % k]
            corner_arrive.append(tri.spoke_corner[d2 >> 1])
            i += 2
    r = len(boundary)
    corner_in = [corner_arrive[(j - 1) % r] for j in range(r)]
    res = SeparatorResult(boundary, piece_face, corner_in, corner_out, piece_edge)
    res.cycle_length = len(cyc)
    on_j = set(boundary)
    inside_vertices = set()
    for f in inside_faces:
        for d in tfm.faces[f].boundary:
            x = t.tail(d)
            if x in real and x not in on_j:
                inside_vertices.add(x)
    for v in g.vertices:
        res.vertex_side[v] = (
            ON_CURVE if v in on_j else INTERIOR if v in inside_vertices else EXTERIOR
        )
    followed = {pe for pe in piece_edge if pe is not None}
    for ge in g.edges:
        if ge in followed or tfm.face_of[2 * ge] in inside_faces:
            res.edge_side[ge] = INTERIOR
        else:
            res.edge_side[ge] = EXTERIOR
    crossed = set(piece_face)
    for f in fm.faces:
        if f.id in crossed:
            res.face_side[f.id] = ON_CURVE
    for tf, of in tri.orig_face.items():
        if of in res.face_side:
            continue
        res.face_side[of] = INTERIOR if tf in inside_faces else EXTERIOR
    return res


def split_graph(g: PlanarGraph, sep: SeparatorResult) -> Tuple[PlanarGraph, PlanarGraph]:
    """(interior part, exterior part); both contain every boundary vertex."""
    on_j = set(sep.boundary)
    v1 = [v for v, s in sep.vertex_side.items() if s == INTERIOR] + list(on_j)
    v2 = [v for v, s in sep.vertex_side.items() if s == EXTERIOR] + list(on_j)
    e1 = [e for e, s in sep.edge_side.items() if s == INTERIOR]
    e2 = [e for e, s in sep.edge_side.items() if s == EXTERIOR]
    return g.subgraph(v1, e1), g.subgraph(v2, e2)
