"""Plane embedded graphs: rotation systems, faces, duals and multigraph cleanup.

Darts are integers: edge ``e`` owns darts ``2e`` (u -> v) and ``2e + 1``
(v -> u).  Every vertex keeps its outgoing darts in counterclockwise order.
Faces are traced by leaving each vertex on the dart that precedes the
reversed arrival dart, so a face lies to the left of each of its darts.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import Disconnected, DuplicateVertex, EulerViolation, NegativeWeight

Dart = int
Edge = Tuple[int, int, int]

COORD_SCALE = 10**6


def twin(d: Dart) -> Dart:
    return d ^ 1


def dart_edge(d: Dart) -> int:
    return d >> 1


@dataclass(frozen=True)
class Face:
    id: int
    boundary: Tuple[Dart, ...]
    is_external: bool
    key: int  # smallest dart on the boundary, stable across subgraphs


class FaceMap:
    """Faces of a plane graph plus the dart -> face lookup."""

    def __init__(self, faces: List[Face], face_of: Dict[Dart, int]):
        self.faces = faces
        self.face_of = face_of
        self.by_key = {f.key: f.id for f in faces}

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def left(self, d: Dart) -> int:
        return self.face_of[d]

    def right(self, d: Dart) -> int:
        return self.face_of[d ^ 1]

    def external_ids(self) -> List[int]:
        return [f.id for f in self.faces if f.is_external]


class PlanarGraph:
    """Undirected plane graph with global vertex ids and global edge ids.

    ``external`` maps the smallest vertex of each component that has edges to
    a dart whose left face is that component's external face.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Dict[int, Edge],
        rotation: Dict[int, List[Dart]],
        coords: Optional[Dict[int, Tuple[float, float]]] = None,
        external: Optional[Dict[int, Dart]] = None,
        validate: bool = True,
    ):
        self.vertices = sorted(vertices)
        self.edges = edges
        self.rotation = rotation
        self.coords = coords
        self._pos: Dict[Dart, int] = {}
        for v in self.vertices:
            for i, d in enumerate(rotation.setdefault(v, [])):
                self._pos[d] = i
        self._faces: Optional[FaceMap] = None
        self._components: Optional[List[List[int]]] = None
        self._comp_of: Optional[Dict[int, int]] = None
        self.external = dict(external) if external else {}
        if not self.external:
            self._guess_external()
        if validate:
            self.check_euler()

    # basic accessors
    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def c(self) -> int:
        return len(self.components())

    def tail(self, d: Dart) -> int:
        u, v, _ = self.edges[d >> 1]
        return v if d & 1 else u

    def head(self, d: Dart) -> int:
        u, v, _ = self.edges[d >> 1]
        return u if d & 1 else v

    def weight(self, e: int) -> int:
        return self.edges[e][2]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> List[int]:
        return [self.head(d) for d in self.rotation[v]]

    def rot_next(self, d: Dart) -> Dart:
        """Next dart counterclockwise around the tail of ``d``."""
        r = self.rotation[self.tail(d)]
        return r[(self._pos[d] + 1) % len(r)]

    def rot_prev(self, d: Dart) -> Dart:
        r = self.rotation[self.tail(d)]
        return r[(self._pos[d] - 1) % len(r)]

    def rot_pos(self, d: Dart) -> int:
        return self._pos[d]

    def face_next(self, d: Dart) -> Dart:
        """Successor of ``d`` on the boundary walk of the face left of ``d``."""
        return self.rot_prev(d ^ 1)

    def dart_between(self, u: int, v: int) -> Dart:
        for d in self.rotation[u]:
            if self.head(d) == v:
                return d
        raise KeyError((u, v))

    def adjacency(self) -> Dict[int, List[Tuple[int, int, int]]]:
        """Vertex -> list of (neighbor, weight, edge id)."""
        adj: Dict[int, List[Tuple[int, int, int]]] = {v: [] for v in self.vertices}
        for e, (u, v, w) in self.edges.items():
            adj[u].append((v, w, e))
            adj[v].append((u, w, e))
        return adj

    # components
    def components(self) -> List[List[int]]:
        if self._components is None:
            seen: Dict[int, int] = {}
            comps: List[List[int]] = []
            for s in self.vertices:
                if s in seen:
                    continue
                idx = len(comps)
                seen[s] = idx
                comp = [s]
                queue = deque([s])
                while queue:
                    x = queue.popleft()
                    for d in self.rotation[x]:
                        y = self.head(d)
                        if y not in seen:
                            seen[y] = idx
                            comp.append(y)
                            queue.append(y)
                comp.sort()
                comps.append(comp)
            self._components = comps
            self._comp_of = seen
        return self._components

    def component_of(self, v: int) -> int:
        self.components()
        return self._comp_of[v]

    def is_connected(self) -> bool:
        return self.c <= 1

    # faces
    def faces(self) -> FaceMap:
        if self._faces is None:
            self._faces = self._trace()
        return self._faces

    def _trace(self) -> FaceMap:
        face_of: Dict[Dart, int] = {}
        walks: List[List[Dart]] = []
        for v in self.vertices:
            for d0 in self.rotation[v]:
                if d0 in face_of:
                    continue
                fid = len(walks)
                walk = []
                d = d0
                while d not in face_of:
                    face_of[d] = fid
                    walk.append(d)
                    d = self.face_next(d)
                if d != d0:
                    raise EulerViolation("inconsistent rotation system")
                walks.append(walk)
        ext_darts = set(self.external.values())
        ext_faces = {face_of[d] for d in ext_darts if d in face_of}
        faces = [
            Face(i, tuple(w), i in ext_faces, min(w)) for i, w in enumerate(walks)
        ]
        return FaceMap(faces, face_of)

    def _guess_external(self) -> None:
        """Pick each component's external face as its most negative signed area."""
        if self.coords is None:
            return
        walks_by_comp: Dict[int, Tuple[float, Dart]] = {}
        seen = set()
        for v in self.vertices:
            for d0 in self.rotation[v]:
                if d0 in seen:
                    continue
                area = 0.0
                d = d0
                while True:
                    seen.add(d)
                    x1, y1 = self.coords[self.tail(d)]
                    x2, y2 = self.coords[self.head(d)]
                    area += x1 * y2 - x2 * y1
                    d = self.face_next(d)
                    if d == d0 or d in seen:
                        break
                comp = self.components()[self.component_of(v)][0]
                best = walks_by_comp.get(comp)
                if best is None or area < best[0]:
                    walks_by_comp[comp] = (area, d0)
        self.external = {c: d for c, (_, d) in walks_by_comp.items()}

    def external_face(self, v: Optional[int] = None) -> int:
        """Face id of the external face of the component holding ``v``."""
        if v is None:
            v = self.vertices[0]
        root = self.components()[self.component_of(v)][0]
        return self.faces().face_of[self.external[root]]

    def check_euler(self) -> None:
        fm = self.faces()
        comp_edges = [0] * self.c
        comp_faces = [0] * self.c
        for e, (u, v, _) in self.edges.items():
            comp_edges[self.component_of(u)] += 1
        for f in fm.faces:
            comp_faces[self.component_of(self.tail(f.boundary[0]))] += 1
        for i, comp in enumerate(self.components()):
            faces = comp_faces[i] if comp_edges[i] else 1
            if len(comp) - comp_edges[i] + faces != 2:
                raise EulerViolation(
                    f"component starting at {comp[0]}: "
                    f"{len(comp)} - {comp_edges[i]} + {faces} != 2"
                )
            if comp_edges[i]:
                ext = self.external.get(comp[0])
                if ext is None or ext not in fm.face_of:
                    raise EulerViolation(f"component {comp[0]} has no external face")

    # derived graphs
    def subgraph(self, vertices: Iterable[int], edge_ids: Iterable[int]) -> "PlanarGraph":
        """Induced embedding on the given vertices and edges, external faces kept."""
        eids = set(edge_ids)
        verts = set(vertices)
        edges = {e: self.edges[e] for e in eids}
        rotation = {
            v: [d for d in self.rotation[v] if (d >> 1) in eids] for v in verts
        }
        coords = {v: self.coords[v] for v in verts} if self.coords is not None else None
        sub = PlanarGraph(verts, edges, rotation, coords, external={"_": 0}, validate=False)
        sub.external = {}
        outer = self.external_face(self.vertices[0]) if self.edges else None
        for comp in sub.components():
            if len(comp) == 1 and not sub.rotation[comp[0]]:
                continue
            sub.external[comp[0]] = locate_face(self, sub, outer, comp[0])
        sub._faces = None
        return sub

    def copy_with_weights(self, weights: Dict[int, int]) -> "PlanarGraph":
        edges = {e: (u, v, weights.get(e, w)) for e, (u, v, w) in self.edges.items()}
        return PlanarGraph(
            self.vertices, edges, {v: list(r) for v, r in self.rotation.items()},
            self.coords, self.external, validate=False,
        )

    def __repr__(self) -> str:
        return f"PlanarGraph(n={self.n}, m={self.m}, c={self.c})"


def locate_face(g: PlanarGraph, sub: PlanarGraph, g_face: Optional[int], comp_root: int) -> Dart:
    """Dart of ``sub`` whose left face (in ``sub``) contains face ``g_face`` of ``g``.

    Only faces of the component of ``comp_root`` are considered; the search
    walks across edges of ``g`` that are not in that component.
    """
    comp_idx = sub.component_of(comp_root)
    comp_vertices = set(sub.components()[comp_idx])
    in_comp = {e for e in sub.edges if sub.edges[e][0] in comp_vertices}
    fm = g.faces()
    seen = {g_face}
    queue = deque([g_face])
    while queue:
        f = queue.popleft()
        for d in fm.faces[f].boundary:
            if (d >> 1) in in_comp:
                return d
            nf = fm.face_of[d ^ 1]
            if nf not in seen:
                seen.add(nf)
                queue.append(nf)
    raise EulerViolation("component not reachable from the given face")


# construction from coordinates

def _scaled(p) -> Tuple[int, int]:
    return (round(float(p[0]) * COORD_SCALE), round(float(p[1]) * COORD_SCALE))


def build_embedding(
    points: Sequence[Tuple[float, float]],
    weighted_edges: Sequence[Tuple[int, int, int]],
    validate: bool = True,
) -> PlanarGraph:
    """Straight-line plane graph on vertices ``1..len(points)``.

    Edge ids follow the order of ``weighted_edges``.  With ``validate`` the
    drawing is also checked for crossing segments; the Euler check always runs.
    """
    n = len(points)
    coords = {i + 1: (float(p[0]), float(p[1])) for i, p in enumerate(points)}
    scaled = {i: _scaled(p) for i, p in coords.items()}
    if len(set(scaled.values())) != n:
        raise DuplicateVertex("two vertices share coordinates")
    edges: Dict[int, Edge] = {}
    seen_pairs = set()
    for e, (u, v, w) in enumerate(weighted_edges):
        u, v, w = int(u), int(v), int(w)
        if w < 0:
            raise NegativeWeight(f"edge {e} has weight {w}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge {e} references unknown vertex")
        if u == v:
            raise EulerViolation(f"edge {e} is a loop in a straight-line drawing")
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            raise EulerViolation(f"edge {e} duplicates segment {pair}")
        seen_pairs.add(pair)
        edges[e] = (u, v, w)
    rotation: Dict[int, List[Dart]] = {v: [] for v in coords}
    for e, (u, v, _) in edges.items():
        rotation[u].append(2 * e)
        rotation[v].append(2 * e + 1)
    for v, darts in rotation.items():
        x0, y0 = scaled[v]

        def angle(d, x0=x0, y0=y0):
            u_, v_, _ = edges[d >> 1]
            x1, y1 = scaled[u_ if d & 1 else v_]
            return math.atan2(y1 - y0, x1 - x0)

        darts.sort(key=angle)
    if validate:
        _check_crossings(scaled, edges)
    return PlanarGraph(range(1, n + 1), edges, rotation, coords)


def _orient(a, b, c) -> int:
    val = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (val > 0) - (val < 0)


def _on_segment(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_conflict(p1, p2, p3, p4, shared: int) -> bool:
    """Exact test: do two segments meet anywhere except one shared endpoint?"""
    if shared:
        # p1 == p3 is the common endpoint; overlap only if collinear and aligned
        if _orient(p1, p2, p4) != 0:
            return False
        return (p2[0] - p1[0]) * (p4[0] - p1[0]) + (p2[1] - p1[1]) * (p4[1] - p1[1]) > 0
    o1, o2 = _orient(p1, p2, p3), _orient(p1, p2, p4)
    o3, o4 = _orient(p3, p4, p1), _orient(p3, p4, p2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(p1, p2, p3):
        return True
    if o2 == 0 and _on_segment(p1, p2, p4):
        return True
    if o3 == 0 and _on_segment(p3, p4, p1):
        return True
    if o4 == 0 and _on_segment(p3, p4, p2):
        return True
    return False


def _check_crossings(scaled: Dict[int, Tuple[int, int]], edges: Dict[int, Edge]) -> None:
    """Sweep over x-intervals; raises EulerViolation on the first conflict."""
    segs = []
    for e, (u, v, _) in edges.items():
        a, b = scaled[u], scaled[v]
        segs.append((min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]), e))
    segs.sort()
    active: List[tuple] = []
    for seg in segs:
        x0 = seg[0]
        active = [s for s in active if s[1] >= x0]
        for other in active:
            if other[3] < seg[2] or seg[3] < other[2]:
                continue
            e1, e2 = seg[4], other[4]
            u1, v1, _ = edges[e1]
            u2, v2, _ = edges[e2]
            common = {u1, v1} & {u2, v2}
            if common:
                s = common.pop()
                a1 = v1 if u1 == s else u1
                a2 = v2 if u2 == s else u2
                bad = segments_conflict(scaled[s], scaled[a1], scaled[s], scaled[a2], 1)
            else:
                bad = segments_conflict(scaled[u1], scaled[v1], scaled[u2], scaled[v2], 0)
            if bad:
                raise EulerViolation(f"edges {e2} and {e1} cross")
        active.append(seg)


def from_rotation(
    vertices: Iterable[int],
    edges: Dict[int, Edge],
    rotation: Dict[int, List[Dart]],
    external: Dict[int, Dart],
    coords=None,
) -> PlanarGraph:
    """Combinatorial constructor; ``external`` names one dart per component."""
    for e, (_, _, w) in edges.items():
        if w < 0:
            raise NegativeWeight(f"edge {e} has weight {w}")
    return PlanarGraph(vertices, edges, rotation, coords, external)


def trace_faces(g: PlanarGraph) -> List[Face]:
    return list(g.faces().faces)


def connected_components(g: PlanarGraph) -> List[List[int]]:
    return [list(c) for c in g.components()]


# dual graph

class DualGraph:
    """Dual of a connected plane graph.

    Dual vertex ``f + 1`` stands for face ``f``; dual edge ids equal primal
    edge ids and dual darts equal primal darts (dart ``d*`` runs from the face
    left of ``d`` to the face right of it).
    """

    def __init__(self, primal: PlanarGraph, graph: PlanarGraph):
        self.primal = primal
        self.graph = graph
        fm = primal.faces()
        self.face_vertex = {f.id: f.id + 1 for f in fm.faces}
        self.edge_to_dual = {e: e for e in primal.edges}
        self.dual_to_edge = dict(self.edge_to_dual)

    def vertex_of_dual_face(self, face_id: int) -> int:
        """Primal vertex surrounded by the given dual face."""
        fm = self.graph.faces()
        d = fm.faces[face_id].boundary[0]
        return self.primal.head(d)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m


def dual_graph(g: PlanarGraph, external_vertex: Optional[int] = None) -> DualGraph:
    """Plane dual; its external face is the one around ``external_vertex``."""
    if not g.is_connected() or g.m == 0:
        raise Disconnected("dual_graph needs a connected graph with edges")
    fm = g.faces()
    edges = {}
    for e, (u, v, w) in g.edges.items():
        edges[e] = (fm.face_of[2 * e] + 1, fm.face_of[2 * e + 1] + 1, w)
    rotation = {f.id + 1: list(f.boundary) for f in fm.faces}
    x = g.vertices[0] if external_vertex is None else external_vertex
    # a dual dart d* lies on the dual face around head(d)
    start = g.rotation[x][0] ^ 1
    probe = PlanarGraph(rotation.keys(), edges, rotation, external={"_": 0}, validate=False)
    probe.external = {probe.vertices[0]: start}
    probe._faces = None
    probe.check_euler()
    return DualGraph(g, probe)


# multigraph simplification

class Simplified:
    """Simple plane graph plus the map from its edges back to the input."""

    def __init__(self, graph: PlanarGraph, origin: Dict[int, int], added: List[int]):
        self.graph = graph
        self.origin = origin
        self.added_vertices = added

    def map_edges(self, edge_ids: Iterable[int]) -> List[int]:
        """Original edge ids covered by a set of output edges (each once)."""
        out = []
        seen = set()
        for e in edge_ids:
            o = self.origin[e]
            if o not in seen:
                seen.add(o)
                out.append(o)
        return sorted(out)


def simplify_multigraph(g: PlanarGraph) -> Simplified:
    """Subdivide loops twice and repeated parallel edges once."""
    edges = dict(g.edges)
    rotation = {v: list(r) for v, r in g.rotation.items()}
    origin = {e: e for e in edges}
    next_v = max(g.vertices) + 1 if g.vertices else 1
    next_e = max(edges) + 1 if edges else 0
    added: List[int] = []
    first_of_pair: Dict[Tuple[int, int], int] = {}
    replace: List[int] = []
    for e in sorted(g.edges):
        u, v, _ = g.edges[e]
        if u == v:
            replace.append(e)
            continue
        key = (min(u, v), max(u, v))
        if key in first_of_pair:
            replace.append(e)
        else:
            first_of_pair[key] = e

    def swap_dart(vertex, old, new):
        r = rotation[vertex]
        r[r.index(old)] = new

    for e in replace:
        u, v, w = edges.pop(e)
        del origin[e]
        if u != v:
            x = next_v
            next_v += 1
            added.append(x)
            e1, e2 = next_e, next_e + 1
            next_e += 2
            edges[e1] = (u, x, w // 2)
            edges[e2] = (x, v, w - w // 2)
            swap_dart(u, 2 * e, 2 * e1)
            swap_dart(v, 2 * e + 1, 2 * e2 + 1)
            rotation[x] = [2 * e1 + 1, 2 * e2]
            origin[e1] = origin[e2] = e
        else:
            x, y = next_v, next_v + 1
            next_v += 2
            added += [x, y]
            e1, e2, e3 = next_e, next_e + 1, next_e + 2
            next_e += 3
            half = w // 2
            edges[e1] = (u, x, w - half)
            edges[e2] = (x, y, half // 2)
            edges[e3] = (y, u, half - half // 2)
            swap_dart(u, 2 * e, 2 * e1)
            swap_dart(u, 2 * e + 1, 2 * e3 + 1)
            rotation[x] = [2 * e1 + 1, 2 * e2]
            rotation[y] = [2 * e2 + 1, 2 * e3]
            origin[e1] = origin[e2] = origin[e3] = e
    ext = {}
    for root, d in g.external.items():
        ext[root] = d if (d >> 1) in edges else _replacement_dart(d, g, edges, origin)
    verts = list(g.vertices) + added
    out = PlanarGraph(verts, edges, rotation, None, external=ext)
    return Simplified(out, origin, added)


def _replacement_dart(d: Dart, g: PlanarGraph, edges, origin) -> Dart:
    """A dart of the subdivided path that keeps the old dart's left face."""
    e = d >> 1
    pieces = sorted(k for k, o in origin.items() if o == e)
    first = pieces[0]
    return 2 * first + (d & 1) if (d & 1) == 0 else 2 * pieces[-1] + 1
