"""Mutable rooted trees over region faces, for contracted and pruned dual trees.

A vertex holds an ``entry`` (anything with a boolean ``white`` attribute)
and an ordered adjacency whose first key is the edge to its parent.  Edges
that come from a static dual tree keep a two-way link through a shared
``links`` dict (static edge id -> live edge record), so membership of a
static edge is a dict lookup.
"""

from __future__ import annotations

from collections import OrderedDict
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .errors import EdgeAbsent, NotASubtree, SameTree


class TVertex:
    __slots__ = ("entry", "adj", "tree")

    def __init__(self, entry, tree: "DualTree"):
        self.entry = entry
        self.adj: "OrderedDict[TEdge, None]" = OrderedDict()
        self.tree = tree

    @property
    def degree(self) -> int:
        return len(self.adj)

    def parent_edge(self) -> Optional["TEdge"]:
        if self is self.tree.root or not self.adj:
            return None
        return next(iter(self.adj))

    def __repr__(self) -> str:
        return f"TVertex({self.entry!r})"


class TEdge:
    __slots__ = ("a", "b", "static", "links", "alive")

    def __init__(self, a: TVertex, b: TVertex, static: Optional[int], links: Optional[dict]):
        self.a = a
        self.b = b
        self.static = static
        self.links = links
        self.alive = True
        if static is not None and links is not None:
            links[static] = self

    def other(self, x: TVertex) -> TVertex:
        return self.b if x is self.a else self.a

    def kill(self) -> None:
        self.alive = False
        if self.static is not None and self.links is not None:
            if self.links.get(self.static) is self:
                del self.links[self.static]

    def __repr__(self) -> str:
        return f"TEdge({self.static}, {self.a.entry!r}-{self.b.entry!r})"


class DualTree:
    """One tree; ``links`` is shared by all trees built from the same static tree."""

    __slots__ = ("kind", "root", "size", "links", "region", "owner", "__weakref__")

    def __init__(self, kind: str = "contracted", links: Optional[dict] = None):
        self.kind = kind
        self.root: Optional[TVertex] = None
        self.size = 0
        self.links = links if links is not None else {}
        self.region = None
        self.owner = None

    def new_vertex(self, entry) -> TVertex:
        x = TVertex(entry, self)
        self.size += 1
        if self.root is None:
            self.root = x
        return x

    def attach(self, parent: TVertex, child: TVertex, static: Optional[int] = None) -> TEdge:
        """Edge with ``child`` below ``parent``; the edge heads the child's list."""
        e = TEdge(parent, child, static, self.links)
        parent.adj[e] = None
        child.adj[e] = None
        child.adj.move_to_end(e, last=False)
        return e

    def vertices(self) -> List[TVertex]:
        if self.root is None:
            return []
        out = [self.root]
        seen = {id(self.root)}
        i = 0
        while i < len(out):
            x = out[i]
            i += 1
            for e in x.adj:
                y = e.other(x)
                if id(y) not in seen:
                    seen.add(id(y))
                    out.append(y)
        return out

    def edges(self) -> List[TEdge]:
        out = []
        for x in self.vertices():
            pe = x.parent_edge()
            if pe is not None:
                out.append(pe)
        return out

    def check(self) -> None:
        """Assert tree shape, parent-first adjacency and tree pointers."""
        vs = self.vertices()
        assert len(vs) == self.size, (len(vs), self.size)
        n_edges = sum(len(x.adj) for x in vs)
        assert n_edges == 2 * max(0, len(vs) - 1)
        for x in vs:
            assert x.tree is self
            for e in x.adj:
                assert e.alive
        if self.root is not None:
            assert self.root.tree is self
        # parent pointers lead to the root without cycles
        depth = {id(self.root): 0} if self.root is not None else {}
        queue = [self.root] if self.root is not None else []
        while queue:
            x = queue.pop()
            for e in x.adj:
                y = e.other(x)
                if id(y) not in depth:
                    assert y.parent_edge() is e, "parent edge must head the list"
                    depth[id(y)] = depth[id(x)] + 1
                    queue.append(y)


def contains_edge(links: dict, static: int) -> bool:
    e = links.get(static)
    return e is not None and e.alive


def _reroot(t: DualTree, x: TVertex) -> None:
    """Make ``x`` the root by flipping parent edges on its root path."""
    path = []
    y = x
    while y is not t.root:
        pe = y.parent_edge()
        path.append((y, pe))
        y = pe.other(y)
    for y, pe in path:
        p = pe.other(y)
        p.adj.move_to_end(pe, last=False)
    t.root = x


def contract_edges(t: DualTree, edges: Iterable[TEdge], new_entry) -> TVertex:
    """Contract a set of edges spanning a subtree into one vertex.

    The surviving vertex is the member with the longest adjacency; the others'
    lists are appended to it, shortest first.
    """
    edges = list(edges)
    members: Dict[int, TVertex] = {}
    for e in edges:
        if not e.alive or e.a.tree is not t or e.b.tree is not t:
            raise NotASubtree("edge not in tree")
        members[id(e.a)] = e.a
        members[id(e.b)] = e.b
    if not edges:
        raise NotASubtree("empty edge set")
    if len(members) != len(edges) + 1:
        raise NotASubtree("edges do not span a subtree")
    inside = set(map(id, edges))
    verts = list(members.values())
    # the member whose parent edge leaves the set, if any
    top_edge = None
    has_root = False
    for x in verts:
        if x is t.root:
            has_root = True
            continue
        pe = x.parent_edge()
        if id(pe) not in inside:
            if top_edge is not None:
                raise NotASubtree("edges are not connected")
            top_edge = pe
    base = max(verts, key=lambda x: len(x.adj))
    for e in edges:
        e.kill()
        e.a.adj.pop(e, None)
        e.b.adj.pop(e, None)
    for x in sorted(verts, key=lambda x: len(x.adj)):
        if x is base:
            continue
        for e in x.adj:
            if e.a is x:
                e.a = base
            else:
                e.b = base
            base.adj[e] = None
        x.adj.clear()
        x.tree = None
    t.size -= len(verts) - 1
    base.entry = new_entry
    if has_root:
        t.root = base
    elif top_edge is not None:
        base.adj.move_to_end(top_edge, last=False)
    return base


def _alternate(
    starts: Tuple[TVertex, TVertex],
    allowed: Tuple[Callable[[TVertex], bool], Callable[[TVertex], bool]],
    skip: Optional[TEdge] = None,
):
    """Explore two sides one edge at a time until one side is exhausted.

    Returns (side index, visited vertices of that side, edges leaving it).
    """
    stacks = []
    visited = []
    seen = []
    leaving: List[List[TEdge]] = [[], []]
    for i in (0, 1):
        s = starts[i]
        stacks.append([(s, iter(list(s.adj)))])
        visited.append([s])
        seen.append({id(s)})
    while True:
        for i in (0, 1):
            st = stacks[i]
            while st:
                x, it = st[-1]
                e = next(it, None)
                if e is None:
                    st.pop()
                    continue
                if e is skip:
                    break
                y = e.other(x)
                if id(y) in seen[i]:
                    break
                if not allowed[i](y):
                    leaving[i].append(e)
                    break
                seen[i].add(id(y))
                visited[i].append(y)
                st.append((y, iter(list(y.adj))))
                break
            if not st:
                return i, visited[i], leaving[i]


def _move(t_new: DualTree, verts: List[TVertex]) -> None:
    for x in verts:
        x.tree = t_new
    t_new.size = len(verts)


def delete_edge(t: DualTree, e: TEdge) -> Tuple[DualTree, DualTree]:
    """Remove ``e``; the smaller side moves to a fresh tree.  Returns (smaller, larger)."""
    if not e.alive or e.a.tree is not t:
        raise EdgeAbsent("edge not in tree")
    side, verts, _ = _alternate((e.a, e.b), (lambda x: True, lambda x: True), skip=e)
    moved = {id(x) for x in verts}
    e.kill()
    e.a.adj.pop(e)
    e.b.adj.pop(e)
    small = DualTree(t.kind, t.links)
    small.region = t.region
    small.owner = t.owner
    _move(small, verts)
    t.size -= len(verts)
    # the endpoint that lost its parent edge becomes a root
    if id(t.root) in moved:
        small.root = t.root
        t.root = e.a if id(e.a) not in moved else e.b
    else:
        small.root = e.a if id(e.a) in moved else e.b
    return small, t


def split_by_side(
    t: DualTree,
    start_a: TVertex,
    start_b: TVertex,
    side_a: Callable[[TVertex], bool],
    side_b: Callable[[TVertex], bool],
) -> Tuple[int, List[TVertex], List[TEdge]]:
    """Alternating search inside two vertex classes; see ``_alternate``."""
    return _alternate((start_a, start_b), (side_a, side_b))


def insert_edge(
    t1: DualTree, u1: TVertex, t2: DualTree, u2: TVertex, static: Optional[int] = None
) -> DualTree:
    """Join ``t2`` below ``u1`` through a new edge to ``u2``."""
    if t1 is t2:
        raise SameTree("endpoints already share a tree")
    if u2 is not t2.root:
        _reroot(t2, u2)
    verts = t2.vertices()
    for x in verts:
        x.tree = t1
    t1.size += len(verts)
    t2.size = 0
    t2.root = None
    t1.attach(u1, u2, static)
    return t1


def remove_vertices(t: DualTree, doomed: List[TVertex]) -> List[TVertex]:
    """Delete vertices and their edges; returns surviving vertices that lost an edge."""
    ids = {id(x) for x in doomed}
    touched: Dict[int, TVertex] = {}
    new_root = None
    root_gone = t.root is not None and id(t.root) in ids
    for x in doomed:
        for e in list(x.adj):
            y = e.other(x)
            e.kill()
            x.adj.pop(e, None)
            if id(y) not in ids:
                was_parent = next(iter(y.adj)) is e and y is not t.root
                y.adj.pop(e, None)
                touched[id(y)] = y
                if was_parent:
                    new_root = y
            else:
                y.adj.pop(e, None)
        x.tree = None
    t.size -= len(doomed)
    if root_gone:
        t.root = new_root
    if t.size == 0:
        t.root = None
    return list(touched.values())


def prune(t: DualTree, seeds: Iterable[TVertex]) -> List[TVertex]:
    """Remove black vertices of degree <= 1 until none is left; returns them."""
    work = [x for x in seeds]
    removed = []
    while work:
        x = work.pop()
        if x.tree is not t or x.entry.white or len(x.adj) > 1:
            continue
        if x.adj:
            e = next(iter(x.adj))
            y = e.other(x)
            e.kill()
            x.adj.pop(e)
            y.adj.pop(e)
            if x is t.root:
                t.root = y
            work.append(y)
        elif x is t.root:
            t.root = None
        x.tree = None
        t.size -= 1
        removed.append(x)
    return removed


def build_from_parent(
    kind: str,
    order: List[int],
    parent: Dict[int, Optional[int]],
    parent_static: Dict[int, Optional[int]],
    entry_of: Callable[[int], object],
    links: Optional[dict] = None,
) -> Tuple[DualTree, Dict[int, TVertex]]:
    """Tree from a parent map listed top-down; returns the tree and key -> vertex."""
    t = DualTree(kind, links)
    vx: Dict[int, TVertex] = {}
    for k in order:
        x = t.new_vertex(entry_of(k))
        vx[k] = x
        p = parent[k]
        if p is not None:
            t.attach(vx[p], x, parent_static[k])
    return t, vx
