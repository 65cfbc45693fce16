"""Deterministic graph generators."""

from __future__ import annotations

import math
import os
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial import Delaunay

from .errors import TooSmall
from .planar_core import PlanarGraph, build_embedding


def default_seed() -> int:
    return int(os.environ.get("PMCB_SEED", "1"))


def gen_lower_bound(n: int) -> PlanarGraph:
    """Zero-weight path v1..vn plus unit chords from v1 to every v_j, j >= 3.

    v1 sits at the origin and the path runs along a quarter circle, so all
    chords fan out without crossing.
    """
    if n < 3:
        raise TooSmall("lower-bound family needs n >= 3")
    pts: List[Tuple[float, float]] = [(0.0, 0.0)]
    for j in range(2, n + 1):
        a = (math.pi / 2) * (j - 2) / (n - 2)
        pts.append((round(math.cos(a), 6), round(math.sin(a), 6)))
    edges = [(i, i + 1, 0) for i in range(1, n)]
    edges += [(1, i + 2, 1) for i in range(1, n - 1)]
    return build_embedding(pts, edges)


def random_points(n: int, rng: np.random.Generator) -> np.ndarray:
    pts = np.round(rng.random((n, 2)), 6)
    while len(np.unique(pts, axis=0)) < n:
        pts = np.round(rng.random((n, 2)), 6)
    return pts


def delaunay_edges(pts: np.ndarray) -> List[Tuple[int, int]]:
    tri = Delaunay(pts)
    pairs = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            pairs.add((min(u, v) + 1, max(u, v) + 1))
    return sorted(pairs)


def gen_random_planar(
    n: int,
    seed: Optional[int] = None,
    max_weight: int = 16,
    thin: float = 0.0,
    unweighted: bool = False,
    validate: bool = True,
) -> PlanarGraph:
    """Delaunay triangulation of seeded random points.

    ``thin`` drops that fraction of non-spanning-tree edges; the result stays
    connected.
    """
    if n < 3:
        raise TooSmall("random planar graphs need n >= 3")
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    pts = random_points(n, rng)
    pairs = delaunay_edges(pts)
    if thin > 0:
        pairs = _thin(pairs, n, thin, rng)
    if unweighted:
        weights = [1] * len(pairs)
    else:
        weights = rng.integers(0, max_weight + 1, size=len(pairs)).tolist()
    edges = [(u, v, int(w)) for (u, v), w in zip(pairs, weights)]
    return build_embedding([tuple(p) for p in pts.tolist()], edges, validate=validate)


def _thin(pairs, n, frac, rng):
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = rng.permutation(len(pairs))
    keep = [False] * len(pairs)
    for i in order:
        u, v = pairs[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            keep[i] = True
    drop = rng.random(len(pairs)) < frac
    return [p for i, p in enumerate(pairs) if keep[i] or not drop[i]]


def gen_grid(rows: int, cols: int, weight: int = 1) -> PlanarGraph:
    pts = [(float(c), float(r)) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c + 1
            if c + 1 < cols:
                edges.append((v, v + 1, weight))
            if r + 1 < rows:
                edges.append((v, v + cols, weight))
    return build_embedding(pts, edges)


def gen_path(n: int, weight: int = 1) -> PlanarGraph:
    pts = [(float(i), float(i * i % 7) / 10) for i in range(n)]
    return build_embedding(pts, [(i, i + 1, weight) for i in range(1, n)])


def gen_web(rings: int, spokes: int, seed: Optional[int] = None, max_weight: int = 16) -> PlanarGraph:
    """Concentric rings joined by spokes, with seeded random weights.

    Outer rings enclose every separator of the inner part, which makes this a
    good stress input for cycles that surround the separator.
    """
    if rings < 1 or spokes < 3:
        raise TooSmall("web graphs need rings >= 1 and spokes >= 3")
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    pts = []
    for r in range(rings):
        for s in range(spokes):
            a = 2 * math.pi * s / spokes
            pts.append((round((r + 1) * math.cos(a), 6), round((r + 1) * math.sin(a), 6)))
    pairs = []
    for r in range(rings):
        for s in range(spokes):
            v = r * spokes + s + 1
            pairs.append((v, r * spokes + (s + 1) % spokes + 1))
            if r + 1 < rings:
                pairs.append((v, v + spokes))
    weights = rng.integers(0, max_weight + 1, size=len(pairs)).tolist()
    return build_embedding(pts, [(u, v, int(w)) for (u, v), w in zip(pairs, weights)])
