"""Exhaustive generation of small connected plane graphs.

Every connected plane graph arises from a single vertex by attaching pendant
vertices inside faces and then adding edges across faces: delete non-tree
edges of a spanning tree one at a time, then peel leaves.  The generator
closes under both insertions level by level and keeps one representative per
canonical code.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Iterator

from .errors import BoundTooLarge
from .plane_graph import PlaneGraph, check_family_membership, has_triangle, rotation_code

MAX_N = 10
CORPUS_MAX_N = 8
CORPUS_FILE = "plane_graphs_upto8.pc"
FILTERS = ("all", "family_F", "has_triangle")


def _pendant_children(g: PlaneGraph) -> Iterator[list[list[int]]]:
    n = g.order
    w = n + 1
    if n == 1:
        yield [[2], [1]]
        return
    for v in g.vertices:
        nbrs = g.neighbors(v)
        for j in range(len(nbrs)):
            rot = [list(r) for r in g.rotation]
            rot[v - 1].insert(j + 1, w)
            rot.append([v])
            yield rot


def _edge_children(g: PlaneGraph) -> Iterator[list[list[int]]]:
    for face in g.faces:
        walk = face.walk
        k = len(walk)
        for a in range(k):
            x = walk[a]
            for b in range(a + 1, k):
                y = walk[b]
                if x == y or g.has_edge(x, y):
                    continue
                rot = [list(r) for r in g.rotation]
                # corner of the face at walk[i] sits right after walk[i + 1] in the rotation
                for p, q, other in ((a, x, y), (b, y, x)):
                    j = rot[q - 1].index(walk[(p + 1) % k])
                    rot[q - 1].insert(j + 1, other)
                yield rot


def _dedupe(rots, seen: dict) -> list[PlaneGraph]:
    fresh = []
    for rot in rots:
        code = rotation_code(rot)
        if code not in seen:
            g = PlaneGraph(rot)
            g.__dict__["canonical_code"] = code
            seen[code] = g
            fresh.append(g)
    return fresh


@lru_cache(maxsize=1)
def bundled_corpus() -> tuple[tuple[PlaneGraph, ...], ...]:
    """Pre-generated graphs for n <= CORPUS_MAX_N, grouped by order (index n - 1)."""
    from .formats import read_planar_code

    data = resources.files("planecolor.data").joinpath(CORPUS_FILE).read_bytes()
    layers: list[list[PlaneGraph]] = [[] for _ in range(CORPUS_MAX_N)]
    for g in read_planar_code(data):
        layers[g.order - 1].append(g)
    return tuple(tuple(layer) for layer in layers)


def plane_graphs_by_order(max_n: int, use_corpus: bool = True) -> Iterator[list[PlaneGraph]]:
    """Yield, for n = 1..max_n, every connected plane graph on n vertices up to isomorphism.

    Orders covered by the bundled corpus are read from it unless ``use_corpus``
    is false; the corpus was written by this function and the test-suite checks
    that regeneration reproduces it.
    """
    if max_n > MAX_N:
        raise BoundTooLarge(f"max_n = {max_n} exceeds the supported bound {MAX_N}")
    if max_n < 1:
        return
    if use_corpus:
        corpus = bundled_corpus()
        for layer in corpus[:max_n]:
            yield list(layer)
        if max_n <= CORPUS_MAX_N:
            return
        current = list(corpus[-1])
        start = CORPUS_MAX_N + 1
    else:
        current = [PlaneGraph([[]])]
        yield current
        start = 2
    for n in range(start, max_n + 1):
        seen: dict = {}
        layer = _dedupe((r for g in current for r in _pendant_children(g)), seen)
        everything = list(layer)
        while layer:
            layer = _dedupe((r for g in layer for r in _edge_children(g)), seen)
            everything.extend(layer)
        everything.sort(key=lambda g: g.canonical_code)
        current = everything
        yield current


def generate_plane_graphs(
    max_n: int, filter: str = "all", min_n: int = 1, use_corpus: bool = True
) -> Iterator[PlaneGraph]:
    """Stream connected plane graphs with ``min_n <= n <= max_n`` in canonical order."""
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {FILTERS}")
    for graphs in plane_graphs_by_order(max_n, use_corpus):
        for g in graphs:
            if g.order < min_n:
                continue
            if filter == "family_F" and not check_family_membership(g):
                continue
            if filter == "has_triangle" and not has_triangle(g):
                continue
            yield g
