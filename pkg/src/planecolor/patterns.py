"""Finders for catalog patterns inside a concrete rooted plane graph.

Each finder yields ``(location, strict)`` pairs.  A match is strict when every
vertex involved is interior and every face involved avoids C0, which is when
the corresponding configuration is supposed to be absent from a minimal
counterexample.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterator

from .discharging import classify_roles
from .plane_graph import Face, RootedPlaneGraph

Finder = Callable[[RootedPlaneGraph], Iterator[tuple[tuple[int, ...], bool]]]


def _degs(g, face: Face) -> list[int]:
    return sorted(g.degree(x) for x in face.walk)


def _triangles(rooted: RootedPlaneGraph) -> list[Face]:
    return [f for f in rooted.inner_faces() if f.degree == 3 and f.is_cycle]


def _interior(rooted: RootedPlaneGraph, vs) -> bool:
    return all(rooted.interior(v) for v in vs)


def three_vertex_two_three_neighbours(rooted):
    g = rooted.base
    for v in g.vertices:
        if g.degree(v) != 3 or rooted.on_c0(v):
            continue
        threes = [u for u in g.neighbors(v) if g.degree(u) == 3]
        for a, b in combinations(sorted(threes), 2):
            yield (v, a, b), _interior(rooted, (a, b))


def triangle_33x(rooted):
    g = rooted.base
    for f in _triangles(rooted):
        if _degs(g, f) in ([3, 3, 3], [3, 3, 4]):
            yield tuple(sorted(f.walk)), rooted.in_F(f)


def bad_four_with_two_three_neighbours(rooted):
    g = rooted.base
    tags = classify_roles(rooted)
    tri_at = _triangles_at(rooted)
    for v in sorted(tags.bad4):
        faces = tri_at.get(v, [])
        if len(faces) != 1:
            continue
        off = [u for u in g.neighbors(v) if u not in faces[0].vertices]
        if all(g.degree(u) == 3 and rooted.interior(u) for u in off):
            yield (v, *sorted(off)), True


def four_vertex_two_small_triangles(rooted):
    g = rooted.base
    for v in g.vertices:
        if g.degree(v) != 4 or rooted.on_c0(v):
            continue
        faces = [f for f in _triangles_at(rooted).get(v, []) if rooted.in_F(f)]
        for f, h in combinations(faces, 2):
            for a, b in ((f, h), (h, f)):
                if _degs(g, a) == [3, 4, 4] and max(_degs(g, b)) <= 4:
                    yield (v, a.index, b.index), True
                    break


def five_vertex_bad_345_and_doubly_bad_445(rooted):
    g = rooted.base
    tags = classify_roles(rooted)
    for v in g.vertices:
        if g.degree(v) != 5 or rooted.on_c0(v):
            continue
        faces = [f for f in _triangles_at(rooted).get(v, []) if rooted.in_F(f)]
        bad = [f for f in faces if f.index in tags.bad_faces]
        for f in bad:
            for h in faces:
                if h is f or _degs(g, h) != [4, 4, 5]:
                    continue
                if all(x in tags.bad4 for x in h.walk if x != v):
                    yield (v, f.index, h.index), True


def triangle_3hh_three_weak(rooted):
    g = rooted.base
    tags = classify_roles(rooted)
    for f in _triangles(rooted):
        if not rooted.in_F(f):
            continue
        degs = _degs(g, f)
        if degs[0] != 3 or degs[1] < 5:
            continue
        three = next(x for x in f.walk if g.degree(x) == 3)
        others = [x for x in f.walk if x != three]
        if (three, f.index) in tags.weak3 and all(tags.is_weak_center(x) for x in others):
            yield tuple(sorted(f.walk)), True


def diagonal_three(rooted):
    g = rooted.base
    tags = classify_roles(rooted)
    centers = set(tags.bad4)
    for f in _triangles(rooted):
        if not rooted.in_F(f):
            continue
        if f.index in tags.bad_faces or _degs(g, f) == [3, 3, 5]:
            centers.update(x for x in f.walk if g.degree(x) == 5)
    for f in rooted.inner_faces():
        if f.degree != 4 or not f.is_cycle:
            continue
        w = f.walk
        for i, v in enumerate(w):
            if v in centers:
                diag = w[(i + 2) % 4]
                if g.degree(diag) <= 3:
                    yield (v, diag, f.index), rooted.in_F(f)


def four_face_33_beside_small_face(rooted):
    g = rooted.base
    for f in rooted.inner_faces():
        if f.degree != 4 or not f.is_cycle:
            continue
        w = f.walk
        for i, v in enumerate(w):
            if g.degree(v) != 4 or rooted.on_c0(v):
                continue
            diag = w[(i + 2) % 4]
            if g.degree(diag) != 3:
                continue
            for y in (w[(i + 1) % 4], w[(i - 1) % 4]):
                if g.degree(y) != 3:
                    continue
                for h in g.incident_faces(v):
                    if h.index != f.index and y in h.vertices and h.degree <= 5 and h.index != rooted.outer_index:
                        yield (v, y, diag, f.index, h.index), rooted.in_F(f) and rooted.in_F(h)


def _poor_five_rim(rooted, v):
    """Neighbours v_i and diagonal vertices u_i around a poor 5-vertex, in rotation order."""
    g = rooted.base
    nbrs = g.neighbors(v)
    rim = []
    for i, x in enumerate(nbrs):
        face = g.face_of_dart(v, x)
        w = face.walk
        j = w.index(v)
        rim.append(w[(j + 2) % 4])
    return list(nbrs), rim


def poor_five_434_face_both_q4(rooted):
    g = rooted.base
    tags = classify_roles(rooted)
    for v in sorted(tags.poor):
        if g.degree(v) != 5:
            continue
        for f in g.incident_faces(v):
            w = f.walk
            j = w.index(v)
            a, x, b = w[(j + 1) % 4], w[(j + 2) % 4], w[(j + 3) % 4]
            if g.degree(a) == g.degree(b) == 4 and g.degree(x) == 3:
                q = tags.q4.get(v, set())
                if a in q and b in q:
                    yield (v, a, x, b), True


def poor_five_three_pattern(rooted):
    g = rooted.base
    tags = classify_roles(rooted)
    for v in sorted(tags.poor):
        if g.degree(v) != 5:
            continue
        nbrs, rim = _poor_five_rim(rooted, v)
        for i in range(5):
            vi, ui, vk = nbrs[i], rim[i], nbrs[(i + 2) % 5]
            if not all(g.degree(x) == 3 for x in (vi, ui, vk)):
                continue
            rest = [nbrs[j] for j in range(5) if j not in (i, (i + 2) % 5)]
            for y in rest:
                if g.degree(y) <= 4:
                    yield (v, vi, ui, vk, y), True


def _triangles_at(rooted) -> dict[int, list[Face]]:
    out: dict[int, list[Face]] = {}
    for f in _triangles(rooted):
        for x in f.walk:
            out.setdefault(x, []).append(f)
    return out


FINDERS: dict[str, Finder] = {
    "three-vertex-two-three-neighbours": three_vertex_two_three_neighbours,
    "triangle-33x": triangle_33x,
    "bad-four-with-two-three-neighbours": bad_four_with_two_three_neighbours,
    "four-vertex-two-small-triangles": four_vertex_two_small_triangles,
    "five-vertex-bad-345-and-doubly-bad-445": five_vertex_bad_345_and_doubly_bad_445,
    "triangle-3hh-three-weak": triangle_3hh_three_weak,
    "diagonal-three": diagonal_three,
    "four-face-33-beside-small-face": four_face_33_beside_small_face,
    "poor-five-434-face-both-q4": poor_five_434_face_both_q4,
    "poor-five-three-pattern": poor_five_three_pattern,
}
