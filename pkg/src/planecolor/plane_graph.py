"""Plane graphs stored as rotation systems.

Vertices are the integers ``1..n``.  ``rotation[v]`` lists the neighbours of
``v`` in clockwise order.  Faces are traced with a single fixed rule: the
successor of the dart ``(u, v)`` is ``(v, w)`` where ``w`` is the neighbour
*preceding* ``u`` in the rotation at ``v``.  With that rule the face holding
the dart ``(v, rotation[v][i])`` is the corner of ``v`` between
``rotation[v][i]`` and ``rotation[v][i + 1]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    Disconnected,
    EulerViolation,
    GraphError,
    LoopCreated,
    LoopOrMultiEdge,
    MissingReverseEdge,
    NotACycle,
    NotAFace,
)

Dart = tuple[int, int]


@dataclass(frozen=True)
class Face:
    index: int
    walk: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.walk)

    @property
    def is_cycle(self) -> bool:
        return len(self.walk) >= 3 and len(set(self.walk)) == len(self.walk)

    @property
    def darts(self) -> tuple[Dart, ...]:
        w = self.walk
        return tuple((w[i], w[(i + 1) % len(w)]) for i in range(len(w)))


class PlaneGraph:
    """Immutable connected simple plane graph given by a rotation system."""

    def __init__(self, rotation: Mapping[int, Sequence[int]] | Sequence[Sequence[int]]):
        if isinstance(rotation, Mapping):
            n = len(rotation)
            if sorted(rotation) != list(range(1, n + 1)):
                raise GraphError("rotation keys must be exactly 1..n")
            rot = tuple(tuple(int(x) for x in rotation[v]) for v in range(1, n + 1))
        else:
            rot = tuple(tuple(int(x) for x in nbrs) for nbrs in rotation)
            n = len(rot)
        if n < 1:
            raise GraphError("a plane graph needs at least one vertex")
        self._rot = rot
        self._validate()
        self._pos = tuple({u: i for i, u in enumerate(nbrs)} for nbrs in rot)
        self._check_connected()
        self._trace()
        v, e, f = self.order, self.size, len(self._faces)
        if v - e + f != 2:
            raise EulerViolation(f"V - E + F = {v} - {e} + {f} != 2 (not a sphere embedding)")

    # -- construction helpers -------------------------------------------------

    def _validate(self) -> None:
        n = len(self._rot)
        for i, nbrs in enumerate(self._rot):
            v = i + 1
            seen = set()
            for u in nbrs:
                if not 1 <= u <= n:
                    raise GraphError(f"vertex {v} lists unknown neighbour {u}")
                if u == v:
                    raise LoopOrMultiEdge(f"loop at vertex {v}")
                if u in seen:
                    raise LoopOrMultiEdge(f"repeated neighbour {u} at vertex {v}")
                seen.add(u)
        for i, nbrs in enumerate(self._rot):
            v = i + 1
            for u in nbrs:
                if v not in self._rot[u - 1]:
                    raise MissingReverseEdge(f"edge {v}->{u} has no reverse {u}->{v}")

    def _check_connected(self) -> None:
        seen = {1}
        queue = deque([1])
        while queue:
            v = queue.popleft()
            for u in self._rot[v - 1]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != len(self._rot):
            raise Disconnected(f"graph has {len(self._rot) - len(seen)} unreachable vertices")

    def _trace(self) -> None:
        dart_face: dict[Dart, int] = {}
        faces: list[Face] = []
        for v in range(1, len(self._rot) + 1):
            for u in sorted(self._rot[v - 1]):
                if (v, u) in dart_face:
                    continue
                walk = []
                dart = (v, u)
                while dart not in dart_face:
                    dart_face[dart] = len(faces)
                    walk.append(dart[0])
                    dart = self.next_dart(dart)
                if dart != (v, u):
                    raise EulerViolation("face tracing did not close up")
                faces.append(Face(len(faces), tuple(walk)))
        if not faces:
            # the single-vertex graph has one face with an empty boundary walk
            faces.append(Face(0, ()))
        self._faces = tuple(faces)
        self._dart_face = dart_face

    # -- basic queries --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._rot)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self._rot) // 2

    @property
    def vertices(self) -> range:
        return range(1, len(self._rot) + 1)

    @property
    def rotation(self) -> tuple[tuple[int, ...], ...]:
        """Clockwise neighbour tuples; entry ``i`` belongs to vertex ``i + 1``."""
        return self._rot

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._rot[v - 1]

    def degree(self, v: int) -> int:
        return len(self._rot[v - 1])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u - 1]

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(self._rot[v - 1]) for v in self.vertices}

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((u, v) for u in self.vertices for v in self._rot[u - 1] if u < v))

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._faces

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        nbrs = self._rot[v - 1]
        return (v, nbrs[self._pos[v - 1][u] - 1])

    def face_of_dart(self, u: int, v: int) -> Face:
        return self._faces[self._dart_face[(u, v)]]

    def incident_faces(self, v: int) -> tuple[Face, ...]:
        """Faces around ``v``; entry ``i`` lies between neighbours ``i`` and ``i + 1``."""
        if not self._rot[v - 1]:
            return (self._faces[0],)
        return tuple(self._faces[self._dart_face[(v, u)]] for u in self._rot[v - 1])

    def corner_position(self, face: Face, v: int, u: int) -> int:
        """Index in ``face.walk`` of the dart ``(v, u)``."""
        w = face.walk
        for i in range(len(w)):
            if w[i] == v and w[(i + 1) % len(w)] == u:
                return i
        raise GraphError(f"dart ({v}, {u}) is not on face {face.index}")

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self._rot)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self._rot == other._rot

    def __hash__(self) -> int:
        return hash(self._rot)

    def __repr__(self) -> str:
        return f"PlaneGraph(V={self.order}, E={self.size}, F={len(self._faces)})"

    # -- canonical form -------------------------------------------------------

    @cached_property
    def canonical_code(self) -> tuple[int, ...]:
        """Isomorphism code of the embedding, reflections included (see :func:`rotation_code`)."""
        return rotation_code(self._rot)

    def _darts(self) -> Iterable[Dart]:
        for u in self.vertices:
            for v in self._rot[u - 1]:
                yield (u, v)


def _bfs_code(rot, pos, u: int, v: int, mirror: bool, bound) -> tuple[int, ...] | None:
    # BFS relabelling from dart (u, v); gives up as soon as the code exceeds ``bound``
    label = {u: 1}
    order = [u]
    entry = {u: v}
    code: list[int] = []
    step = -1 if mirror else 1
    tight = bound is not None
    i = 0
    while i < len(order):
        x = order[i]
        nbrs = rot[x - 1]
        d = len(nbrs)
        start = pos[x - 1][entry[x]]
        for j in range(d + 1):
            if j < d:
                y = nbrs[(start + step * j) % d]
                lab = label.get(y)
                if lab is None:
                    lab = len(order) + 1
                    label[y] = lab
                    order.append(y)
                    entry[y] = x
            else:
                lab = 0
            if tight:
                b = bound[len(code)]
                if lab > b:
                    return None
                if lab < b:
                    tight = False
            code.append(lab)
        i += 1
    return tuple(code)


def rotation_code(rot: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Least BFS code over all starting darts of maximal degree pair and both orientations.

    Two connected rotation systems get the same code iff their embeddings are
    isomorphic, allowing reflection.  ``rot`` need not be validated.
    """
    n = len(rot)
    if n == 1:
        return (1, 0)
    pos = [{u: i for i, u in enumerate(nbrs)} for nbrs in rot]
    deg = [len(r) for r in rot]
    # vertex invariant: degree, then the sum of neighbour degrees
    inv = [(deg[i], sum(deg[y - 1] for y in rot[i])) for i in range(n)]
    top = max(inv)
    heads = [x for x in range(1, n + 1) if inv[x - 1] == top]
    second = max(inv[y - 1] for x in heads for y in rot[x - 1])
    best = None
    for x in heads:
        for y in rot[x - 1]:
            if inv[y - 1] != second:
                continue
            for mirror in (False, True):
                code = _bfs_code(rot, pos, x, y, mirror, best)
                if code is not None and (best is None or code < best):
                    best = code
    return (n,) + best


def build_from_rotation(rotation: Mapping[int, Sequence[int]] | Sequence[Sequence[int]]) -> PlaneGraph:
    return PlaneGraph(rotation)


def trace_faces(graph: PlaneGraph) -> list[Face]:
    return list(graph.faces)


# ---------------------------------------------------------------------------
# abstract graphs and cycles


def adjacency_of(graph) -> Mapping[int, frozenset[int]]:
    """Adjacency map of a PlaneGraph, a ContractedGraph or a plain mapping."""
    adj = getattr(graph, "adjacency", None)
    if adj is not None:
        return adj
    return {v: frozenset(nbrs) for v, nbrs in graph.items()}


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation/reflection of a cyclic vertex sequence."""
    n = len(seq)
    best = None
    for s in (list(seq), list(reversed(seq))):
        for i in range(n):
            cand = tuple(s[i:] + s[:i])
            if best is None or cand < best:
                best = cand
    return best


def simple_cycles(adj: Mapping[int, Iterable[int]], max_len: int, min_len: int = 3) -> list[tuple[int, ...]]:
    """All simple cycles with ``min_len <= length <= max_len`` in canonical form."""
    out: list[tuple[int, ...]] = []
    nbrs = {v: sorted(adj[v]) for v in adj}
    for s in sorted(adj):
        path = [s]
        on_path = {s}
        stack = [iter(nbrs[s])]
        while stack:
            advanced = False
            for u in stack[-1]:
                if u == s:
                    if len(path) >= min_len and path[1] < path[-1]:
                        out.append(tuple(path))
                    continue
                if u < s or u in on_path or len(path) >= max_len:
                    continue
                path.append(u)
                on_path.add(u)
                stack.append(iter(nbrs[u]))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.discard(path.pop())
    out.sort(key=lambda c: (len(c), c))
    return out


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]
    facial: bool
    separating: bool

    @property
    def length(self) -> int:
        return len(self.vertices)


def _facial_cycles(graph: PlaneGraph) -> set[tuple[int, ...]]:
    return {canonical_cycle(f.walk) for f in graph.faces if f.is_cycle}


def cycles_up_to(graph: PlaneGraph, max_len: int) -> list[CycleWitness]:
    if not 3 <= max_len <= 8:
        raise ValueError("cycle length bound must lie in 3..8")
    facial = _facial_cycles(graph)
    return [
        CycleWitness(c, c in facial, is_separating(graph, c))
        for c in simple_cycles(graph.adjacency, max_len)
    ]


def _check_cycle(graph: PlaneGraph, cycle: Sequence[int]) -> tuple[int, ...]:
    c = tuple(cycle)
    if len(c) < 3 or len(set(c)) != len(c):
        raise NotACycle(f"{c} is not a simple cycle")
    for i in range(len(c)):
        a, b = c[i], c[(i + 1) % len(c)]
        if not (1 <= a <= graph.order and 1 <= b <= graph.order) or not graph.has_edge(a, b):
            raise NotACycle(f"{a}-{b} is not an edge")
    return c


def cycle_sides(graph: PlaneGraph, cycle: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Vertices strictly on either side of a cycle under the embedding.

    The first set holds the vertices reached from the clockwise wedge between
    the next and the previous cycle vertex; the second the rest of ``G - C``.
    """
    c = _check_cycle(graph, cycle)
    on_c = set(c)
    seeds_a: set[int] = set()
    seeds_b: set[int] = set()
    k = len(c)
    for i, x in enumerate(c):
        prev, nxt = c[i - 1], c[(i + 1) % k]
        nbrs = graph.neighbors(x)
        d = len(nbrs)
        j = graph._pos[x - 1][nxt]
        side_a = True
        for step in range(1, d):
            y = nbrs[(j + step) % d]
            if y == prev:
                side_a = False
                continue
            if y in on_c:
                continue
            (seeds_a if side_a else seeds_b).add(y)

    def grow(seeds: set[int]) -> frozenset[int]:
        seen = set(seeds)
        queue = deque(seeds)
        while queue:
            v = queue.popleft()
            for u in graph.neighbors(v):
                if u not in on_c and u not in seen:
                    seen.add(u)
                    queue.append(u)
        return frozenset(seen)

    side_a, side_b = grow(seeds_a), grow(seeds_b)
    if side_a & side_b:
        raise EulerViolation("cycle sides overlap; embedding is not planar")
    return side_a, side_b


def is_separating(graph: PlaneGraph, cycle: Sequence[int]) -> bool:
    a, b = cycle_sides(graph, cycle)
    return bool(a) and bool(b)


# ---------------------------------------------------------------------------
# family F


@dataclass(frozen=True)
class FamilyVerdict:
    in_family: bool
    kind: str | None = None  # "5-cycle" or "adjacent-triangles"
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.in_family


def check_family_membership(graph) -> FamilyVerdict:
    """Membership in the class of graphs with no 5-cycle and no two triangles sharing an edge."""
    adj = adjacency_of(graph)
    cycles = simple_cycles(adj, 5)
    for c in cycles:
        if len(c) == 5:
            return FamilyVerdict(False, "5-cycle", c)
    triangles = [c for c in cycles if len(c) == 3]
    edge_sets = [frozenset(frozenset((c[i], c[(i + 1) % 3])) for i in range(3)) for c in triangles]
    for i in range(len(triangles)):
        for j in range(i + 1, len(triangles)):
            if edge_sets[i] & edge_sets[j]:
                return FamilyVerdict(False, "adjacent-triangles", (triangles[i], triangles[j]))
    return FamilyVerdict(True)


def has_triangle(graph) -> bool:
    return bool(simple_cycles(adjacency_of(graph), 3))


# ---------------------------------------------------------------------------
# rooted graphs


@dataclass(frozen=True)
class RootedPlaneGraph:
    """A plane graph with a designated outer face whose boundary plays the role of C0."""

    base: PlaneGraph
    outer_index: int
    c0_hits: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        c0 = self.c0
        hits = tuple(len(f.vertices & c0) for f in self.base.faces)
        object.__setattr__(self, "c0_hits", hits)

    @property
    def outer(self) -> Face:
        return self.base.faces[self.outer_index]

    @cached_property
    def c0(self) -> frozenset[int]:
        f = self.base.faces[self.outer_index]
        return f.vertices if f.walk else frozenset(self.base.vertices)

    @property
    def c0_walk(self) -> tuple[int, ...]:
        return self.outer.walk

    @property
    def c0_length(self) -> int:
        return self.outer.degree

    @property
    def outer_is_cycle(self) -> bool:
        return self.outer.is_cycle

    def on_c0(self, v: int) -> bool:
        return v in self.c0

    def interior(self, v: int) -> bool:
        return v not in self.c0

    def inner_faces(self) -> list[Face]:
        return [f for f in self.base.faces if f.index != self.outer_index]

    def c0_count(self, face: Face) -> int:
        """|b(f) ∩ C0|."""
        return self.c0_hits[face.index]

    def face_class(self, face: Face) -> tuple[int, int]:
        """(degree, |b(f) ∩ C0|), e.g. (4, 2) for a face of F4''."""
        return face.degree, self.c0_hits[face.index]

    def in_F(self, face: Face, k: int | None = None) -> bool:
        return (
            face.index != self.outer_index
            and self.c0_hits[face.index] == 0
            and (k is None or face.degree == k)
        )

    def face_classes(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for f in self.inner_faces():
            out.setdefault(self.face_class(f), []).append(f.index)
        return out

    @cached_property
    def chords(self) -> tuple[tuple[int, int], ...]:
        """Edges joining two C0 vertices that are not consecutive on the outer walk."""
        w = self.c0_walk
        consecutive = {frozenset((w[i], w[(i + 1) % len(w)])) for i in range(len(w))}
        c0 = self.c0
        return tuple(
            (u, v) for (u, v) in self.base.edges if u in c0 and v in c0 and frozenset((u, v)) not in consecutive
        )

    @cached_property
    def low_degree_interior(self) -> tuple[int, ...]:
        """Interior vertices of degree < 3 (allowed here, flagged for reports)."""
        return tuple(v for v in self.base.vertices if v not in self.c0 and self.base.degree(v) < 3)


def root_at(graph: PlaneGraph, cycle: Sequence[int]) -> RootedPlaneGraph:
    target = canonical_cycle(tuple(cycle))
    if len(set(target)) != len(target):
        raise NotAFace(f"{tuple(cycle)} is not a cycle")
    for f in graph.faces:
        if f.is_cycle and len(f.walk) == len(target) and canonical_cycle(f.walk) == target:
            return RootedPlaneGraph(graph, f.index)
    raise NotAFace(f"{tuple(cycle)} does not bound a face")


def root_at_face(graph: PlaneGraph, index: int = 0) -> RootedPlaneGraph:
    if not 0 <= index < len(graph.faces):
        raise NotAFace(f"no face with index {index}")
    return RootedPlaneGraph(graph, index)


def default_root(graph: PlaneGraph) -> RootedPlaneGraph:
    """Root at the least facial triangle, else the least facial cycle, else face 0."""
    best = None
    for f in graph.faces:
        if f.is_cycle:
            key = (f.degree != 3, f.degree, canonical_cycle(f.walk))
            if best is None or key < best[0]:
                best = (key, f.index)
    return RootedPlaneGraph(graph, best[1] if best else 0)


# ---------------------------------------------------------------------------
# contraction


@dataclass(frozen=True)
class ContractedGraph:
    adjacency: dict[int, frozenset[int]]
    mapping: dict[int, int]
    embedding: PlaneGraph | None

    @property
    def order(self) -> int:
        return len(self.adjacency)

    @property
    def embedding_status(self) -> str:
        return "plane" if self.embedding is not None else "none"


def contract_sets(graph: PlaneGraph, *sets: Iterable[int]) -> ContractedGraph:
    """Identify each vertex set to a single vertex, merging parallel edges."""
    groups = [frozenset(s) for s in sets]
    seen: set[int] = set()
    for g in groups:
        if not g:
            raise GraphError("cannot contract an empty set")
        if g & seen:
            raise GraphError("contraction sets must be pairwise disjoint")
        seen |= g
        for u in g:
            for v in g:
                if u < v and graph.has_edge(u, v):
                    raise LoopCreated(f"{u} and {v} are adjacent; identifying them makes a loop")
    rep = {v: v for v in graph.vertices}
    for g in groups:
        m = min(g)
        for v in g:
            rep[v] = m
    reps = sorted(set(rep.values()))
    new = {r: i + 1 for i, r in enumerate(reps)}
    mapping = {v: new[rep[v]] for v in graph.vertices}
    adj: dict[int, set[int]] = {i: set() for i in new.values()}
    for u, v in graph.edges:
        a, b = mapping[u], mapping[v]
        adj[a].add(b)
        adj[b].add(a)
    frozen = {v: frozenset(n) for v, n in adj.items()}
    return ContractedGraph(frozen, mapping, _embed(frozen))


def _embed(adj: Mapping[int, frozenset[int]]) -> PlaneGraph | None:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(adj)
    g.add_edges_from((u, v) for u in adj for v in adj[u] if u < v)
    planar, emb = nx.check_planarity(g)
    if not planar:
        return None
    return PlaneGraph({v: list(emb.neighbors_cw_order(v)) for v in sorted(adj)})
