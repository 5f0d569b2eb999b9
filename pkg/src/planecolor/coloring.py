"""Defective colorings: validation, exact search and superextension.

A ``(c1, ..., ck)``-coloring gives each vertex a colour in ``1..k`` such that
a vertex of colour ``i`` has at most ``c_i`` neighbours of its own colour.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    BadC0Length,
    ColoringError,
    ColorOutOfRange,
    InvalidPrecoloring,
    NotInFamily,
)
from .plane_graph import RootedPlaneGraph, adjacency_of, check_family_membership

Coloring = dict[int, int]


@dataclass(frozen=True)
class ColorSpec:
    caps: tuple[int, ...]

    def __post_init__(self):
        caps = tuple(int(c) for c in self.caps)
        if not caps or any(c < 0 for c in caps):
            raise ColoringError(f"invalid caps {self.caps!r}")
        object.__setattr__(self, "caps", caps)

    @classmethod
    def parse(cls, text: str) -> "ColorSpec":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def k(self) -> int:
        return len(self.caps)

    @property
    def colors(self) -> range:
        return range(1, len(self.caps) + 1)

    def cap(self, color: int) -> int:
        return self.caps[color - 1]

    def __le__(self, other: "ColorSpec") -> bool:
        return self.k == other.k and all(a <= b for a, b in zip(self.caps, other.caps))

    def __str__(self) -> str:
        return ",".join(map(str, self.caps))


SPEC_110 = ColorSpec((1, 1, 0))


@dataclass(frozen=True)
class Violation:
    vertex: int
    defect: int
    cap: int


def defects(graph, coloring: Mapping[int, int]) -> dict[int, int]:
    """Same-coloured neighbour count of every coloured vertex (edges to uncoloured vertices ignored)."""
    adj = adjacency_of(graph)
    return {
        v: sum(1 for u in adj[v] if coloring.get(u) == c)
        for v, c in coloring.items()
    }


def validate(graph, spec: ColorSpec, coloring: Mapping[int, int], total: bool = False) -> Violation | None:
    """First violation in vertex order, or ``None`` when the colouring is valid."""
    adj = adjacency_of(graph)
    for v, c in coloring.items():
        if v not in adj:
            raise ColoringError(f"vertex {v} is not in the graph")
        if c not in spec.colors:
            raise ColorOutOfRange(f"colour {c} of vertex {v} outside 1..{spec.k}")
    if total:
        missing = [v for v in adj if v not in coloring]
        if missing:
            raise ColoringError(f"colouring is not total; vertex {min(missing)} is uncoloured")
    for v in sorted(coloring):
        c = coloring[v]
        d = sum(1 for u in adj[v] if coloring.get(u) == c)
        if d > spec.cap(c):
            return Violation(v, d, spec.cap(c))
    return None


def is_valid(graph, spec: ColorSpec, coloring: Mapping[int, int], total: bool = False) -> bool:
    return validate(graph, spec, coloring, total) is None


def solve(
    graph,
    spec: ColorSpec,
    fixed: Mapping[int, int] | None = None,
    forbidden: Mapping[int, Iterable[int]] | None = None,
) -> Coloring | None:
    """Lexicographically least valid total extension of ``fixed``, or ``None``.

    Vertices are taken in increasing order and colours in ``1..k``; ``forbidden``
    removes colours from individual free vertices.  The search is complete.
    """
    adj = adjacency_of(graph)
    fixed = dict(fixed or {})
    if validate(graph, spec, fixed) is not None:
        return None
    verts = sorted(adj)
    free = [v for v in verts if v not in fixed]
    nbrs = {v: tuple(adj[v]) for v in verts}
    color = dict(fixed)
    defect = {v: 0 for v in verts}
    for v, c in fixed.items():
        defect[v] = sum(1 for u in nbrs[v] if color.get(u) == c)
    caps = (None,) + spec.caps
    allowed = {
        v: tuple(c for c in spec.colors if c not in set((forbidden or {}).get(v, ())))
        for v in free
    }

    def assign(v: int, c: int) -> list[int] | None:
        # returns the same-coloured neighbours whose defect grows, or None if infeasible
        same = [u for u in nbrs[v] if color.get(u) == c]
        if len(same) > caps[c]:
            return None
        for u in same:
            if defect[u] + 1 > caps[c]:
                return None
        return same

    def search(i: int) -> bool:
        if i == len(free):
            return True
        v = free[i]
        for c in allowed[v]:
            same = assign(v, c)
            if same is None:
                continue
            color[v] = c
            defect[v] = len(same)
            for u in same:
                defect[u] += 1
            if search(i + 1):
                return True
            for u in same:
                defect[u] -= 1
            del color[v]
            defect[v] = 0
        return False

    if search(0):
        return {v: color[v] for v in verts}
    return None


def brute_force_colorable(graph, spec: ColorSpec) -> bool:
    """Reference decision by trying all ``k**n`` assignments."""
    adj = adjacency_of(graph)
    verts = sorted(adj)
    for combo in itertools.product(spec.colors, repeat=len(verts)):
        col = dict(zip(verts, combo))
        if all(sum(1 for u in adj[v] if col[u] == col[v]) <= spec.cap(col[v]) for v in verts):
            return True
    return False


# ---------------------------------------------------------------------------
# superextension


def induced(graph, vertices: Iterable[int]) -> dict[int, frozenset[int]]:
    adj = adjacency_of(graph)
    keep = set(vertices)
    return {v: adj[v] & keep for v in sorted(keep)}


def superextension_forbidden(rooted: RootedPlaneGraph, precoloring: Mapping[int, int]) -> dict[int, frozenset[int]]:
    return _forbidden_outside(rooted.base, rooted.c0, precoloring)


def _forbidden_outside(graph, inside, precoloring: Mapping[int, int]) -> dict[int, frozenset[int]]:
    adj = adjacency_of(graph)
    return {v: frozenset(precoloring[u] for u in adj[v] if u in inside) for v in adj if v not in inside}


def superextend_subgraph(
    graph, vertices: Iterable[int], precoloring: Mapping[int, int], spec: ColorSpec = SPEC_110
) -> Coloring | None:
    """Extend a colouring of the subgraph induced by ``vertices`` so that no other vertex repeats a neighbour's colour there."""
    inside = frozenset(vertices)
    if set(precoloring) != inside:
        raise InvalidPrecoloring("precolouring must colour exactly the chosen vertices")
    for v, c in precoloring.items():
        if c not in spec.colors:
            raise InvalidPrecoloring(f"colour {c} of vertex {v} outside 1..{spec.k}")
    if validate(induced(graph, inside), spec, precoloring) is not None:
        raise InvalidPrecoloring("precolouring is not valid on the induced subgraph")
    return solve(graph, spec, precoloring, _forbidden_outside(graph, inside, precoloring))


def superextend(
    rooted: RootedPlaneGraph, precoloring: Mapping[int, int], spec: ColorSpec = SPEC_110
) -> Coloring | None:
    """Extend a colouring of C0 so that no outside vertex shares a colour with a C0-neighbour."""
    if set(precoloring) != set(rooted.c0):
        raise InvalidPrecoloring("precolouring must colour exactly the vertices of C0")
    return superextend_subgraph(rooted.base, rooted.c0, precoloring, spec)


def first_nonextending_precoloring(graph, vertices: Iterable[int], spec: ColorSpec = SPEC_110) -> Coloring | None:
    """The least valid colouring of the induced subgraph that fails to superextend, or None when all do."""
    sub = induced(graph, vertices)
    for pre in precolorings(sub, spec):
        if superextend_subgraph(graph, sub, pre, spec) is None:
            return pre
    return None


def precolorings(
    subgraph: Mapping[int, frozenset[int]], spec: ColorSpec, symmetry_reduction: bool = False
) -> Iterator[Coloring]:
    """Valid colourings of a small graph in lexicographic order.

    With ``symmetry_reduction`` only the least member of each orbit under
    permutations of colours with equal caps is produced.
    """
    verts = sorted(subgraph)
    classes: dict[int, list[int]] = {}
    for c in spec.colors:
        classes.setdefault(spec.cap(c), []).append(c)
    perms = None
    if symmetry_reduction:
        groups = [g for g in classes.values() if len(g) > 1]
        perms = []
        for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
            m = {c: c for c in spec.colors}
            for g, p in zip(groups, choice):
                m.update(zip(g, p))
            perms.append(m)
    for combo in itertools.product(spec.colors, repeat=len(verts)):
        if perms is not None and any(tuple(m[c] for c in combo) < combo for m in perms):
            continue
        col = dict(zip(verts, combo))
        if validate(subgraph, spec, col) is None:
            yield col


@dataclass
class SuperextensionReport:
    ok: bool
    failing: Coloring | None = None
    tried: int = 0
    c0: tuple[int, ...] = ()
    chords: tuple[tuple[int, int], ...] = ()
    notes: list[str] = field(default_factory=list)


def verify_superextendability(
    rooted: RootedPlaneGraph,
    spec: ColorSpec = SPEC_110,
    symmetry_reduction: bool = False,
    check_family: bool = True,
) -> SuperextensionReport:
    """Try every valid precolouring of C0; ``ok`` iff all of them superextend."""
    if check_family:
        verdict = check_family_membership(rooted.base)
        if not verdict:
            raise NotInFamily(f"graph violates the family conditions: {verdict.kind} {verdict.witness}")
    if not rooted.outer_is_cycle or rooted.c0_length not in (3, 7):
        raise BadC0Length(f"C0 must be a triangle or a 7-cycle, got a walk of length {rooted.c0_length}")
    report = SuperextensionReport(ok=True, c0=rooted.c0_walk, chords=rooted.chords)
    if rooted.chords:
        report.notes.append(f"C0 has chords {rooted.chords}; precolourings use the induced subgraph")
    sub = induced(rooted.base, rooted.c0)
    for pre in precolorings(sub, spec, symmetry_reduction):
        report.tried += 1
        if superextend(rooted, pre, spec) is None:
            report.ok = False
            report.failing = pre
            break
    return report
