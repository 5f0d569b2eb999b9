"""Reducible configurations and a brute-force local extendability check.

A configuration is a small abstract graph ``C`` split into a core ``S`` (the
vertices deleted and re-coloured) and a shell ``T``.  Shell vertices carry an
*allowance*: how many same-coloured neighbours inside ``C`` they can still
absorb once their outside neighbours are coloured.  Vertices in ``R`` are
shell vertices whose whole neighbourhood is inside ``C``, so they may be
recoloured freely.  Equalities force two shell vertices to share a colour,
which is how an identification argument is expressed.

``verify_local_extendability`` checks that every admissible shell colouring
extends to the core.  Shell colourings are swept in lexicographic order with
a dynamic programme whose state is exactly what the extension problem can
see, so each distinct situation is solved once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from .coloring import SPEC_110, ColorSpec
from .errors import ConfigTooLarge, FormatError, InvalidConfiguration
from .plane_graph import RootedPlaneGraph

MAX_SHELL = 14
_POOL = 128


@dataclass(frozen=True)
class Configuration:
    name: str
    order: int
    edges: tuple[tuple[int, int], ...]
    core: frozenset[int]
    recolor: frozenset[int] = frozenset()
    allowance: Mapping[int, int] = field(default_factory=dict)
    equalities: tuple[tuple[int, int], ...] = ()
    spec: ColorSpec = SPEC_110
    anchor: str = ""
    tag: str = ""
    pattern: str = ""
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))
        object.__setattr__(self, "core", frozenset(self.core))
        object.__setattr__(self, "recolor", frozenset(self.recolor))
        object.__setattr__(self, "equalities", tuple(sorted(tuple(sorted(e)) for e in self.equalities)))
        object.__setattr__(self, "allowance", dict(sorted(self.allowance.items())))
        self._check()

    def _check(self) -> None:
        verts = set(self.vertices)
        for u, v in self.edges:
            if u == v or u not in verts or v not in verts:
                raise InvalidConfiguration(f"{self.name}: bad edge {u}-{v}")
        if len(set(self.edges)) != len(self.edges):
            raise InvalidConfiguration(f"{self.name}: repeated edge")
        if not self.core <= verts:
            raise InvalidConfiguration(f"{self.name}: core outside the vertex range")
        if not self.recolor <= set(self.shell):
            raise InvalidConfiguration(f"{self.name}: recolourable vertices must be shell vertices")
        fixed = set(self.fixed)
        for v, a in self.allowance.items():
            if v not in fixed or a < 0:
                raise InvalidConfiguration(f"{self.name}: allowance for {v} is not a fixed shell entry")
        for u, v in self.equalities:
            if u not in fixed or v not in fixed:
                raise InvalidConfiguration(f"{self.name}: equality {u}={v} must join fixed shell vertices")

    @property
    def vertices(self) -> range:
        return range(1, self.order + 1)

    @property
    def shell(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v not in self.core)

    @property
    def fixed(self) -> tuple[int, ...]:
        """Shell vertices whose colour is given (``T`` minus ``R``)."""
        return tuple(v for v in self.shell if v not in self.recolor)

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(sorted(self.core | self.recolor))

    def allow(self, v: int) -> int:
        return self.allowance.get(v, 0)

    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    def replace(self, **changes) -> "Configuration":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(changes)
        return Configuration(**data)


@dataclass
class ReducibilityReport:
    name: str
    ok: bool
    witness: dict[int, int] | None = None
    precolorings: int = 0
    extendable: int = 0
    signatures: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "witness": self.witness,
            "precolorings": self.precolorings,
            "extendable": self.extendable,
            "signatures": self.signatures,
        }


# ---------------------------------------------------------------------------
# verification


def _sweep(cfg: Configuration):
    """Yield ``(state, least_precolouring, count)`` for every reachable extension state.

    A state is ``(forbidden, loose)``: per free vertex the colours it may not
    take, and for each shell vertex that can still absorb defects a triple
    ``(vertex, colour, remaining budget)``.
    """
    adj = cfg.adjacency()
    spec = cfg.spec
    fixed = cfg.fixed
    index = {v: i for i, v in enumerate(fixed)}
    free = cfg.free
    fpos = {v: i for i, v in enumerate(free)}
    fixed_set = set(fixed)
    partners: dict[int, list[int]] = {v: [] for v in fixed}
    for u, v in cfg.equalities:
        partners[u].append(v)
        partners[v].append(u)
    tnbrs = {v: [u for u in adj[v] if u in fixed_set] for v in fixed}
    # a fixed vertex is settled once its last fixed neighbour has been coloured
    settle_at: dict[int, list[int]] = {i: [] for i in range(len(fixed))}
    for v in fixed:
        last = max([index[v]] + [index[u] for u in tnbrs[v]])
        settle_at[last].append(v)
    settle = {v: i for i, vs in settle_at.items() for v in vs}
    # colours stay in the state until every vertex that reads them has settled
    release = {
        v: max([settle[v]] + [settle[u] for u in tnbrs[v]] + [index[u] for u in partners[v]]) for v in fixed
    }

    start = ((frozenset(),) * len(free), (), ())
    states: dict = {start: ((), 1)}
    for i, t in enumerate(fixed):
        nxt: dict = {}
        for (forb, loose, pending), (prefix, count) in states.items():
            colors = dict(pending)
            for c in spec.colors:
                if any(p in colors and colors[p] != c for p in partners[t]):
                    continue
                cols = dict(colors)
                cols[t] = c
                new_forb = list(forb)
                new_loose = list(loose)
                dead = False
                for s in settle_at[i]:
                    cs = cols[s]
                    budget = min(cfg.allow(s), spec.cap(cs))
                    budget -= sum(1 for u in tnbrs[s] if cols[u] == cs)
                    if budget < 0:
                        dead = True
                        break
                    if budget == 0:
                        for u in adj[s]:
                            if u in fpos:
                                new_forb[fpos[u]] = new_forb[fpos[u]] | {cs}
                    else:
                        new_loose.append((s, cs, budget))
                if dead:
                    continue
                keep = tuple(sorted((v, cols[v]) for v in cols if release[v] > i))
                key = (tuple(new_forb), tuple(sorted(new_loose)), keep)
                if key in nxt:
                    p, n = nxt[key]
                    nxt[key] = (p, n + count)
                else:
                    nxt[key] = (prefix + (c,), count)
        states = nxt
    for (forb, loose, _), (prefix, count) in states.items():
        yield (forb, loose), dict(zip(fixed, prefix)), count


class _Extender:
    """Backtracking search for a colouring of the free vertices given a sweep state."""

    def __init__(self, cfg: Configuration):
        adj = cfg.adjacency()
        self.spec = cfg.spec
        self.free = cfg.free
        fpos = {v: i for i, v in enumerate(self.free)}
        # order free vertices so each one sees as many already-coloured neighbours as possible
        order: list[int] = []
        left = set(range(len(self.free)))
        while left:
            placed = set(order)
            best = max(
                sorted(left),
                key=lambda i: (sum(1 for u in adj[self.free[i]] if fpos.get(u) in placed), len(adj[self.free[i]])),
            )
            order.append(best)
            left.remove(best)
        self.order = order
        self.prev = {i: [fpos[u] for u in adj[self.free[i]] if u in fpos and order.index(fpos[u]) < order.index(i)]
                     for i in order}
        self.shell_nbrs = {i: [u for u in adj[self.free[i]] if u not in fpos] for i in order}

    def __call__(self, forb, loose) -> dict[int, int] | None:
        spec = self.spec
        budget = {s: (c, b) for s, c, b in loose}
        n = len(self.free)
        color = [0] * n
        count = [0] * n
        used = dict.fromkeys(budget, 0)
        order = self.order
        options = [[c for c in spec.colors if c not in forb[i]] for i in range(n)]
        loose_by = {
            i: [(s, budget[s][0], budget[s][1]) for s in self.shell_nbrs[i] if s in budget] for i in order
        }

        def search(k: int) -> bool:
            if k == n:
                return True
            return _search(k)

        def _search(k: int) -> bool:
            i = order[k]
            prev = self.prev[i]
            for c in options[i]:
                cap = spec.cap(c)
                same = [u for u in prev if color[u] == c]
                sl = [s for s, sc, _ in loose_by[i] if sc == c]
                if len(same) + len(sl) > cap:
                    continue
                if any(count[u] >= cap for u in same) or any(used[s] >= budget[s][1] for s in sl):
                    continue
                color[i] = c
                count[i] = len(same) + len(sl)
                for u in same:
                    count[u] += 1
                for s in sl:
                    used[s] += 1
                if search(k + 1):
                    return True
                for u in same:
                    count[u] -= 1
                for s in sl:
                    used[s] -= 1
                color[i] = 0
            return False

        if not search(0):
            return None
        return {v: color[i] for i, v in enumerate(self.free)}


def _extend(cfg: Configuration, forb, loose) -> dict[int, int] | None:
    return _Extender(cfg)(forb, loose)


def verify_local_extendability(cfg: Configuration) -> ReducibilityReport:
    """Check that every admissible colouring of the fixed shell extends to the core and ``R``."""
    if len(cfg.shell) > MAX_SHELL:
        raise ConfigTooLarge(f"{cfg.name}: shell has {len(cfg.shell)} vertices (limit {MAX_SHELL})")
    report = ReducibilityReport(cfg.name, ok=True)
    extend = _Extender(cfg)
    free = cfg.free
    memo: dict = {}
    # a colouring found for one state also works for any state with the same
    # loose budgets that forbids none of its colours; try recent ones first
    pool: dict = {}
    for state, pre, count in _sweep(cfg):
        report.precolorings += count
        if state not in memo:
            forb, loose = state
            recent = pool.setdefault(loose, [])
            hit = next((j for j, sol in enumerate(recent) if all(c not in f for c, f in zip(sol, forb))), None)
            if hit is not None:
                recent.insert(0, recent.pop(hit))
                memo[state] = True
            else:
                ext = extend(forb, loose)
                memo[state] = ext is not None
                if ext is not None:
                    recent.insert(0, tuple(ext[v] for v in free))
                    del recent[_POOL:]
        if memo[state]:
            report.extendable += count
        elif report.ok:
            report.ok = False
            report.witness = pre
    report.signatures = len(memo)
    return report


def extend_precoloring(cfg: Configuration, precoloring: Mapping[int, int]) -> dict[int, int] | None:
    """Extension of one concrete shell colouring, or ``None``; raises if the colouring is inadmissible."""
    adj = cfg.adjacency()
    spec = cfg.spec
    fixed = set(cfg.fixed)
    if set(precoloring) != fixed:
        raise InvalidConfiguration("precolouring must cover exactly the fixed shell vertices")
    for u, v in cfg.equalities:
        if precoloring[u] != precoloring[v]:
            raise InvalidConfiguration(f"equality {u}={v} violated")
    fpos = {v: i for i, v in enumerate(cfg.free)}
    forb = [set() for _ in cfg.free]
    loose = []
    for s in sorted(fixed):
        c = precoloring[s]
        budget = min(cfg.allow(s), spec.cap(c)) - sum(1 for u in adj[s] if u in fixed and precoloring[u] == c)
        if budget < 0:
            raise InvalidConfiguration(f"shell vertex {s} exceeds its allowance")
        if budget == 0:
            for u in adj[s]:
                if u in fpos:
                    forb[fpos[u]].add(c)
        else:
            loose.append((s, c, budget))
    ext = _extend(cfg, [frozenset(f) for f in forb], tuple(loose))
    if ext is None:
        return None
    return {**dict(precoloring), **ext}


# ---------------------------------------------------------------------------
# text format


def format_configuration(cfg: Configuration) -> str:
    lines = [f"config {cfg.name}"]
    if cfg.tag:
        lines.append(f"tag {cfg.tag}")
    if cfg.anchor:
        lines.append(f"anchor {cfg.anchor}")
    if cfg.pattern:
        lines.append(f"pattern {cfg.pattern}")
    lines.append(f"spec {cfg.spec}")
    lines.append(f"vertices {cfg.order}")
    lines.append("edges " + " ".join(f"{u}-{v}" for u, v in cfg.edges))
    lines.append("core " + " ".join(map(str, sorted(cfg.core))))
    lines.append("recolor " + " ".join(map(str, sorted(cfg.recolor))))
    lines.append("allowance " + " ".join(f"{v}:{a}" for v, a in cfg.allowance.items()))
    lines.append("equal " + " ".join(f"{u}={v}" for u, v in cfg.equalities))
    for note in cfg.notes:
        lines.append(f"note {note}")
    lines.append("end")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def format_catalog(configs: Iterable[Configuration]) -> str:
    return "\n".join(format_configuration(c) for c in configs)


def _pairs(text: str, sep: str, lineno: int) -> list[tuple[int, int]]:
    out = []
    for tok in text.split():
        a, s, b = tok.partition(sep)
        if not s:
            raise FormatError(f"line {lineno}: expected '<u>{sep}<v>', got {tok!r}")
        out.append((int(a), int(b)))
    return out


def parse_catalog(text: str) -> list[Configuration]:
    configs = []
    block: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "config":
            if block is not None:
                raise FormatError(f"line {lineno}: 'config' inside an open block")
            block = {"name": rest, "notes": []}
            continue
        if block is None:
            raise FormatError(f"line {lineno}: {key!r} outside a config block")
        try:
            if key == "end":
                configs.append(
                    Configuration(
                        name=block["name"],
                        order=block["order"],
                        edges=tuple(block.get("edges", ())),
                        core=frozenset(block.get("core", ())),
                        recolor=frozenset(block.get("recolor", ())),
                        allowance=dict(block.get("allowance", ())),
                        equalities=tuple(block.get("equal", ())),
                        spec=block.get("spec", SPEC_110),
                        anchor=block.get("anchor", ""),
                        tag=block.get("tag", ""),
                        pattern=block.get("pattern", ""),
                        notes=tuple(block["notes"]),
                    )
                )
                block = None
            elif key in ("tag", "anchor", "pattern"):
                block[key] = rest
            elif key == "note":
                block["notes"].append(rest)
            elif key == "spec":
                block["spec"] = ColorSpec.parse(rest)
            elif key == "vertices":
                block["order"] = int(rest)
            elif key == "edges":
                block["edges"] = _pairs(rest, "-", lineno)
            elif key in ("core", "recolor"):
                block[key] = [int(x) for x in rest.split()]
            elif key == "allowance":
                block["allowance"] = _pairs(rest, ":", lineno)
            elif key == "equal":
                block["equal"] = _pairs(rest, "=", lineno)
            else:
                raise FormatError(f"line {lineno}: unknown key {key!r}")
        except (ValueError, KeyError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from None
    if block is not None:
        raise FormatError("unterminated config block")
    return configs


# ---------------------------------------------------------------------------
# building blocks for the catalog


class _Builder:
    """Assemble a configuration from named core vertices with target degrees.

    Every core vertex is topped up to its degree with fresh shell stubs that
    have no other neighbour in the configuration.
    """

    def __init__(self, name: str, pattern: str):
        self.name = name
        self.pattern = pattern
        self.ids: dict[str, int] = {}
        self.degree: dict[str, int] = {}
        self.edge_names: list[tuple[str, str]] = []
        self.shell_names: list[str] = []

    def core(self, **degrees: int) -> "_Builder":
        for n, d in degrees.items():
            self.ids[n] = len(self.ids) + 1
            self.degree[n] = d
        return self

    def shell(self, *names: str) -> "_Builder":
        for n in names:
            self.ids[n] = len(self.ids) + 1
            self.shell_names.append(n)
        return self

    def edges(self, spec: str) -> "_Builder":
        for tok in spec.split():
            a, b = tok.split("-")
            self.edge_names.append((a, b))
        return self

    def build(self, recolor=(), allowance=None, equal=(), spec=SPEC_110, notes=()) -> Configuration:
        ids = dict(self.ids)
        edges = {tuple(sorted((ids[a], ids[b]))) for a, b in self.edge_names}
        deg = {v: 0 for v in ids.values()}
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        n = len(ids)
        core_ids = set()
        recolor_names = set(recolor)
        for name, d in self.degree.items():
            v = ids[name]
            if name not in recolor_names:
                core_ids.add(v)
            missing = d - deg[v]
            if missing < 0:
                raise InvalidConfiguration(f"{self.name}: {name} has more than {d} neighbours")
            for _ in range(missing):
                n += 1
                edges.add((v, n))
        return Configuration(
            name=self.name,
            order=n,
            edges=tuple(sorted(edges)),
            core=frozenset(core_ids),
            recolor=frozenset(ids[r] for r in recolor),
            allowance={ids[k]: a for k, a in (allowance or {}).items()},
            equalities=tuple((ids[a], ids[b]) for a, b in equal),
            spec=spec,
            pattern=self.pattern,
            notes=tuple(notes),
        )


def _anchors() -> dict[str, tuple[str, str]]:
    text = resources.files("planecolor.data").joinpath("anchors.txt").read_text()
    out = {}
    for line in text.splitlines():
        if line.strip() and not line.startswith("#"):
            name, tag, anchor = (x.strip() for x in line.split("|"))
            out[name] = (tag, anchor)
    return out


def _entries() -> list[Configuration]:
    out = []
    out.append(
        _Builder("three-vertex-two-three-neighbours", "three-vertex-two-three-neighbours")
        .core(v=3, a=3, b=3)
        .edges("v-a v-b")
        .build()
    )
    out.append(
        _Builder("triangle-333", "triangle-33x").core(x=3, y=3, z=3).edges("x-y y-z x-z").build(
            notes=("the 4- bound instantiated at 3",)
        )
    )
    out.append(
        _Builder("triangle-334", "triangle-33x").core(x=3, y=3, z=4).edges("x-y y-z x-z").build(
            notes=("the 4- bound instantiated at 4",)
        )
    )
    out.append(
        _Builder("bad-four-with-two-three-neighbours", "bad-four-with-two-three-neighbours")
        .core(v=4, a=3, b=4, c=3, d=3)
        .edges("v-a v-b a-b v-c v-d")
        .build()
    )
    out.append(
        _Builder("four-vertex-344-and-344", "four-vertex-two-small-triangles")
        .core(v=4, a=3, b=4, c=3, d=4)
        .edges("v-a v-b a-b v-c v-d c-d")
        .build(notes=("second triangle instantiated as (3,4,4)",))
    )
    # a 5-vertex on a bad (3,4,5) triangle and a (4,4,5) triangle whose 4-vertices are both bad
    out.append(
        _Builder("five-vertex-bad-345-and-doubly-bad-445", "five-vertex-bad-345-and-doubly-bad-445")
        .core(v=5, v1=4, v2=3, v3=4, v4=4, v1a=3, v1b=4, v3a=3, v3b=4, v4a=3, v4b=4)
        .shell("v5")
        .edges(
            "v-v1 v-v2 v1-v2 v-v3 v-v4 v3-v4 v-v5 "
            "v1-v1a v1-v1b v1a-v1b v3-v3a v3-v3b v3a-v3b v4-v4a v4-v4b v4a-v4b"
        )
        .build()
    )
    # (3,5,5) triangle u v w; v and w each see a bad (5,4,3) triangle and a pendant 3-vertex
    out.append(
        _Builder("triangle-355-three-weak", "triangle-3hh-three-weak")
        .core(u=3, v=5, w=5, v1=4, v2=3, v3=3, v1a=4, v1b=3, w1=4, w2=3, w3=3, w1a=4, w1b=3)
        .edges(
            "u-v u-w v-w v-v1 v-v2 v1-v2 v-v3 v1-v1a v1-v1b v1a-v1b "
            "w-w1 w-w2 w1-w2 w-w3 w1-w1a w1-w1b w1a-w1b"
        )
        .build(notes=("5+ instantiated at 5; pendant triangles of v3 and w3 lie outside the core",))
    )
    # 5-vertex with a bad (5,4,3) triangle and a 4-face whose diagonal vertex u3 has degree 3
    out.append(
        _Builder("diagonal-three-at-five-vertex", "diagonal-three")
        .core(v=5, v1=4, v2=3, v1a=4, v1b=3, u3=3)
        .shell("v3", "v4", "v5")
        .edges("v-v1 v-v2 v1-v2 v-v3 v-v4 v-v5 v3-u3 v4-u3 v1-v1a v1-v1b v1a-v1b")
        .build(recolor=("u3",), equal=(("v3", "v4"),), notes=("v3 and v4 are identified",))
    )
    out.append(
        _Builder("diagonal-three-at-bad-four-vertex", "diagonal-three")
        .core(v=4, v1=4, v2=3, v1a=4, v1b=3, u3=3)
        .shell("v3", "v4")
        .edges("v-v1 v-v2 v1-v2 v-v3 v-v4 v3-u3 v4-u3 v1-v1a v1-v1b v1a-v1b")
        .build(recolor=("u3",), equal=(("v3", "v4"),), notes=("v3 and v4 are identified",))
    )
    # 4-vertex v with 4-faces v a x b and v b y c, where b and y are 3-vertices
    out.append(
        _Builder("four-vertex-33-four-face-beside-four-face", "four-face-33-beside-small-face")
        .core(v=4, b=3, y=3)
        .shell("a", "c", "d", "x")
        .edges("v-a v-b v-c v-d a-x x-b b-y y-c")
        .build(equal=(("a", "c"),), notes=("a, b and c are identified; b is recoloured afterwards",))
    )
    # poor 5-vertex, face (5,4,3,4) whose 4-vertices both lie on (3,4,4,4) faces through u1 and w
    out.append(
        _Builder("poor-five-545-face-both-q4", "poor-five-434-face-both-q4")
        .core(v1=4, v2=4, w=4)
        .shell("v", "u1", "v1a", "v2a")
        .edges("v-v1 v-v2 v1-u1 v2-u1 u1-w v1-v1a v1a-w v2-v2a v2a-w")
        .build(
            equal=(("u1", "v"), ("u1", "v1a"), ("u1", "v2a")),
            notes=("u1, v1', v2' and v are identified",),
        )
    )
    # poor 5-vertex with d(v1)=d(u1)=d(v3)=3 and a 4-vertex v5
    out.append(
        _Builder("poor-five-three-three-three-and-four", "poor-five-three-pattern")
        .core(v=5, v5=4, v1=3, u1=3, v3=3)
        .shell("v2", "v4", "u2", "u3", "u4", "u5")
        .edges(
            "v-v1 v-v2 v-v3 v-v4 v-v5 v1-u1 u1-v2 v2-u2 u2-v3 v3-u3 u3-v4 v4-u4 u4-v5 v5-u5 u5-v1"
        )
        .build(
            recolor=("v1", "u1", "v3"),
            equal=(("v2", "v4"), ("u4", "u5")),
            notes=("v2 with v4 and u4 with u5 are identified after deleting v and v5",),
        )
    )
    return out


def _exploratory_entries() -> list[Configuration]:
    """Encodings whose local check fails at allowance 0; kept out of the catalog."""
    out = []
    out.append(
        _Builder("weak-three-on-344", "weak-three-on-344")
        .core(v=3, a=4, b=4, w=3)
        .edges("v-a v-b a-b v-w")
        .build()
    )
    out.append(
        _Builder("four-vertex-344-and-444", "four-vertex-two-small-triangles")
        .core(v=4, a=3, b=4, c=4, d=4)
        .edges("v-a v-b a-b v-c v-d c-d")
        .build(notes=("second triangle instantiated as (4,4,4)",))
    )
    return out


@lru_cache(maxsize=1)
def catalog() -> tuple[Configuration, ...]:
    anchors = _anchors()
    out = []
    for cfg in _entries():
        tag, anchor = anchors.get(cfg.name, ("", ""))
        out.append(cfg.replace(tag=tag, anchor=anchor))
    return tuple(out)


def exploratory() -> tuple[Configuration, ...]:
    anchors = _anchors()
    return tuple(cfg.replace(tag=anchors.get(cfg.name, ("", ""))[0], anchor=anchors.get(cfg.name, ("", ""))[1])
                 for cfg in _exploratory_entries())


def find(name: str) -> Configuration:
    for cfg in catalog():
        if name in (cfg.name, cfg.tag):
            return cfg
    raise KeyError(name)


def falsified_variant() -> Configuration:
    """The (3,3,3) triangle with zero allowances, degraded to proper 3-colouring so it must fail."""
    base = find("triangle-333")
    return base.replace(name="triangle-333-proper", spec=ColorSpec((0, 0, 0)), tag="", anchor="", pattern="")


# ---------------------------------------------------------------------------
# scanning concrete graphs


@dataclass(frozen=True)
class Match:
    name: str
    location: tuple[int, ...]
    strict: bool


def scan_graph(rooted: RootedPlaneGraph) -> list[Match]:
    """Occurrences of the catalog patterns, strict when every side condition holds."""
    from . import patterns

    found: list[Match] = []
    for pattern, finder in patterns.FINDERS.items():
        for location, strict in finder(rooted):
            found.append(Match(pattern, tuple(location), strict))
    found.sort(key=lambda m: (m.name, m.location, not m.strict))
    return found
