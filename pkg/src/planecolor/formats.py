"""Rotation-text documents and the planar_code binary format."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .errors import BadHeader, RotationSyntaxError, TruncatedStream
from .plane_graph import PlaneGraph, RootedPlaneGraph, root_at

ROTATION_HEADER = "pgraph v1"
PLANAR_CODE_HEADER = b">>planar_code<<"


@dataclass(frozen=True)
class RotationDocument:
    graph: PlaneGraph
    outer: tuple[int, ...] | None = None

    @property
    def rooted(self) -> RootedPlaneGraph | None:
        return root_at(self.graph, self.outer) if self.outer else None


def _ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(x) for x in text.split()]
    except ValueError:
        raise RotationSyntaxError(lineno, f"expected integers, got {text.strip()!r}") from None


def parse_rotation(text: str) -> RotationDocument:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines or lines[0][1] != ROTATION_HEADER:
        raise RotationSyntaxError(lines[0][0] if lines else 1, f"missing header {ROTATION_HEADER!r}")
    if len(lines) < 2 or not lines[1][1].startswith("n "):
        raise RotationSyntaxError(lines[1][0] if len(lines) > 1 else 1, "expected 'n <N>'")
    lineno, body = lines[1]
    count = _ints(body[2:], lineno)
    if len(count) != 1 or count[0] < 1:
        raise RotationSyntaxError(lineno, "vertex count must be one positive integer")
    n = count[0]
    rotation: dict[int, list[int]] = {}
    outer = None
    for lineno, body in lines[2:]:
        if body.startswith("outer:"):
            if outer is not None:
                raise RotationSyntaxError(lineno, "duplicate outer line")
            outer = tuple(_ints(body[len("outer:"):], lineno))
            continue
        head, sep, rest = body.partition(":")
        if not sep:
            raise RotationSyntaxError(lineno, "expected '<v>: <neighbours>'")
        v = _ints(head, lineno)
        if len(v) != 1 or not 1 <= v[0] <= n:
            raise RotationSyntaxError(lineno, f"bad vertex id {head.strip()!r}")
        if v[0] in rotation:
            raise RotationSyntaxError(lineno, f"vertex {v[0]} listed twice")
        rotation[v[0]] = _ints(rest, lineno)
    if len(rotation) != n:
        missing = sorted(set(range(1, n + 1)) - set(rotation))
        raise RotationSyntaxError(lines[-1][0], f"missing rotation for vertices {missing}")
    doc = RotationDocument(PlaneGraph(rotation), outer)
    if outer:
        doc.rooted  # raises NotAFace early
    return doc


def format_rotation(graph: PlaneGraph, outer: Iterable[int] | None = None) -> str:
    out = [ROTATION_HEADER, f"n {graph.order}"]
    for v in graph.vertices:
        nbrs = " ".join(map(str, graph.neighbors(v)))
        out.append(f"{v}: {nbrs}" if nbrs else f"{v}:")
    if outer:
        out.append("outer: " + " ".join(map(str, outer)))
    return "\n".join(out) + "\n"


def read_planar_code(data: bytes) -> list[PlaneGraph]:
    pos = 0
    if data.startswith(b">>"):
        if not data.startswith(PLANAR_CODE_HEADER):
            end = data.find(b"<<")
            raise BadHeader(f"unsupported header {data[: end + 2 if end >= 0 else 20]!r}")
        pos = len(PLANAR_CODE_HEADER)
    graphs = []
    while pos < len(data):
        n = data[pos]
        pos += 1
        if n == 0:
            raise TruncatedStream("graph with zero vertices")
        rotation = []
        for _ in range(n):
            nbrs = []
            while True:
                if pos >= len(data):
                    raise TruncatedStream(f"stream ended inside graph {len(graphs) + 1}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                nbrs.append(b)
            rotation.append(nbrs)
        graphs.append(PlaneGraph(rotation))
    return graphs


def write_planar_code(graphs: Iterable[PlaneGraph], header: bool = True) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for g in graphs:
        if g.order > 255:
            raise ValueError("single-byte planar_code holds at most 255 vertices")
        out.append(g.order)
        for v in g.vertices:
            out.extend(g.neighbors(v))
            out.append(0)
    return bytes(out)


@lru_cache(maxsize=1)
def fixtures() -> dict[str, RotationDocument]:
    """Named hand-picked graphs shipped with the package, keyed by file stem."""
    folder = resources.files("planecolor.data").joinpath("fixtures")
    out = {}
    for entry in sorted(folder.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".rot"):
            out[entry.name[:-4]] = parse_rotation(entry.read_text(encoding="utf-8"))
    return out


def load_graphs(path: str, fmt: str | None = None) -> list[RotationDocument]:
    """Read a rotation-text file or a planar_code stream; ``fmt`` defaults from the extension."""
    if fmt is None:
        fmt = "pcode" if path.endswith((".pc", ".pcode")) else "rot"
    if fmt == "pcode":
        with open(path, "rb") as fh:
            return [RotationDocument(g) for g in read_planar_code(fh.read())]
    if fmt != "rot":
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, encoding="utf-8") as fh:
        return [parse_rotation(fh.read())]
