"""Exact-rational discharging over rooted plane graphs.

Charges start at ``2d(v) - 6`` on vertices, ``d(f) - 6`` on inner faces and
``d(C0) + 6`` on the outer face, which sum to zero on any connected plane
graph.  Charge is then moved by a fixed schedule of rules, each transfer
tagged with its rule id.  Every amount lives in :class:`fractions.Fraction`.

The rule amounts are exposed as small pure functions over degree classes so
that the local case enumerator evaluates exactly the same schedule.

Two readings are fixed here.  The pendant-triangle rule is also paid by C0
vertices of degree 3: such a vertex sits between two 6+-faces and keeps the
3/2 it gets from C0, and the face bound for triangles needs the payment.  A
5-vertex is weak when two of its triangles hold a 3-vertex, one of them is
bad and it has a pendant triangle; the second triangle may carry a 6+-vertex.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .plane_graph import Face, RootedPlaneGraph

F = Fraction

RULE_IDS = ("R1.1", "R1.2", "R2a", "R2b", "R2c", "R2d", "R2.2", "R2.3", "R3", "R4", "R5")
AMOUNTS = frozenset(
    F(x) for x in ("1/6", "1/2", "2/3", "3/4", "5/6", "1", "5/4", "3/2", "7/4", "2", "9/4", "3")
)

# degree classes used by the rule functions; 5 stands for "5 or more"
LOW, THREE, FOUR, HIGH = 2, 3, 4, 5


def degree_class(d: int) -> int:
    if d <= 2:
        return LOW
    return min(d, HIGH)


# ---------------------------------------------------------------------------
# rule amounts


def r11_amount(face_is_344: bool, vertex_has_344: bool) -> Fraction:
    """What an inner 4-vertex gives to one of its triangles."""
    if face_is_344:
        return F(5, 4)
    if vertex_has_344:
        return F(3, 4)
    return F(1)


def r12_amount(others: tuple[int, int, int], rich: bool) -> tuple[Fraction, str | None]:
    """What an inner 4-vertex gives to a 4-face; ``others`` are the classes after it along the face.

    The tiers are tried in order; the second item names an overlap between tiers, if any.
    """
    a, b, c = others
    two_adjacent_threes = (a == b == THREE and c >= FOUR) or (b == c == THREE and a >= FOUR)
    three_four_four = sorted(others) == [THREE, FOUR, FOUR]
    if two_adjacent_threes:
        return F(1), ("rich vertex also matches the 2/3 tier" if rich else None)
    if three_four_four or rich:
        both = three_four_four and rich
        return F(2, 3), ("rich vertex on a {3,4,4,4} face matches the 2/3 tier twice" if both else None)
    return F(1, 2), None


@dataclass(frozen=True)
class Occupant:
    """A vertex on a triangle seen from a 5+ corner: class plus the two roles the rules read."""

    cls: int
    bad: bool = False  # bad 4-vertex
    weak: bool = False  # weak 3-vertex on this triangle


def r21_amount(u: Occupant, w: Occupant, center_weak: bool) -> tuple[Fraction, str | None]:
    """What an inner 5+-vertex gives to one of its triangles; returns (amount, rule id)."""
    pair = sorted((u, w), key=lambda o: o.cls)
    lo, hi = pair
    if lo.cls == LOW:
        return F(0), None
    if lo.cls == THREE and hi.cls == THREE:
        return F(2), "R2a"
    if lo.cls == THREE and hi.cls == FOUR:
        if hi.bad:
            return (F(9, 4) if lo.weak else F(7, 4)), "R2b"
        return (F(2) if lo.weak else F(3, 2)), "R2b"
    if lo.cls == THREE:
        return (F(5, 4) if center_weak else F(7, 4)), "R2c"
    bad = sum(1 for o in pair if o.cls == FOUR and o.bad)
    return (F(3, 2), F(5, 4), F(1))[2 - bad], "R2d"


def r22_amount(others: tuple[int, int, int], fours_poor: bool) -> tuple[Fraction, str | None]:
    """What an inner 5+-vertex gives to a 4-face.

    ``fours_poor`` says whether both 4-vertices of a {3,4,4,5+} face are poor.
    The second item is the matched tier, or ``None`` for faces no tier covers.
    """
    if LOW in others:
        return F(0), None
    a, b, c = others
    threes = sum(1 for x in others if x == THREE)
    if threes == 0:
        return F(1, 2), "no 3-vertex"
    if threes == 2:
        if (a == b == THREE) or (b == c == THREE):
            return F(1), "two adjacent 3-vertices"
        return F(0), None
    if threes == 1:
        rest = sorted(x for x in others if x != THREE)
        if rest == [FOUR, FOUR]:
            return (F(1), "superlight") if fours_poor else (F(5, 6), "light")
        return F(3, 4), "one 3-vertex, two 5+"
    return F(0), None


def r4_amount(face_degree: int, hits: int) -> Fraction:
    if face_degree == 3 and hits == 1:
        return F(3)
    if face_degree == 3 and hits == 2:
        return F(3, 2)
    if face_degree == 4 and hits == 2:
        return F(1)
    return F(0)


def r5_amount(degree: int) -> Fraction:
    return {2: F(2), 3: F(3, 2), 4: F(1), 5: F(1, 2)}.get(degree, F(0))


# ---------------------------------------------------------------------------
# roles


@dataclass
class RoleTags:
    bad4: set[int] = field(default_factory=set)
    bad5: set[int] = field(default_factory=set)
    weak3: set[tuple[int, int]] = field(default_factory=set)  # (vertex, triangle index)
    strong3: set[tuple[int, int]] = field(default_factory=set)
    weak5: set[int] = field(default_factory=set)
    weak5_literal: set[int] = field(default_factory=set)  # second triangle restricted to (5,5-,3)
    weak6: set[int] = field(default_factory=set)
    poor: set[int] = field(default_factory=set)
    rich: set[int] = field(default_factory=set)
    on_c0: set[int] = field(default_factory=set)
    bad_faces: set[int] = field(default_factory=set)
    light: set[int] = field(default_factory=set)
    superlight: set[int] = field(default_factory=set)
    pendant_of: dict[int, set[int]] = field(default_factory=dict)  # triangle -> outer neighbours
    q4: dict[int, set[int]] = field(default_factory=dict)

    def pendants_of_vertex(self, v: int) -> list[int]:
        return sorted(f for f, owners in self.pendant_of.items() if v in owners)

    def is_weak_center(self, v: int) -> bool:
        return v in self.weak5 or v in self.weak6


def _degrees(g, face: Face) -> list[int]:
    return sorted(g.degree(x) for x in face.walk)


def classify_roles(rooted: RootedPlaneGraph) -> RoleTags:
    g = rooted.base
    tags = RoleTags(on_c0=set(rooted.c0))
    f3 = [f for f in rooted.inner_faces() if rooted.in_F(f, 3)]
    f4 = [f for f in rooted.inner_faces() if rooted.in_F(f, 4) and f.is_cycle]
    f4_ids = {f.index for f in f4}

    for f in f3:
        degs = _degrees(g, f)
        if degs == [3, 4, 4]:
            tags.bad4.update(x for x in f.walk if g.degree(x) == 4)
    for f in f3:
        degs = _degrees(g, f)
        if degs[0] == 3 and degs[1] == 4 and degs[2] >= 5:
            four = next(x for x in f.walk if g.degree(x) == 4)
            if four in tags.bad4:
                tags.bad_faces.add(f.index)

    for v in g.vertices:
        if v in rooted.c0:
            continue
        corners = g.incident_faces(v)
        if g.degree(v) >= 1 and all(c.index in f4_ids for c in corners):
            tags.poor.add(v)
        else:
            tags.rich.add(v)

    for f in f3:
        for x in f.walk:
            if g.degree(x) != 3:
                continue
            outer = [y for y in g.neighbors(x) if y not in f.vertices]
            if not outer:
                continue
            y = outer[0]
            tags.pendant_of.setdefault(f.index, set()).add(y)
            if y not in rooted.c0 and g.degree(y) <= 3:
                tags.weak3.add((x, f.index))
            else:
                tags.strong3.add((x, f.index))

    for f in f4:
        degs = _degrees(g, f)
        if degs[0] == 3 and degs[1] == degs[2] == 4 and degs[3] >= 5:
            fours = [x for x in f.walk if g.degree(x) == 4]
            (tags.superlight if all(x in tags.poor for x in fours) else tags.light).add(f.index)

    poor344 = set()
    for f in f4:
        if _degrees(g, f) == [3, 4, 4, 4]:
            poor344.update(x for x in f.walk if g.degree(x) == 4 and x in tags.poor)

    tri_at: dict[int, list[Face]] = defaultdict(list)
    for f in f3:
        for x in f.walk:
            tri_at[x].append(f)
    for v in g.vertices:
        if v in rooted.c0:
            continue
        d = g.degree(v)
        if d >= 5:
            tags.q4[v] = {u for u in g.neighbors(v) if u not in rooted.c0 and u in poor344}
        if d == 5:
            faces = tri_at[v]
            if any(_degrees(g, f) == [3, 3, 5] or (f.index in tags.bad_faces and _degrees(g, f)[2] == 5) for f in faces):
                tags.bad5.add(v)
            with3 = [f for f in faces if _degrees(g, f)[0] == 3]
            small = [f for f in with3 if _is_5_small_3(g, f, v)]
            pendant = bool(tags.pendants_of_vertex(v))
            if pendant and len(with3) >= 2 and any(f.index in tags.bad_faces for f in with3):
                tags.weak5.add(v)
            if pendant and len(small) >= 2 and any(f.index in tags.bad_faces for f in small):
                tags.weak5_literal.add(v)
        elif d == 6:
            faces = tri_at[v]
            bad643 = [f for f in faces if f.index in tags.bad_faces and _degrees(g, f) == [3, 4, 6]]
            other = [f for f in faces if _degrees(g, f)[0] == 3 and _degrees(g, f)[1] >= 5 and f not in bad643]
            if len(bad643) >= 2 and other:
                tags.weak6.add(v)
    return tags


def _is_5_small_3(g, f: Face, v: int) -> bool:
    """A triangle through the 5-vertex ``v`` holding a 3-vertex and a third vertex of degree at most 5."""
    others = sorted(g.degree(x) for x in f.walk if x != v)
    return others[0] == 3 and others[1] <= 5


# ---------------------------------------------------------------------------
# ledger


@dataclass(frozen=True)
class Transfer:
    source: str
    target: str
    amount: Fraction
    rule: str


@dataclass(frozen=True)
class RuleAmbiguity:
    rule: str
    element: str
    message: str


@dataclass
class ChargeLedger:
    initial: dict[str, Fraction]
    transfers: list[Transfer] = field(default_factory=list)
    ambiguities: list[RuleAmbiguity] = field(default_factory=list)
    groups: dict[str, str] = field(default_factory=dict)

    def add(self, source: str, target: str, amount: Fraction, rule: str) -> None:
        if amount:
            self.transfers.append(Transfer(source, target, amount, rule))

    def flag(self, rule: str, element: str, message: str) -> None:
        self.ambiguities.append(RuleAmbiguity(rule, element, message))

    @property
    def final(self) -> dict[str, Fraction]:
        out = dict(self.initial)
        for t in self.transfers:
            out[t.source] -= t.amount
            out[t.target] += t.amount
        return out

    def flows(self, element: str) -> dict[str, Fraction]:
        """Net per-rule flow into ``element`` (negative for outflow)."""
        out: dict[str, Fraction] = defaultdict(Fraction)
        for t in self.transfers:
            if t.target == element:
                out[t.rule] += t.amount
            if t.source == element:
                out[t.rule] -= t.amount
        return dict(out)

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), F(0))

    def total_final(self) -> Fraction:
        return sum(self.final.values(), F(0))

    def group_sums(self) -> dict[str, Fraction]:
        final = self.final
        out: dict[str, Fraction] = {}
        for name in GROUP_ORDER:
            members = [e for e, gname in self.groups.items() if gname == name]
            if members:
                out[name] = sum((final[e] for e in members), F(0))
        return out

    # -- serialization --------------------------------------------------------

    def to_text(self) -> str:
        final = self.final
        lines = ["element  initial  flows  final"]
        for e in self.initial:
            flows = self.flows(e)
            parts = " ".join(f"{r}:{_signed(flows[r])}" for r in RULE_IDS if flows.get(r))
            lines.append(f"{e}  {self.initial[e]}  {parts or '-'}  {final[e]}")
        lines.append("")
        for name, total in self.group_sums().items():
            lines.append(f"group {name}: {total}")
        lines.append(f"sum initial: {self.total_initial()}")
        lines.append(f"sum final: {self.total_final()}")
        for a in self.ambiguities:
            lines.append(f"ambiguity {a.rule} {a.element}: {a.message}")
        return "\n".join(lines) + "\n"

    def to_keyvalue(self) -> str:
        lines = [f"initial.{e}={q}" for e, q in self.initial.items()]
        for i, t in enumerate(self.transfers):
            lines.append(f"transfer.{i:04d}={t.source}>{t.target}:{t.amount}:{t.rule}")
        lines += [f"final.{e}={q}" for e, q in self.final.items()]
        lines += [f"group.{n}={q}" for n, q in self.group_sums().items()]
        lines.append(f"sum.initial={self.total_initial()}")
        lines.append(f"sum.final={self.total_final()}")
        lines += [f"ambiguity.{i:04d}={a.rule}:{a.element}:{a.message}" for i, a in enumerate(self.ambiguities)]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        final = self.final
        return {
            "initial": {e: str(q) for e, q in self.initial.items()},
            "transfers": [
                {"source": t.source, "target": t.target, "amount": str(t.amount), "rule": t.rule}
                for t in self.transfers
            ],
            "final": {e: str(q) for e, q in final.items()},
            "groups": {n: str(q) for n, q in self.group_sums().items()},
            "sum_initial": str(self.total_initial()),
            "sum_final": str(self.total_final()),
            "ambiguities": [a.__dict__ for a in self.ambiguities],
        }


GROUP_ORDER = ("c0_vertices", "outer_face", "faces_touching_c0", "faces_off_c0", "interior_vertices")


def _signed(q: Fraction) -> str:
    return f"+{q}" if q > 0 else str(q)


def vkey(v: int) -> str:
    return f"v{v}"


def fkey(rooted: RootedPlaneGraph, index: int) -> str:
    return "C0" if index == rooted.outer_index else f"f{index}"


def initial_charges(rooted: RootedPlaneGraph) -> ChargeLedger:
    g = rooted.base
    initial: dict[str, Fraction] = {}
    groups: dict[str, str] = {}
    for v in g.vertices:
        initial[vkey(v)] = F(2 * g.degree(v) - 6)
        groups[vkey(v)] = "c0_vertices" if v in rooted.c0 else "interior_vertices"
    for f in rooted.inner_faces():
        initial[fkey(rooted, f.index)] = F(f.degree - 6)
        groups[fkey(rooted, f.index)] = "faces_touching_c0" if rooted.c0_count(f) else "faces_off_c0"
    initial["C0"] = F(rooted.c0_length + 6)
    groups["C0"] = "outer_face"
    return ChargeLedger(initial=initial, groups=groups)


def apply_rules(rooted: RootedPlaneGraph, tags: RoleTags | None = None) -> ChargeLedger:
    g = rooted.base
    tags = tags or classify_roles(rooted)
    ledger = initial_charges(rooted)
    c0 = rooted.c0
    f3_ids = {f.index for f in rooted.inner_faces() if rooted.in_F(f, 3)}
    f4_ids = {f.index for f in rooted.inner_faces() if rooted.in_F(f, 4) and f.is_cycle}

    def others_after(face: Face, v: int) -> tuple[int, ...]:
        w = face.walk
        p = w.index(v)
        return tuple(degree_class(g.degree(w[(p + j) % len(w)])) for j in range(1, len(w)))

    for v in g.vertices:
        d = g.degree(v)
        if v in c0 or d < 4:
            continue
        corners = g.incident_faces(v)
        tris = [f for f in corners if f.index in f3_ids]
        if d == 4:
            t344 = [f for f in tris if _degrees(g, f) == [3, 4, 4]]
            if len(t344) >= 2:
                ledger.flag("R1.1", vkey(v), "4-vertex on two (3,4,4) triangles; each gets 5/4")
            for f in tris:
                ledger.add(vkey(v), fkey(rooted, f.index), r11_amount(f in t344, bool(t344)), "R1.1")
            for f in corners:
                if f.index in f4_ids:
                    amount, overlap = r12_amount(others_after(f, v), v in tags.rich)
                    if overlap:
                        ledger.flag("R1.2", vkey(v), f"face {fkey(rooted, f.index)}: {overlap}")
                    ledger.add(vkey(v), fkey(rooted, f.index), amount, "R1.2")
        else:
            weak = tags.is_weak_center(v)
            if v in tags.weak5 and v not in tags.weak5_literal and any(
                _degrees(g, f)[0] == 3 and _degrees(g, f)[1] >= 5 for f in tris
            ):
                ledger.flag("R2c", vkey(v), "weak only when the second triangle may carry a 6+-vertex")
            for f in tris:
                u, w = (x for x in f.walk if x != v)
                amount, rule = r21_amount(_occupant(g, tags, u, f), _occupant(g, tags, w, f), weak)
                if rule is None:
                    ledger.flag("R2", vkey(v), f"triangle {fkey(rooted, f.index)} matches no case")
                    continue
                ledger.add(vkey(v), fkey(rooted, f.index), amount, rule)
            for f in corners:
                if f.index in f4_ids:
                    fours = [x for x in f.walk if g.degree(x) == 4]
                    amount, tier = r22_amount(others_after(f, v), all(x in tags.poor for x in fours))
                    if tier is None:
                        ledger.flag("R2.2", vkey(v), f"4-face {fkey(rooted, f.index)} matches no tier")
                        continue
                    ledger.add(vkey(v), fkey(rooted, f.index), amount, "R2.2")
            for u in sorted(tags.q4.get(v, ())):
                ledger.add(vkey(v), vkey(u), F(1, 6), "R2.3")

    for f_index in sorted(tags.pendant_of):
        for y in sorted(tags.pendant_of[f_index]):
            # C0 vertices pay even at degree 3; see the module notes
            if g.degree(y) >= 4 or y in c0:
                ledger.add(vkey(y), fkey(rooted, f_index), F(1, 2), "R3")

    for v in sorted(c0):
        seen = set()
        for f in g.incident_faces(v):
            if f.index == rooted.outer_index or f.index in seen:
                continue
            seen.add(f.index)
            ledger.add(vkey(v), fkey(rooted, f.index), r4_amount(f.degree, rooted.c0_count(f)), "R4")

    for v in sorted(c0):
        ledger.add("C0", vkey(v), r5_amount(g.degree(v)), "R5")
    _r5_extra(rooted, ledger)
    return ledger


def _occupant(g, tags: RoleTags, x: int, f: Face) -> Occupant:
    return Occupant(degree_class(g.degree(x)), x in tags.bad4, (x, f.index) in tags.weak3)


def _r5_extra(rooted: RootedPlaneGraph, ledger: ChargeLedger) -> None:
    g = rooted.base
    if rooted.c0_length != 7 or not rooted.outer_is_cycle:
        return
    twos = [v for v in rooted.c0_walk if g.degree(v) == 2]
    if len(twos) != 6:
        return
    candidates = sorted(
        {f.index for v in twos for f in g.incident_faces(v) if f.index != rooted.outer_index}
    )
    if not candidates:
        return
    if len(candidates) > 1:
        ledger.flag("R5", "C0", f"several faces touch the 2-vertices {candidates}; the least pays")
    ledger.add(fkey(rooted, candidates[0]), "C0", F(1), "R5")


# ---------------------------------------------------------------------------
# final report


@dataclass
class FinalReport:
    ledger: ChargeLedger
    negatives: list[tuple[str, Fraction]]
    explanations: dict[str, list[tuple[str, tuple[int, ...]]]]

    def to_text(self) -> str:
        lines = [self.ledger.to_text().rstrip("\n"), ""]
        if not self.negatives:
            lines.append("no negative final charges")
        for e, q in self.negatives:
            near = self.explanations.get(e) or []
            pats = ", ".join(f"{name}@{loc}" for name, loc in near) or "no catalog pattern nearby"
            lines.append(f"negative {e} = {q}; {pats}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "ledger": self.ledger.to_dict(),
            "negatives": [{"element": e, "charge": str(q)} for e, q in self.negatives],
            "explanations": {e: [[n, list(loc)] for n, loc in m] for e, m in self.explanations.items()},
        }


def element_vertices(rooted: RootedPlaneGraph, element: str) -> frozenset[int]:
    g = rooted.base
    if element == "C0":
        return rooted.c0
    if element.startswith("v"):
        v = int(element[1:])
        return frozenset((v, *g.neighbors(v)))
    return g.faces[int(element[1:])].vertices


def final_report(rooted: RootedPlaneGraph, ledger: ChargeLedger | None = None) -> FinalReport:
    from .configurations import scan_graph

    ledger = ledger or apply_rules(rooted)
    final = ledger.final
    negatives = [(e, q) for e, q in final.items() if q < 0]
    matches = scan_graph(rooted) if negatives else []
    explanations = {}
    for e, _ in negatives:
        near = element_vertices(rooted, e)
        explanations[e] = [(m.name, m.location) for m in matches if near & set(m.location)]
    return FinalReport(ledger, negatives, explanations)


def transfers_by_rule(ledger: ChargeLedger) -> dict[str, list[Transfer]]:
    out: dict[str, list[Transfer]] = defaultdict(list)
    for t in ledger.transfers:
        out[t.rule].append(t)
    return dict(out)
