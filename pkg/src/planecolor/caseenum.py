"""Local charge scenarios around a face, an inner vertex, a C0 vertex or C0 itself.

A scenario records only what the rules read: degree classes (3, 4, H for 5+,
C for a vertex on C0) and the role flags the rules depend on.  Every flag is a
free variable limited only by a few structural facts; the named predicates of
:func:`predicate_registry` carry the reducible-configuration facts and can be switched
off one by one to see which of them a minimum depends on.

Token alphabet for an inner vertex of degree k, listed corner by corner:

* neighbour ``3`` with optional ``w`` (weak, on a triangle at the centre) or
  ``p`` (its third face is a triangle, so it hangs a pendant triangle on us);
  ``4`` with optional ``b`` (bad), ``o`` (poor) and ``q`` (in Q4 of the
  centre); ``H``; ``C``.
* face ``T`` (triangle), ``S`` (6+-face or any face no rule pays) or ``Q`` plus
  the token of the vertex opposite the centre (``Q3``, ``Q4o``, ``QC`` ...).

Face ``i`` lies between neighbours ``i`` and ``i+1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import builtins
from importlib import resources
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, Iterator

from .discharging import (
    FOUR,
    HIGH,
    THREE,
    Occupant,
    r11_amount,
    r12_amount,
    r21_amount,
    r22_amount,
    r4_amount,
    r5_amount,
)
from .errors import CenterTooLarge

F = Fraction
MAX_CENTER = 8
_CLS = {"3": THREE, "4": FOUR, "H": HIGH}
_enumerate = builtins.enumerate


# ---------------------------------------------------------------------------
# centres


@dataclass(frozen=True)
class Center:
    """What the scenario is built around: ``face``, ``vertex``, ``c0vertex`` or ``c0``."""

    kind: str
    size: int

    @classmethod
    def parse(cls, text: str) -> "Center":
        kind, _, size = text.strip().partition(":")
        kind = {"v": "vertex", "f": "face", "c0v": "c0vertex"}.get(kind, kind)
        if kind not in ("face", "vertex", "c0vertex", "c0") or not size.isdigit():
            raise ValueError(f"bad centre {text!r}; use face:3, vertex:5, c0vertex:4 or c0:7")
        return cls(kind, int(size))

    def __str__(self) -> str:
        return f"{self.kind}:{self.size}"

    def check(self) -> None:
        limits = {"face": (3, 4), "vertex": (3, MAX_CENTER), "c0vertex": (2, MAX_CENTER), "c0": (3, 7)}
        lo, hi = limits[self.kind]
        if self.size > hi and self.kind in ("vertex", "c0vertex"):
            raise CenterTooLarge(f"{self}: centres above degree {MAX_CENTER} are bounded symbolically, see eq3_bound")
        if not lo <= self.size <= hi or (self.kind == "c0" and self.size not in (3, 7)):
            raise ValueError(f"{self}: size out of range")


def eq3_bound(k: int) -> Fraction:
    """Lower bound on the final charge of an inner k-vertex, k >= 7, from the counting bound."""
    return F(7, 8) * k - 6


# ---------------------------------------------------------------------------
# scenarios


@dataclass(frozen=True)
class VertexScenario:
    degree: int
    nbrs: tuple[str, ...]
    faces: tuple[str, ...]

    @property
    def k(self) -> int:
        return self.degree

    @property
    def poor(self) -> bool:
        return all(_is_quad(f) for f in self.faces) and not self._has_c()

    def _has_c(self) -> bool:
        return any(n == "C" for n in self.nbrs) or any(f == "QC" for f in self.faces)

    def nb(self, i: int) -> str:
        return self.nbrs[i % self.degree]

    def fc(self, i: int) -> str:
        return self.faces[i % self.degree]

    def tokens(self) -> tuple[str, ...]:
        return tuple(t for pair in zip(self.nbrs, self.faces) for t in pair)

    def canonical(self) -> "VertexScenario":
        return _vertex_from_tokens(self.degree, _dihedral_min(self.nbrs, self.faces))

    def __str__(self) -> str:
        return f"v{self.degree}: " + " ".join(self.tokens())

    @property
    def t3(self) -> int:
        return sum(1 for i in range(self.k) if tri_in_f(self, i))

    @property
    def t4(self) -> int:
        return sum(1 for i in range(self.k) if quad_in_f(self, i))

    @property
    def tp(self) -> int:
        return sum(1 for n in self.nbrs if "p" in n)


@dataclass(frozen=True)
class FaceScenario:
    """A 3- or 4-face listed by its boundary occupants in cyclic order.

    3-face occupants: ``3w``/``3s``/``3c`` (3-vertex whose outer neighbour is an
    inner 3-vertex, an inner 4+-vertex, or on C0), ``4``/``4b``, ``H``/``Hw``
    (weak 5+-vertex) and ``C``.  4-face occupants: ``3``, ``4``/``4o``, ``H``, ``C``.
    """

    degree: int
    occupants: tuple[str, ...]

    @property
    def hits(self) -> int:
        return sum(1 for o in self.occupants if o == "C")

    def canonical(self) -> "FaceScenario":
        return FaceScenario(self.degree, _cyclic_min(self.occupants))

    def __str__(self) -> str:
        return f"f{self.degree}: " + " ".join(self.occupants)


@dataclass(frozen=True)
class C0VertexScenario:
    """A vertex on C0: its inner faces in order, each tagged with its number of C0 vertices."""

    degree: int
    faces: tuple[str, ...]
    pendants: int = 0

    def canonical(self) -> "C0VertexScenario":
        return C0VertexScenario(self.degree, min(self.faces, self.faces[::-1]), self.pendants)

    def __str__(self) -> str:
        return f"c0v{self.degree}: " + " ".join(self.faces) + f" p={self.pendants}"


@dataclass(frozen=True)
class C0Profile:
    """C0 by length and the number of its vertices of degree 2, 3, 4 and 5."""

    length: int
    s2: int
    s3: int
    s4: int
    s5: int

    def canonical(self) -> "C0Profile":
        return self

    def __str__(self) -> str:
        return f"c0 |C0|={self.length} s=({self.s2},{self.s3},{self.s4},{self.s5})"


LocalScenario = VertexScenario | FaceScenario | C0VertexScenario | C0Profile


@dataclass(frozen=True)
class ScenarioVerdict:
    scenario: LocalScenario
    flows: tuple[tuple[str, Fraction], ...]
    mu: Fraction
    admissible: bool
    violations: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    # initial charge followed by every single transfer, unmerged
    terms: tuple[Fraction, ...] = ()

    @property
    def canonical_string(self) -> str:
        return str(self.scenario)

    def equation(self) -> str:
        """The charge sum as a line of arithmetic, e.g. ``-3 + 5/4 + 5/4 + 1/2 = 0``."""
        if not self.terms:
            return f"{self.mu}"
        head, *rest = self.terms
        parts = [str(head)] + [f"+ {t}" if t >= 0 else f"- {-t}" for t in rest]
        return " ".join(parts) + f" = {self.mu}"

    def flow(self, rule: str) -> Fraction:
        return sum((a for r, a in self.flows if r == rule), F(0))

    def to_dict(self) -> dict:
        return {
            "scenario": str(self.scenario),
            "mu": str(self.mu),
            "admissible": self.admissible,
            "violations": list(self.violations),
            "flows": {r: str(a) for r, a in self.flows},
            "notes": list(self.notes),
            "equation": self.equation(),
        }


# ---------------------------------------------------------------------------
# token helpers


def _is_quad(face: str) -> bool:
    return face[0] == "Q"


def _diag(face: str) -> str:
    return face[1:]


def center_cls(s) -> str:
    return "4" if s.k == 4 else ("H" if s.k >= 5 else "3")


def tri_in_f(s, i: int) -> bool:
    return s.fc(i) == "T" and s.nb(i)[0] != "C" and s.nb(i + 1)[0] != "C"


def quad_in_f(s, i: int) -> bool:
    f = s.fc(i)
    return f[0] == "Q" and f[1] != "C" and s.nb(i)[0] != "C" and s.nb(i + 1)[0] != "C"


def tri_classes(s, i: int) -> list[str]:
    return sorted((center_cls(s), s.nb(i)[0], s.nb(i + 1)[0]))


def is_344(s, i: int) -> bool:
    return tri_in_f(s, i) and tri_classes(s, i) == ["3", "4", "4"]


def bad_tri(s, i: int) -> bool:
    """A (3,4,5+) triangle in F3 whose 4-vertex is bad, seen from a 5+ centre."""
    if s.k < 5 or not tri_in_f(s, i):
        return False
    a, b = s.nb(i), s.nb(i + 1)
    return {a[0], b[0]} == {"3", "4"} and "b" in (a if a[0] == "4" else b)


def small3_tri(s, i: int) -> bool:
    """A triangle in F3 holding a 3-vertex whose other neighbour-vertex is a 4--vertex."""
    if not tri_in_f(s, i):
        return False
    pair = sorted((s.nb(i)[0], s.nb(i + 1)[0]))
    return pair[0] == "3" and pair[1] in "34"


def quad_classes(s, i: int) -> tuple[str, str, str]:
    return s.nb(i)[0], _diag(s.fc(i))[0], s.nb(i + 1)[0]


def _occ(tok: str) -> Occupant:
    return Occupant(_CLS[tok[0]], "b" in tok[1:], "w" in tok[1:])


def _ints(classes) -> tuple[int, ...]:
    return tuple(_CLS[c] for c in classes)


def center_weak(s, weak5: bool = True, weak6: bool = True) -> bool:
    k = s.k
    if k == 5 and weak5:
        with3 = [i for i in range(k) if tri_in_f(s, i) and "3" in (s.nb(i)[0], s.nb(i + 1)[0])]
        pendant = any("p" in n for n in s.nbrs)
        return pendant and len(with3) >= 2 and any(bad_tri(s, i) for i in with3)
    if k == 6 and weak6:
        bad = [i for i in range(k) if bad_tri(s, i)]
        other = [
            i
            for i in range(k)
            if tri_in_f(s, i) and sorted((s.nb(i)[0], s.nb(i + 1)[0])) == ["3", "H"]
        ]
        return len(bad) >= 2 and bool(other)
    return False


def center_bad(s) -> bool:
    """A bad 4-centre, or a 5-centre on a bad (5,4,3) or a (5,3,3) triangle."""
    if s.k == 4:
        return any(is_344(s, i) for i in range(4))
    if s.k == 5:
        return any(
            bad_tri(s, i) or (tri_in_f(s, i) and s.nb(i)[0] == s.nb(i + 1)[0] == "3") for i in range(5)
        )
    return False


# ---------------------------------------------------------------------------
# evaluation


def _vertex_flows(s: VertexScenario, weak5: bool, weak6: bool) -> list[tuple[str, Fraction]]:
    k = s.k
    out: list[tuple[str, Fraction]] = []
    if k < 4:
        return out
    if k == 4:
        has344 = any(is_344(s, i) for i in range(k))
        rich = not s.poor
        poor344 = False
        for i in range(k):
            if tri_in_f(s, i):
                out.append(("R1.1", -r11_amount(is_344(s, i), has344)))
            elif quad_in_f(s, i):
                others = _ints(quad_classes(s, i))
                out.append(("R1.2", -r12_amount(others, rich)[0]))
                poor344 = poor344 or sorted(others) == [THREE, FOUR, FOUR]
        if s.poor and poor344:
            for n in s.nbrs:
                if n == "H":
                    out.append(("R2.3", F(1, 6)))
    else:
        weak = center_weak(s, weak5, weak6)
        for i in range(k):
            if tri_in_f(s, i):
                amount, rule = r21_amount(_occ(s.nb(i)), _occ(s.nb(i + 1)), weak)
                out.append((rule or "R2", -amount))
            elif quad_in_f(s, i):
                amount, _ = r22_amount(_ints(quad_classes(s, i)), _fours_poor(s, i))
                out.append(("R2.2", -amount))
        for n in s.nbrs:
            if "q" in n:
                out.append(("R2.3", -F(1, 6)))
    for n in s.nbrs:
        if "p" in n:
            out.append(("R3", -F(1, 2)))
    return out


def _fours_poor(s, i: int) -> bool:
    toks = (s.nb(i), _diag(s.fc(i)), s.nb(i + 1))
    return all("o" in t for t in toks if t[0] == "4")


def _face3_flows(s: FaceScenario) -> list[tuple[str, Fraction]]:
    occ = s.occupants
    hits = s.hits
    if hits:
        return [("R4", r4_amount(3, hits))] * hits
    out = []
    classes = sorted(o[0] for o in occ)
    is344 = classes == ["3", "4", "4"]
    for j, o in _enumerate(occ):
        others = [occ[(j + 1) % 3], occ[(j + 2) % 3]]
        if o[0] == "4":
            out.append(("R1.1", r11_amount(is344, "b" in o)))
        elif o[0] == "H":
            amount, rule = r21_amount(_face_occ(others[0]), _face_occ(others[1]), o == "Hw")
            out.append((rule or "R2", amount))
        elif o in ("3s", "3c"):
            out.append(("R3", F(1, 2)))
    return out


def _face_occ(tok: str) -> Occupant:
    return Occupant(_CLS[tok[0]], tok == "4b", tok == "3w")


def _face4_flows(s: FaceScenario) -> list[tuple[str, Fraction]]:
    occ = s.occupants
    hits = s.hits
    if hits:
        return [("R4", r4_amount(4, hits))] * hits
    out = []
    fours_poor = all(o == "4o" for o in occ if o[0] == "4")
    for j, o in _enumerate(occ):
        others = _ints(occ[(j + d) % 4][0] for d in (1, 2, 3))
        if o[0] == "4":
            out.append(("R1.2", r12_amount(others, o != "4o")[0]))
        elif o == "H":
            out.append(("R2.2", r22_amount(others, fours_poor)[0]))
    return out


def _c0vertex_flows(s: C0VertexScenario) -> list[tuple[str, Fraction]]:
    out = []
    for f in s.faces:
        degree = 3 if f[0] == "T" else 4 if f[0] == "Q" else 6
        hits = int(f[1:]) if len(f) > 1 else 1
        out.append(("R4", -r4_amount(degree, hits)))
    out += [("R3", -F(1, 2))] * s.pendants
    out.append(("R5", r5_amount(s.degree)))
    return out


def _c0_flows(s: C0Profile) -> list[tuple[str, Fraction]]:
    out = [("R5", -r5_amount(d)) for d, n in ((2, s.s2), (3, s.s3), (4, s.s4), (5, s.s5)) for _ in range(n)]
    if s.length == 7 and s.s2 == 6:
        out.append(("R5", F(1)))
    return out


def initial_charge(s: LocalScenario) -> Fraction:
    if isinstance(s, VertexScenario):
        return F(2 * s.k - 6)
    if isinstance(s, C0VertexScenario):
        return F(2 * s.degree - 6)
    if isinstance(s, FaceScenario):
        return F(s.degree - 6)
    return F(s.length + 6)


def evaluate(scenario: LocalScenario, disabled: Iterable[str] = ()) -> ScenarioVerdict:
    """Run the rule schedule on ``scenario`` and test every enabled predicate."""
    off = resolve_switches(disabled)
    weak5 = "weak5-R2c-reduction" not in off
    weak6 = "weak6-R2c-reduction" not in off
    if isinstance(scenario, VertexScenario):
        if not structurally_valid(scenario):
            raise ValueError(f"{scenario} cannot occur around a vertex of the family")
        flows = _vertex_flows(scenario, weak5, weak6)
    elif isinstance(scenario, FaceScenario):
        flows = _face3_flows(scenario) if scenario.degree == 3 else _face4_flows(scenario)
    elif isinstance(scenario, C0VertexScenario):
        flows = _c0vertex_flows(scenario)
    else:
        flows = _c0_flows(scenario)
    init = initial_charge(scenario)
    mu = init + sum((a for _, a in flows), F(0))
    violations = tuple(p.name for p in _active(off) if not p.holds(scenario))
    notes = []
    if isinstance(scenario, C0Profile) and scenario.s2 == scenario.length:
        notes.append("every C0 vertex has degree 2, so G = C0")
    terms = (init,) + tuple(a for _, a in flows)
    return ScenarioVerdict(scenario, _merge(flows), mu, not violations, violations, tuple(notes), terms)


def _merge(flows) -> tuple[tuple[str, Fraction], ...]:
    acc: dict[str, Fraction] = {}
    for r, a in flows:
        acc[r] = acc.get(r, F(0)) + a
    return tuple(sorted(acc.items()))


# ---------------------------------------------------------------------------
# predicates


@dataclass(frozen=True)
class Predicate:
    """A named constraint that a reducible configuration imposes.

    ``window`` tests run at each neighbour index ``i`` of a vertex scenario and
    read faces ``i+lo .. i+hi`` and neighbours ``i+lo .. i+hi+1``; ``whole`` tests
    read the full vertex scenario; ``other`` handles face, C0-vertex and C0
    scenarios.  A rule switch has no tests; turning it off changes the rules.
    """

    name: str
    tag: str
    anchor: str
    window: Callable | None = None
    span: tuple[int, int] = (0, 0)
    whole: Callable | None = None
    other: Callable | None = None

    @property
    def is_rule_switch(self) -> bool:
        return self.window is None and self.whole is None and self.other is None

    def holds(self, s: LocalScenario) -> bool:
        if isinstance(s, VertexScenario):
            if self.window is not None and not all(self.window(s, i) for i in range(s.k)):
                return False
            return self.whole is None or bool(self.whole(s))
        return self.other is None or bool(self.other(s))


def _all(iterable) -> bool:
    return all(iterable)


# window tests; ``s`` may be a partial scenario, ``i`` a neighbour index


def _w_c0_diag_pair(s, i):
    f = s.fc(i)
    return not (_is_quad(f) and s.nb(i)[0] == "C" and s.nb(i + 1)[0] == "C")


def _w_no_f4_prime(s, i):
    f = s.fc(i)
    if not _is_quad(f):
        return True
    return sum(1 for t in (s.nb(i), _diag(f), s.nb(i + 1)) if t[0] == "C") != 1


def _w_two_interior_threes(s, i):
    n = s.nb(i)
    if tri_in_f(s, i) and s.nb(i)[0] == s.nb(i + 1)[0] == "3":
        if "w" in s.nb(i) or "w" in s.nb(i + 1):
            return False
    f = s.fc(i)
    if _is_quad(f) and _diag(f) == "3" and s.nb(i)[0] == s.nb(i + 1)[0] == "3":
        return False
    left = s.fc(i - 1)
    if n[0] == "3" and _is_quad(left) and _is_quad(f) and _diag(left) == "3" and _diag(f) == "3":
        return False
    return True


def _w_33_small(s, i):
    return not (s.k <= 4 and tri_in_f(s, i) and s.nb(i)[0] == s.nb(i + 1)[0] == "3")


def _w_344_strong(s, i):
    return not (is_344(s, i) and ("w" in s.nb(i) or "w" in s.nb(i + 1)))


def _w_bad_nbr_other_triangle(s, i):
    # a bad 4-neighbour on a triangle at the centre that is not (3,4,4) needs a 5+ there
    if not tri_in_f(s, i) or is_344(s, i) or s.k >= 5:
        return True
    pair = (s.nb(i), s.nb(i + 1))
    if any(t[0] == "4" and "b" in t for t in pair):
        return "H" in (pair[0][0], pair[1][0])
    return True


def _w_diag_pair_4plus(s, i):
    return not (quad_in_f(s, i) and s.nb(i)[0] == s.nb(i + 1)[0] == "3")


def _w_33_face_flanks(s, i):
    if not quad_in_f(s, i) or _diag(s.fc(i)) != "3":
        return True
    a, b = s.nb(i)[0], s.nb(i + 1)[0]
    if s.k == 4 and "3" in (a, b) and (s.fc(i - 1) != "S" or s.fc(i + 1) != "S"):
        return False
    # the same statement read at a 4-neighbour
    if a == "4" and b == "3" and s.fc(i - 1) != "S":
        return False
    if b == "4" and a == "3" and s.fc(i + 1) != "S":
        return False
    return True


def _w_consecutive_quads(s, i):
    if not (quad_in_f(s, i) and quad_in_f(s, i + 1)):
        return True
    if s.k == 4 and _diag(s.fc(i)) == "3" and _diag(s.fc(i + 1)) == "3":
        return False
    n = s.nb(i + 1)
    if n[0] == "4" and s.nb(i)[0] == "3" and s.nb(i + 2)[0] == "3":
        return False
    return True


def _w_poor_nbr_5plus(s, i):
    n = s.nb(i)
    if "o" not in n:
        return True
    return "H" in (_diag(s.fc(i - 1))[:1], _diag(s.fc(i))[:1])


def _w_poor5_diag3(s, i):
    if not (s.k == 5 and s.poor and _diag(s.fc(i)) == "3"):
        return True
    return s.nb(i - 1)[0] == "H" or s.nb(i + 2)[0] == "H"


def _w_poor5_5434(s, i):
    if not (s.k == 5 and s.poor):
        return True
    a, b = s.nb(i), s.nb(i + 1)
    return not (a[0] == b[0] == "4" and _diag(s.fc(i)) == "3" and "q" in a and "q" in b)


def _w_poor5_5344(s, i):
    if not (s.k == 5 and s.poor and _diag(s.fc(i)) == "4o"):
        return True
    a, b = s.nb(i), s.nb(i + 1)
    if a[0] == "3" and "o" in b and "q" in b:
        return False
    if b[0] == "3" and "o" in a and "q" in a:
        return False
    return True


def _clean_for(s, j: int, member: int) -> bool:
    if not quad_in_f(s, j):
        return False
    toks = (s.nb(j)[0], _diag(s.fc(j))[0], s.nb(j + 1)[0])
    if "3" not in toks:
        return True
    other = s.nb(j + 1) if member == j else s.nb(j)
    return _diag(s.fc(j))[0] == "H" and other[0] == "3"


def _w_q4_clean(s, i):
    if "q" not in s.nb(i):
        return True
    return _clean_for(s, i - 1, i) or _clean_for(s, i, i)


# whole-scenario tests


def _g_c0_nbrs(s):
    idx = [i for i in range(s.k) if s.nb(i) == "C"]
    if len(idx) <= 1:
        return True
    if len(idx) > 2:
        return False
    a, b = idx
    if (a + 1) % s.k == b and s.fc(a) == "T":
        return True
    return (b + 1) % s.k == a and s.fc(b) == "T"


def _g_c0_f4pp(s):
    if not all(_w_c0_diag_pair(s, i) for i in range(s.k)):
        return False
    ncs = sum(1 for n in s.nbrs if n == "C")
    for i in range(s.k):
        f = s.fc(i)
        if _is_quad(f) and _diag(f) == "C" and "C" in (s.nb(i), s.nb(i + 1)) and ncs != 1:
            return False
    return True


def _g_bad4_strong_nbr(s):
    if s.k != 4:
        return True
    tris = [i for i in range(4) if tri_in_f(s, i)]
    if len(tris) != 1 or not is_344(s, tris[0]):
        return True
    i = tris[0]
    off = [s.nb(i + 2), s.nb(i + 3)]
    return not all(t[0] == "3" for t in off)


def _g_two_344(s):
    return s.k != 4 or sum(1 for i in range(4) if is_344(s, i)) <= 1


def _g_344_other_5plus(s):
    if s.k != 4:
        return True
    tris = [i for i in range(4) if tri_in_f(s, i)]
    if len(tris) < 2 or not any(is_344(s, i) for i in tris):
        return True
    for i in tris:
        if not is_344(s, i) and "H" not in (s.nb(i)[0], s.nb(i + 1)[0]):
            return False
    return True


def _tris5(s):
    return [i for i in range(s.k) if tri_in_f(s, i)]


def _g_five_small_fifth(s):
    if s.k != 5:
        return True
    tris = _tris5(s)
    if len(tris) != 2 or not all(small3_tri(s, i) for i in tris):
        return True
    used = {j % 5 for i in tris for j in (i, i + 1)}
    rest = [s.nb(j) for j in range(5) if j not in used]
    return all(t[0] != "3" for t in rest)


def _g_five_one_bad(s):
    return s.k != 5 or sum(1 for i in range(5) if bad_tri(s, i)) <= 1


def _g_bad345_345(s):
    if s.k != 5:
        return True
    tris = _tris5(s)
    for i in tris:
        if not bad_tri(s, i):
            continue
        for j in tris:
            if j == i or sorted((s.nb(j)[0], s.nb(j + 1)[0])) != ["3", "4"]:
                continue
            three = s.nb(j) if s.nb(j)[0] == "3" else s.nb(j + 1)
            if "w" in three:
                return False
    return True


def _g_bad345_445(s):
    if s.k != 5:
        return True
    tris = _tris5(s)
    if not any(bad_tri(s, i) for i in tris):
        return True
    for j in tris:
        a, b = s.nb(j), s.nb(j + 1)
        if a[0] == b[0] == "4" and "b" in a and "b" in b:
            return False
    return True


def _g_six_small(s):
    return s.k != 6 or sum(1 for i in range(6) if small3_tri(s, i)) <= 2


def _g_bad_center_diag(s):
    if not center_bad(s):
        return True
    return all(not (_is_quad(s.fc(i)) and _diag(s.fc(i)) == "3") for i in range(s.k))


def _g_opposite_quads(s):
    if s.k != 4:
        return True
    for i in range(2):
        if quad_in_f(s, i) and quad_in_f(s, i + 2):
            if _diag(s.fc(i)) == "3" and _diag(s.fc(i + 2)) == "3":
                return False
    return True


def _g_poor4_pairs(s):
    if s.k != 4 or not s.poor:
        return True
    return all("H" in (s.nb(i)[0], s.nb(i + 2)[0]) for i in range(2))


def _g_poor5_two_diag3(s):
    if s.k != 5 or not s.poor:
        return True
    return sum(1 for f in s.faces if _diag(f) == "3") <= 2


def _g_poor5_isolate(s):
    if s.k != 5 or not s.poor:
        return True
    for i in range(5):
        if _diag(s.fc(i)) == "3" and "3" in (s.nb(i)[0], s.nb(i + 1)[0]):
            if any(_diag(s.fc(j)) == "3" for j in range(5) if j != i):
                return False
    return True


def _g_poor5_333(s):
    if s.k != 5 or not s.poor:
        return True
    for i in range(5):
        if _diag(s.fc(i)) != "3":
            continue
        for a, b in ((i, i + 2), (i + 1, i - 1)):
            if s.nb(a)[0] == "3" and s.nb(b)[0] == "3":
                rest = [j for j in range(5) if j not in (a % 5, b % 5)]
                if any(s.nb(j)[0] != "H" for j in rest):
                    return False
    return True


def face_amount(s, i: int, weak5: bool = True, weak6: bool = True) -> Fraction:
    """What a 5+ centre gives to its face ``i``."""
    if tri_in_f(s, i):
        return r21_amount(_occ(s.nb(i)), _occ(s.nb(i + 1)), center_weak(s, weak5, weak6))[0]
    if quad_in_f(s, i):
        return r22_amount(_ints(quad_classes(s, i)), _fours_poor(s, i))[0]
    return F(0)


def _g_q4_bundle(s):
    if s.k < 5:
        return True
    members = [i for i in range(s.k) if "q" in s.nb(i)]
    if not members:
        return True
    amounts = {j: face_amount(s, j) for j in range(s.k) if quad_in_f(s, j)}
    for choice in product((-1, 0), repeat=len(members)):
        load = dict.fromkeys(amounts, F(0))
        ok = True
        for m, d in zip(members, choice):
            j = (m + d) % s.k
            if j not in load:
                ok = False
                break
            load[j] += F(1, 6)
        if ok and all(amounts[j] + load[j] <= 1 for j in amounts):
            return True
    return False


# tests on face, C0-vertex and C0 scenarios


def _o_c0_trivial(s):
    if isinstance(s, FaceScenario):
        return s.degree != 3 or s.hits < 3
    if isinstance(s, C0VertexScenario):
        return "T3" not in s.faces
    if isinstance(s, C0Profile):
        return s.s2 != s.length
    return True


def _o_c0_diag_pair(s):
    if isinstance(s, FaceScenario) and s.degree == 4:
        occ = s.occupants
        return not any(occ[j] == "C" and occ[j + 2] == "C" for j in range(2))
    if isinstance(s, C0VertexScenario):
        middle = s.faces[1:-1]
        return "Q2" not in middle and not any(f in ("Q3", "Q4") for f in s.faces)
    return True


def _o_no_f4_prime(s):
    if isinstance(s, FaceScenario):
        return s.degree != 4 or s.hits != 1
    if isinstance(s, C0VertexScenario):
        return "Q1" not in s.faces
    return True


def _o_two_interior_threes(s):
    if not isinstance(s, FaceScenario) or s.degree != 3 or s.hits:
        return True
    occ = s.occupants
    threes = [o for o in occ if o[0] == "3"]
    return not (len(threes) >= 2 and "3w" in threes)


def _o_33_small(s):
    if not isinstance(s, FaceScenario) or s.degree != 3 or s.hits:
        return True
    cls = sorted(o[0] for o in s.occupants)
    return not (cls[0] == cls[1] == "3" and cls[2] in "34")


def _o_344_strong(s):
    if not isinstance(s, FaceScenario) or s.degree != 3 or s.hits:
        return True
    return not (sorted(o[0] for o in s.occupants) == ["3", "4", "4"] and "3w" in s.occupants)


def _o_bad_other_triangle(s):
    if not isinstance(s, FaceScenario) or s.degree != 3 or s.hits:
        return True
    cls = sorted(o[0] for o in s.occupants)
    if cls == ["3", "4", "4"] or "H" in cls:
        return True
    return "4b" not in s.occupants


def _o_three_weak(s):
    if not isinstance(s, FaceScenario) or s.degree != 3 or s.hits:
        return True
    return sorted(s.occupants) != ["3w", "Hw", "Hw"]


def _o_diag_pair_4plus(s):
    if not isinstance(s, FaceScenario) or s.degree != 4 or s.hits:
        return True
    occ = s.occupants
    return not any(occ[j][0] == "3" and occ[j + 2][0] == "3" for j in range(2))


def _o_33_face_flanks(s):
    # a poor 4-vertex has no 6+-face, so it never sees a 3-neighbour with a 3 opposite
    if not isinstance(s, FaceScenario) or s.degree != 4 or s.hits:
        return True
    occ = s.occupants
    for j, o in _enumerate(occ):
        if o == "4o" and occ[(j + 2) % 4][0] == "3" and "3" in (occ[(j + 1) % 4][0], occ[(j + 3) % 4][0]):
            return False
    return True


_TESTS: dict[str, dict] = {
    "c0-neighbours-share-a-triangle": {"whole": _g_c0_nbrs},
    "no-diagonal-c0-pair-on-4-face": {"window": _w_c0_diag_pair, "whole": _g_c0_f4pp, "other": _o_c0_diag_pair},
    "no-4-face-with-one-c0-vertex": {"window": _w_no_f4_prime, "other": _o_no_f4_prime},
    "no-3-vertex-with-two-interior-3-neighbours": {
        "window": _w_two_interior_threes,
        "span": (-1, 0),
        "other": _o_two_interior_threes,
    },
    "no-33-triangle-with-small-third": {"window": _w_33_small, "other": _o_33_small},
    "bad-4-vertex-has-strong-neighbour-off-triangle": {"whole": _g_bad4_strong_nbr},
    "three-vertex-on-344-is-strong": {"window": _w_344_strong, "other": _o_344_strong},
    "no-two-344-triangles-at-4-vertex": {"whole": _g_two_344},
    "second-triangle-at-bad-4-vertex-has-5plus": {
        "window": _w_bad_nbr_other_triangle,
        "whole": _g_344_other_5plus,
        "other": _o_bad_other_triangle,
    },
    "five-vertex-two-small-triangles-strong-fifth": {"whole": _g_five_small_fifth},
    "five-vertex-at-most-one-bad-triangle": {"whole": _g_five_one_bad},
    "bad-345-and-345-second-three-strong": {"whole": _g_bad345_345},
    "bad-345-and-445-not-both-bad": {"whole": _g_bad345_445},
    "six-vertex-at-most-two-small-3-triangles": {"whole": _g_six_small},
    "no-3hh-triangle-with-three-weak": {"other": _o_three_weak},
    "diagonal-pairs-on-4-face-have-4plus": {"window": _w_diag_pair_4plus, "other": _o_diag_pair_4plus},
    "diagonal-of-4-face-at-bad-vertex-is-4plus": {"whole": _g_bad_center_diag},
    "four-vertex-33-face-flanked-by-6plus": {"window": _w_33_face_flanks, "span": (-1, 1), "other": _o_33_face_flanks},
    "consecutive-4-faces-at-4-vertex-diagonal-4plus": {"window": _w_consecutive_quads, "span": (0, 1)},
    "opposite-4-faces-at-4-vertex-diagonal-4plus": {"whole": _g_opposite_quads},
    "poor-4-vertex-has-5plus-on-each-opposite-pair": {"window": _w_poor_nbr_5plus, "span": (-1, 0), "whole": _g_poor4_pairs},
    "poor-5-vertex-at-most-two-3-diagonals": {"whole": _g_poor5_two_diag3},
    "poor-5-vertex-3-diagonal-needs-5plus": {"window": _w_poor5_diag3, "span": (-1, 1)},
    "poor-5-vertex-33-face-isolates-3-diagonal": {"whole": _g_poor5_isolate},
    "poor-5-vertex-5434-face-not-both-q4": {"window": _w_poor5_5434},
    "poor-5-vertex-333-pattern-needs-5plus": {"whole": _g_poor5_333},
    "poor-5-vertex-5344-face-second-4-not-q4": {"window": _w_poor5_5344},
    "q4-member-has-clean-face": {"window": _w_q4_clean, "span": (-1, 0)},
    "Q4-charge-bundle ≤ 1": {"whole": _g_q4_bundle},
    "weak5-R2c-reduction": {},
    "weak6-R2c-reduction": {},
}

# structural facts hold for every scenario and are not switchable
_G_IS_C0 = Predicate("graph-is-not-c0", "G-is-C0", "every scenario: the graph is more than C0", other=_o_c0_trivial)


@lru_cache(maxsize=None)
def predicate_registry() -> tuple[Predicate, ...]:
    """All switchable predicates, in a fixed order, with their tags and anchors."""
    anchors = {}
    text = resources.files("planecolor").joinpath("data/predicates.txt").read_text(encoding="utf-8")
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, tag, anchor = (part.strip() for part in line.split("|", 2))
        anchors[name] = (tag, anchor)
    out = []
    for name, parts in _TESTS.items():
        tag, anchor = anchors[name]
        out.append(Predicate(name, tag, anchor, **parts))
    return tuple(out) + (_G_IS_C0,)


def resolve_switches(disabled: Iterable[str]) -> frozenset[str]:
    """Map names or tags to predicate names; unknown entries raise ``KeyError``."""
    if isinstance(disabled, str):
        disabled = [disabled]
    by_key = {}
    for p in predicate_registry():
        by_key[p.name] = p.name
        by_key[p.tag] = p.name
    out = set()
    for item in disabled:
        if item not in by_key:
            raise KeyError(f"unknown predicate {item!r}")
        out.add(by_key[item])
    return frozenset(out)


def _active(off: frozenset[str]) -> list[Predicate]:
    return [p for p in predicate_registry() if p.name not in off and not p.is_rule_switch]


# ---------------------------------------------------------------------------
# structure


def _structural_ok(s, i: int) -> bool:
    """Facts that hold in every plane graph of the family, read at neighbour ``i``."""
    left, right = s.fc(i - 1), s.fc(i)
    kinds = {left[0], right[0]}
    if left == right == "T" or kinds == {"T", "Q"}:
        return False
    n = s.nb(i)
    flags = n[1:]
    on_tri = [j for j in (i - 1, i) if tri_in_f(s, j)]
    if "w" in flags and (n[0] != "3" or not on_tri):
        return False
    if "p" in flags and (n[0] != "3" or left != "S" or right != "S"):
        return False
    if "b" in flags and (n[0] != "4" or not on_tri):
        return False
    if "o" in flags and (n[0] != "4" or not (quad_in_f(s, i - 1) and quad_in_f(s, i))):
        return False
    if "q" in flags and ("o" not in flags or s.k < 5):
        return False
    if n[0] == "4" and "b" not in flags and any(is_344(s, j) for j in on_tri):
        return False
    return True


def structurally_valid(s: VertexScenario) -> bool:
    return all(_structural_ok(s, i) for i in range(s.k))


# ---------------------------------------------------------------------------
# symmetry


def _dihedral_images(nbrs, faces) -> Iterator[tuple[str, ...]]:
    k = len(nbrs)
    for r in range(k):
        yield tuple(t for j in range(k) for t in (nbrs[(j + r) % k], faces[(j + r) % k]))
        yield tuple(t for j in range(k) for t in (nbrs[(r - j) % k], faces[(r - j - 1) % k]))


def _dihedral_min(nbrs, faces) -> tuple[str, ...]:
    return min(_dihedral_images(nbrs, faces))


def _vertex_from_tokens(k: int, toks: tuple[str, ...]) -> VertexScenario:
    return VertexScenario(k, toks[0::2], toks[1::2])


def _cyclic_min(seq: tuple[str, ...]) -> tuple[str, ...]:
    n = len(seq)
    rots = [seq[r:] + seq[:r] for r in range(n)]
    rev = seq[::-1]
    rots += [rev[r:] + rev[:r] for r in range(n)]
    return min(rots)


def _skeletons(k: int) -> list[tuple[str, ...]]:
    out = []
    for seq in product("QST", repeat=k):
        if any({seq[i], seq[(i + 1) % k]} in ({"T"}, {"T", "Q"}) for i in range(k)):
            continue
        if seq == _cyclic_min(seq):
            out.append(seq)
    return out


def _stabilizer(skel: tuple[str, ...]) -> list[tuple[int, int]]:
    """Dihedral maps (shift, mirrored) of the neighbour cycle that fix the face skeleton."""
    k = len(skel)
    out = []
    for r in range(k):
        if all(skel[(j + r) % k] == skel[j] for j in range(k)):
            out.append((r, 0))
        if all(skel[(r - j - 1) % k] == skel[j] for j in range(k)):
            out.append((r, 1))
    return out


def _image(nbrs, faces, r, mirrored):
    k = len(nbrs)
    if not mirrored:
        return tuple(t for j in range(k) for t in (nbrs[(j + r) % k], faces[(j + r) % k]))
    return tuple(t for j in range(k) for t in (nbrs[(r - j) % k], faces[(r - j - 1) % k]))


# ---------------------------------------------------------------------------
# vertex search


_NBR_BASE = ("3", "4", "C", "H")
_DIAGS = ("3", "4", "4o", "C", "H")


def _nbr_options(k: int, left: str, right: str) -> tuple[str, ...]:
    opts = list(_NBR_BASE)
    if "T" in (left, right):
        opts += ["3w", "4b"]
    if left == right == "S":
        opts.append("3p")
    if left == right == "Q":
        opts.append("4o")
        if k >= 5:
            opts.append("4oq")
    return tuple(sorted(opts))


class _Partial:
    __slots__ = ("k", "poor", "nbrs", "faces")

    def __init__(self, k: int, poor: bool):
        self.k = k
        self.poor = poor
        self.nbrs: list[str | None] = [None] * k
        self.faces: list[str | None] = [None] * k

    def nb(self, i: int) -> str:
        return self.nbrs[i % self.k]

    def fc(self, i: int) -> str:
        return self.faces[i % self.k]


def _twelfths(q: Fraction) -> int:
    return int(q * 12)


@lru_cache(maxsize=None)
def _tri_ub(k: int, a: str, b: str) -> int:
    if "C" in (a[0], b[0]):
        return 0
    if k == 4:
        return 15 if sorted(("4", a[0], b[0])) == ["3", "4", "4"] else 12
    return _twelfths(r21_amount(_occ(a), _occ(b), False)[0])


@lru_cache(maxsize=None)
def _quad_ub(k: int, a: str, d: str, b: str) -> int:
    if "C" in (a[0], d[0], b[0]):
        return 0
    others = _ints((a[0], d[0], b[0]))
    if k == 4:
        return _twelfths(r12_amount(others, True)[0])
    poor = all("o" in t for t in (a, d, b) if t[0] == "4")
    return _twelfths(r22_amount(others, poor)[0])


class BudgetExceeded(Exception):
    def __init__(self, nodes: int):
        super().__init__(f"search visited {nodes} nodes")
        self.nodes = nodes


class _Search:
    """Depth-first search over one face skeleton, with window pruning and a charge bound.

    All window tests at neighbour ``i`` are folded into one check that reads
    faces ``i-1 .. i+1`` and neighbours ``i-1 .. i+2``; its result is cached by
    those tokens.
    """

    def __init__(self, k: int, off: frozenset[str], bounded: bool, predicates: bool = True):
        self.k = k
        self.off = off
        self.bounded = bounded
        active = _active(off) if predicates else []
        self.windows = [_structural_ok] + [p.window for p in active if p.window is not None]
        self.narrow = [p.window for p in active if p.window is not None and p.span == (0, 0)]
        self._ncache: dict = {}
        self.wholes = [p.whole for p in active if p.whole is not None]
        self.bundle = predicates and "Q4-charge-bundle ≤ 1" not in off and k >= 5
        self.nodes = 0
        self.budget: int | None = None
        self._cache: dict = {}

    def _window_ok(self, s, i: int) -> bool:
        key = (s.poor, s.nb(i - 1), s.nb(i), s.nb(i + 1), s.nb(i + 2), s.fc(i - 1), s.fc(i), s.fc(i + 1))
        hit = self._cache.get(key)
        if hit is None:
            hit = all(test(s, i) for test in self.windows)
            self._cache[key] = hit
        return hit

    def _narrow_ok(self, s, i: int) -> bool:
        key = (s.poor, s.nb(i), s.nb(i + 1), s.fc(i))
        hit = self._ncache.get(key)
        if hit is None:
            hit = all(test(s, i) for test in self.narrow)
            self._ncache[key] = hit
        return hit

    def _slot_order(self):
        k = self.k
        order = [("n", 0), ("n", 1), ("f", 0)]
        for j in range(2, k):
            order += [("n", j), ("f", j - 1)]
        order.append(("f", k - 1))
        return order

    def _face_ub_kind(self, kind: str) -> int:
        if kind == "T":
            return 15 if self.k == 4 else 27
        if kind == "Q":
            return 12
        return 0

    def _nbr_ub(self, left: str, right: str) -> int:
        if self.k < 4:
            return 0
        if left == right == "S":
            return 6
        if left == right == "Q" and self.k >= 5:
            return 2
        return 0

    def skeleton_ub(self, skel) -> int:
        k = self.k
        total = sum(self._face_ub_kind(x) for x in skel)
        total += sum(self._nbr_ub(skel[(i - 1) % k], skel[i]) for i in range(k))
        return total

    def walk(self, skel, poor_mode: bool | None, best_ref) -> Iterator[VertexScenario]:
        """Complete scenarios on ``skel`` passing every window and whole-scenario test.

        With ``bounded`` set, subtrees whose charge bound exceeds ``best_ref[0]``
        (in twelfths) are skipped.  ``poor_mode`` is True for all-4-face
        skeletons without C0 vertices, False when such a skeleton must contain
        one, and None otherwise.
        """
        k = self.k
        s = _Partial(k, bool(poor_mode))
        order = self._slot_order()
        last = len(order)
        init12 = (2 * k - 6) * 12
        kind_ub = [self._face_ub_kind(x) for x in skel]
        nbr_ub = [self._nbr_ub(skel[(i - 1) % k], skel[i]) for i in range(k)]
        face_opts = {"T": ("T",), "S": ("S",), "Q": tuple("Q" + d for d in _DIAGS)}
        nbr_opts = [_nbr_options(k, skel[(i - 1) % k], skel[i]) for i in range(k)]
        if poor_mode:
            face_opts["Q"] = tuple(f for f in face_opts["Q"] if f != "QC")
            nbr_opts = [tuple(o for o in opts if o != "C") for opts in nbr_opts]
        bounded, bundle = self.bounded, self.bundle
        qq = [2 if skel[(i - 1) % k] == skel[i] == "Q" and k >= 5 else 0 for i in range(k)]
        fq = 0 if bundle else 1
        if not bundle:
            qq = [0] * k

        # ``ub`` bounds the outflow with 1/6 per Q4 neighbour; ``ubf`` folds those
        # into a flat 1 per paying 4-face, which the bundle predicate justifies
        budget = self.budget

        def rec(pos: int, ub: int, ubf: int):
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise BudgetExceeded(self.nodes)
            if bounded and init12 - min(ub, ubf) > best_ref[0]:
                return
            if pos == last:
                sc = self._finish(s, poor_mode)
                if sc is not None:
                    yield sc
                return
            what, idx = order[pos]
            if what == "n":
                for opt in nbr_opts[idx]:
                    s.nbrs[idx] = opt
                    gain = 6 if k >= 4 and "p" in opt else 0
                    q = 2 if "q" in opt else 0
                    yield from rec(pos + 1, ub - nbr_ub[idx] + gain + q, ubf - nbr_ub[idx] + qq[idx] + gain + fq * q)
                s.nbrs[idx] = None
                return
            for opt in face_opts[skel[idx]]:
                s.faces[idx] = opt
                if not self._narrow_ok(s, idx):
                    continue
                if 2 <= idx < k - 1 and not self._window_ok(s, idx - 1):
                    continue
                a, b = s.nbrs[idx], s.nbrs[(idx + 1) % k]
                if opt == "T":
                    actual = _tri_ub(k, a, b)
                elif opt == "S":
                    actual = 0
                else:
                    actual = _quad_ub(k, a, opt[1:], b)
                folded = 12 if bundle and actual and opt[0] == "Q" else actual
                yield from rec(pos + 1, ub - kind_ub[idx] + actual, ubf - kind_ub[idx] + folded)
            s.faces[idx] = None

        total = sum(kind_ub) + sum(nbr_ub)
        yield from rec(0, total, total - sum(qq) if bundle else total)

    def _finish(self, s: _Partial, poor_mode) -> VertexScenario | None:
        k = self.k
        sc = VertexScenario(k, tuple(s.nbrs), tuple(s.faces))
        if poor_mode is False and not sc._has_c():
            return None
        for i in {0, k - 2, k - 1} if k > 3 else range(k):
            if not self._window_ok(sc, i):
                return None
        for test in self.wholes:
            if not test(sc):
                return None
        return sc


def _modes(skel) -> tuple:
    return (True, False) if all(x == "Q" for x in skel) else (None,)


def _vertex_scenarios(k: int) -> Iterator[VertexScenario]:
    """Every structurally valid scenario, one per dihedral orbit, in a fixed order."""
    search = _Search(k, frozenset(), False, predicates=False)
    for skel in _skeletons(k):
        stab = _stabilizer(skel)
        for mode in _modes(skel):
            for sc in search.walk(skel, mode, [0]):
                toks = sc.tokens()
                if all(_image(sc.nbrs, sc.faces, r, m) >= toks for r, m in stab):
                    yield sc


# ---------------------------------------------------------------------------
# face, C0-vertex and C0 scenarios


_F3_TOKENS = ("3c", "3s", "3w", "4", "4b", "C", "H", "Hw")
_F4_TOKENS = ("3", "4", "4o", "C", "H")


def _face_structural(s: FaceScenario) -> bool:
    occ = s.occupants
    if s.degree == 3:
        if s.hits:
            return all(o in ("C", "3s", "4", "H") for o in occ)
        cls = sorted(o[0] for o in occ)
        if cls == ["3", "4", "4"] and "4" in occ:
            return False
        return True
    if s.hits:
        return all(o in ("C", "3", "4", "H") for o in occ)
    return True


def _face_scenarios(degree: int) -> Iterator[FaceScenario]:
    if degree == 3:
        for occ in combinations_with_replacement(_F3_TOKENS, 3):
            s = FaceScenario(3, occ)
            if _face_structural(s):
                yield s
    else:
        for occ in product(_F4_TOKENS, repeat=4):
            if occ == _cyclic_min(occ):
                s = FaceScenario(4, occ)
                if _face_structural(s):
                    yield s


def _c0vertex_scenarios(k: int) -> Iterator[C0VertexScenario]:
    if k == 2:
        for f in ("S", "T3", "Q3"):
            yield C0VertexScenario(2, (f,), 0)
        return
    ends = ("Q2", "S", "T2")
    middle = ("Q1", "Q2", "S", "T1")
    m = k - 1
    for faces in product(*([ends] + [middle] * (m - 2) + [ends])):
        if any({faces[j][0], faces[j + 1][0]} in ({"T"}, {"T", "Q"}) for j in range(m - 1)):
            continue
        if faces != min(faces, faces[::-1]):
            continue
        slots = sum(1 for j in range(m - 1) if faces[j] == faces[j + 1] == "S")
        for p in range(slots + 1):
            yield C0VertexScenario(k, faces, p)


def _c0_profiles(length: int) -> Iterator[C0Profile]:
    for s2 in range(length + 1):
        for s3 in range(length - s2 + 1):
            for s4 in range(length - s2 - s3 + 1):
                for s5 in range(length - s2 - s3 - s4 + 1):
                    yield C0Profile(length, s2, s3, s4, s5)


def c0_formula(length: int, s2: int) -> Fraction:
    """The least final charge of C0 over profiles with ``s2`` vertices of degree 2, without the bonus."""
    return 6 - F(length + s2, 2)


# ---------------------------------------------------------------------------
# public operations


def _center(spec) -> Center:
    c = spec if isinstance(spec, Center) else Center.parse(str(spec))
    c.check()
    return c


def enumerate(center, disabled: Iterable[str] = ()) -> Iterator[ScenarioVerdict]:  # noqa: A001
    """Stream every structurally valid scenario around ``center`` once, with its verdict.

    Predicates do not filter the stream; each verdict says whether the scenario
    passes the enabled ones.  Order is deterministic.
    """
    c = _center(center)
    off = resolve_switches(disabled)
    if c.kind == "face":
        source: Iterable = _face_scenarios(c.size)
    elif c.kind == "c0vertex":
        source = _c0vertex_scenarios(c.size)
    elif c.kind == "c0":
        source = _c0_profiles(c.size)
    else:
        source = (sc.canonical() for sc in _vertex_scenarios(c.size))
    for sc in source:
        yield evaluate(sc, off)


@dataclass
class MinCharge:
    value: Fraction | None
    witness: ScenarioVerdict | None
    exact: bool = True
    nodes: int = 0
    notes: list[str] = field(default_factory=list)

    def __iter__(self):
        yield self.value
        yield self.witness

    def to_dict(self) -> dict:
        return {
            "min": None if self.value is None else str(self.value),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "exact": self.exact,
            "nodes": self.nodes,
            "notes": self.notes,
        }


def _better(v: ScenarioVerdict, best: ScenarioVerdict | None) -> bool:
    if best is None:
        return True
    return (v.mu, str(v.scenario)) < (best.mu, str(best.scenario))


def min_final_charge(center, disabled: Iterable[str] = (), node_budget: int | None = None) -> MinCharge:
    """Least final charge over admissible scenarios, with the canonically least witness.

    For vertex centres the search is a branch and bound that never prunes a
    subtree able to tie the current minimum.  With ``node_budget`` set and
    exceeded, a 7+-vertex falls back to the counting bound and ``exact`` is False.
    """
    c = _center(center)
    off = resolve_switches(disabled)
    if c.kind != "vertex":
        best = None
        for v in enumerate(c, off):
            if v.admissible and _better(v, best):
                best = v
        return MinCharge(best.mu if best else None, best)
    return _min_vertex(c.size, off, node_budget)


def _min_vertex(k: int, off: frozenset[str], node_budget: int | None) -> MinCharge:
    if k == 3:
        v = evaluate(VertexScenario(3, ("H", "H", "H"), ("S", "S", "S")), off)
        return MinCharge(F(0), v, notes=["an inner 3-vertex neither gives nor receives"])
    search = _Search(k, off, True)
    search.budget = node_budget
    try:
        return _bnb(search, k, off)
    except BudgetExceeded as e:
        return MinCharge(eq3_bound(k), None, exact=False, nodes=e.nodes,
                         notes=["node budget exceeded; value is the counting bound"])


def _bnb(search: "_Search", k: int, off: frozenset[str]) -> MinCharge:
    weak5 = "weak5-R2c-reduction" not in off
    weak6 = "weak6-R2c-reduction" not in off
    best: ScenarioVerdict | None = None
    best12 = [10**9]
    init = F(2 * k - 6)
    skels = sorted(_skeletons(k), key=lambda sk: (-search.skeleton_ub(sk), sk))
    for skel in skels:
        if (2 * k - 6) * 12 - search.skeleton_ub(skel) > best12[0]:
            continue
        for mode in _modes(skel):
            for sc in search.walk(skel, mode, best12):
                mu = init + sum(a for _, a in _vertex_flows(sc, weak5, weak6))
                if mu * 12 > best12[0]:
                    continue
                v = evaluate(sc.canonical(), off)
                if _better(v, best):
                    best = v
                    best12[0] = int(v.mu * 12)
    return MinCharge(best.mu if best else None, best, nodes=search.nodes)


def table(center, disabled: Iterable[str] = ()) -> Iterator[str]:
    """Tab-separated rows: canonical scenario, final charge, admissible, violated predicates."""
    yield "scenario\tmu\tadmissible\tviolations"
    for v in enumerate(center, disabled):
        yield f"{v.scenario}\t{v.mu}\t{'yes' if v.admissible else 'no'}\t{','.join(v.violations)}"


def eq2_bound(s: VertexScenario) -> Fraction:
    """The counting bound from triangles, 4-faces and pendant triangles."""
    return 2 * s.k - 6 - F(9, 4) * s.t3 - s.t4 - F(1, 2) * s.tp


# ---------------------------------------------------------------------------
# extraction from a concrete graph


def extract(rooted, v: int, tags=None) -> LocalScenario | None:
    """The scenario seen at vertex ``v``, or None when the neighbourhood is too irregular to encode."""
    from .discharging import classify_roles

    g = rooted.base
    tags = tags or classify_roles(rooted)
    if rooted.on_c0(v):
        return _extract_c0(rooted, v, tags)
    k = g.degree(v)
    if k < 3:
        return None
    nbrs = list(g.neighbors(v))
    faces = [g.face_of_dart(v, x) for x in nbrs]
    if len({f.index for f in faces}) != k:
        return None

    def cls(x: int) -> str | None:
        if rooted.on_c0(x):
            return "C"
        d = g.degree(x)
        return None if d < 3 else ("3" if d == 3 else "4" if d == 4 else "H")

    ntoks = []
    pend = tags.pendants_of_vertex(v)
    for i, x in _enumerate(nbrs):
        c = cls(x)
        if c is None:
            return None
        flags = ""
        if c == "3":
            if any((x, f.index) in tags.weak3 for f in (faces[i - 1], faces[i]) if f.degree == 3):
                flags += "w"
            if any(x in g.faces[fi].vertices for fi in pend):
                flags += "p"
        elif c == "4":
            flags += "b" if x in tags.bad4 else ""
            flags += "o" if x in tags.poor else ""
            flags += "q" if x in tags.q4.get(v, ()) else ""
        ntoks.append(c + flags)
    ftoks = []
    for i, f in _enumerate(faces):
        p = g.corner_position(f, v, nbrs[i])
        w = f.walk[p:] + f.walk[:p]
        if w[0] != v or w[1] != nbrs[i] or w[-1] != nbrs[(i + 1) % k]:
            return None
        if f.degree == 3:
            ftoks.append("T")
        elif f.degree == 4:
            if not f.is_cycle:
                return None
            c = cls(w[2])
            if c is None:
                return None
            ftoks.append("Q" + c + ("o" if c == "4" and w[2] in tags.poor else ""))
        else:
            ftoks.append("S")
    sc = VertexScenario(k, tuple(ntoks), tuple(ftoks))
    if sc.tp != len(pend):
        return None
    for i in range(k):
        if ftoks[i] == ftoks[i - 1] == "T" and ntoks[i][0] == "3":
            return None
    return sc


def _extract_c0(rooted, v: int, tags) -> C0VertexScenario | None:
    g = rooted.base
    seen = []
    for f in g.incident_faces(v):
        if f.index == rooted.outer_index or f.index in [x.index for x in seen]:
            continue
        seen.append(f)
    faces = []
    for f in seen:
        hits = rooted.c0_count(f)
        if f.degree == 3:
            faces.append(f"T{hits}")
        elif f.degree == 4:
            faces.append(f"Q{hits}")
        elif r4_amount(f.degree, hits) == 0:
            faces.append("S")
        else:
            return None
    return C0VertexScenario(g.degree(v), tuple(faces), len(tags.pendants_of_vertex(v)))
