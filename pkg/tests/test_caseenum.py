from collections import Counter
from fractions import Fraction as F
import random
from itertools import islice

import pytest

from planecolor import caseenum as ce
from planecolor.caseenum import (
    C0Profile,
    Center,
    VertexScenario,
    c0_formula,
    eq2_bound,
    eq3_bound,
    evaluate,
    extract,
    min_final_charge,
    predicate_registry,
    resolve_switches,
    structurally_valid,
)
from planecolor.discharging import apply_rules, classify_roles, vkey
from planecolor.errors import CenterTooLarge
from planecolor.generate import generate_plane_graphs
from planecolor.plane_graph import root_at_face


def _terms(v):
    return Counter(v.terms[1:])


def test_center_parse():
    assert Center.parse("vertex:5") == Center("vertex", 5)
    assert Center.parse("v:4") == Center("vertex", 4)
    with pytest.raises(CenterTooLarge):
        list(ce.enumerate("vertex:9"))
    with pytest.raises(ValueError):
        Center.parse("face:5").check()


def test_counting_bound():
    assert eq3_bound(8) == 1
    assert eq3_bound(9) == F(15, 8)


# -- face arithmetic -------------------------------------------------------


def _face(center, tokens):
    target = next(v for v in ce.enumerate(center) if str(v.scenario).split(": ")[1] == tokens)
    return target


def test_344_triangle_sum():
    v = _face("face:3", "3c 4b 4b")
    assert v.admissible and v.terms[0] == -3 and v.mu == 0
    assert _terms(v) == Counter({F(5, 4): 2, F(1, 2): 1})


def test_bad_345_with_weak_three():
    v = _face("face:3", "3w 4b H")
    assert v.terms == (-3, F(3, 4), F(9, 4)) and v.mu == 0


def test_light_4_face():
    v = _face("face:4", "3 4 4o H")
    assert _terms(v) == Counter({F(5, 6): 1, F(2, 3): 1, F(1, 2): 1}) and v.mu == 0


def test_superlight_4_face():
    v = _face("face:4", "3 4o 4o H")
    assert _terms(v) == Counter({F(1): 1, F(1, 2): 2}) and v.mu == 0
    assert v.equation() == "-2 + 1/2 + 1/2 + 1 = 0"


@pytest.mark.parametrize("center", ["face:3", "face:4", "c0vertex:4", "c0vertex:5", "c0:7"])
def test_face_like_minima_nonnegative(center):
    assert min_final_charge(center).value >= 0


# -- vertex minima -----------------------------------------------------------


def test_four_vertex():
    value, witness = min_final_charge("vertex:4")
    assert value == 0 and witness.admissible


def test_four_vertex_without_two_344_predicate():
    value, witness = min_final_charge("vertex:4", ["no-two-344-triangles-at-4-vertex"])
    assert value == F(-1, 2)
    s = witness.scenario
    assert sum(ce.is_344(s, i) for i in range(s.k) if s.faces[i] == "T") == 2
    assert witness.flow("R1.1") == F(-5, 2)


def test_six_vertex_weak_reduction_is_needed():
    assert min_final_charge("vertex:6").value == 0
    value, witness = min_final_charge("vertex:6", ["weak6-R2c-reduction"])
    assert value == F(-1, 4)
    assert witness.scenario.t3 == 3


def test_five_vertex_pendant_case():
    # the (5,3,3) triangle, a (5,5+,3) triangle and a pendant triangle leave -1/4
    value, witness = min_final_charge("vertex:5")
    assert value == F(-1, 4)
    assert str(witness.scenario) == "v5: 3 S 3 T 3 S 3p S H T"
    assert witness.admissible


def test_budget_fallback():
    res = min_final_charge("vertex:8", node_budget=500)
    assert not res.exact and res.value == eq3_bound(8)


def test_three_vertex_trivial():
    assert min_final_charge("vertex:3").value == 0


# -- the branch and bound against plain enumeration -------------------------


@pytest.fixture(scope="module")
def v4_all():
    return list(ce.enumerate("vertex:4"))


@pytest.mark.parametrize("name", [
    "no-two-344-triangles-at-4-vertex",
    "bad-4-vertex-has-strong-neighbour-off-triangle",
    "poor-4-vertex-has-5plus-on-each-opposite-pair",
    "four-vertex-33-face-flanked-by-6plus",
    "q4-member-has-clean-face",
])
def test_bnb_matches_enumeration(v4_all, name):
    pool = [v for v in v4_all if set(v.violations) <= {name}]
    best = min(pool, key=lambda v: (v.mu, str(v.scenario)))
    res = min_final_charge("vertex:4", [name])
    assert res.value == best.mu
    assert str(res.witness.scenario) == str(best.scenario)


def test_anti_monotone(v4_all):
    full = min(v.mu for v in v4_all if v.admissible)
    for p in predicate_registry():
        if p.is_rule_switch:
            continue
        relaxed = min(v.mu for v in v4_all if set(v.violations) <= {p.name})
        assert relaxed <= full


def test_enumeration_is_canonical_and_unique(v4_all):
    names = [str(v.scenario) for v in v4_all]
    assert len(names) == len(set(names))
    assert all(v.scenario == v.scenario.canonical() for v in v4_all)
    again = [str(v.scenario) for v in islice(ce.enumerate("vertex:4"), 200)]
    assert again == names[:200]


def test_rotation_and_reflection_keep_charge():
    s = VertexScenario(5, ("3", "3p", "3", "3", "H"), ("S", "S", "T", "S", "T"))
    mu = evaluate(s).mu
    for shift in range(5):
        nb = s.nbrs[shift:] + s.nbrs[:shift]
        fc = s.faces[shift:] + s.faces[:shift]
        assert evaluate(VertexScenario(5, nb, fc)).mu == mu
    assert evaluate(s.canonical()).mu == mu


# -- predicates -------------------------------------------------------------


def test_registry():
    reg = predicate_registry()
    names = {p.name for p in reg}
    assert len(reg) >= 15
    assert {"no-two-344-triangles-at-4-vertex", "Q4-charge-bundle ≤ 1"} <= names
    assert all(p.anchor and p.tag for p in reg)
    for p in reg:
        assert resolve_switches([p.tag]) == {p.name} == resolve_switches([p.name])
    with pytest.raises(KeyError):
        resolve_switches(["nonsense"])


def test_predicates_are_individually_switchable():
    s = VertexScenario(4, ("3", "4b", "3", "4b"), ("S", "T", "S", "T"))
    v = evaluate(s)
    assert "no-two-344-triangles-at-4-vertex" in v.violations
    v2 = evaluate(s, ["no-two-344-triangles-at-4-vertex"])
    assert "no-two-344-triangles-at-4-vertex" not in v2.violations


# -- C0 ---------------------------------------------------------------------


@pytest.mark.parametrize("length", [3, 7])
def test_c0_formula(length):
    by_s2 = {}
    for v in ce.enumerate(f"c0:{length}"):
        by_s2.setdefault(v.scenario.s2, []).append(v.mu)
    for s2, mus in by_s2.items():
        bonus = 1 if (length, s2) == (7, 6) else 0
        assert min(mus) == c0_formula(length, s2) + bonus


def test_c0_all_two_vertices_is_the_trivial_graph():
    v = evaluate(C0Profile(7, 7, 0, 0, 0))
    assert v.mu == -1 and not v.admissible
    assert any("G = C0" in n for n in v.notes)


# -- random neighbourhoods ----------------------------------------------------


def _random_scenarios(k, count, seed):
    rng = random.Random(seed)
    skels = ce._skeletons(k)
    for _ in range(count):
        sk = rng.choice(skels)
        nb = tuple(rng.choice(ce._nbr_options(k, sk[i - 1], sk[i])) for i in range(k))
        fc = tuple(x if x != "Q" else "Q" + rng.choice(ce._DIAGS) for x in sk)
        s = VertexScenario(k, nb, fc)
        if structurally_valid(s):
            yield evaluate(s)


@pytest.mark.parametrize("k", [7, 8])
def test_counting_chain(k):
    seen = 0
    for v in _random_scenarios(k, 6000, k):
        if v.admissible:
            seen += 1
            assert v.mu >= eq2_bound(v.scenario) >= eq3_bound(k)
    assert seen > 300


@pytest.mark.parametrize("k", [4, 6])
def test_no_random_scenario_beats_the_search(k):
    least = min_final_charge(f"vertex:{k}").value
    assert all(v.mu >= least for v in _random_scenarios(k, 8000, k) if v.admissible)


def test_adjacent_triangles_rejected():
    s = VertexScenario(7, ("3", "H", "3", "3", "3", "3w", "4"), ("T", "T", "T", "S", "S", "T", "T"))
    with pytest.raises(ValueError):
        evaluate(s)


# -- agreement with the graph engine -------------------------------------------


def test_extracted_scenarios_match_ledger():
    seen = 0
    for g in generate_plane_graphs(7, "family_F", min_n=4):
        for f in g.faces:
            if not f.is_cycle or f.degree not in (3, 7):
                continue
            r = root_at_face(g, f.index)
            tags = classify_roles(r)
            final = apply_rules(r, tags).final
            for v in g.vertices:
                sc = extract(r, v, tags)
                if sc is None:
                    continue
                seen += 1
                assert evaluate(sc).mu == final[vkey(v)], (g.rotation, f.walk, v, str(sc))
    assert seen > 200


def test_table_rows():
    rows = list(ce.table("face:3"))
    assert rows[0].split("\t") == ["scenario", "mu", "admissible", "violations"]
    assert len(rows) == 1 + sum(1 for _ in ce.enumerate("face:3"))
