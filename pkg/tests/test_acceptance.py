"""End-to-end acceptance run: one PASS/FAIL line per criterion, with timing.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import sys
import time
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import brute_colorable, complete_adj  # noqa: E402

from planecolor import caseenum  # noqa: E402
from planecolor.coloring import (  # noqa: E402
    SPEC_110,
    ColorSpec,
    first_nonextending_precoloring,
    solve,
)
from planecolor.configurations import catalog, falsified_variant, verify_local_extendability  # noqa: E402
from planecolor.discharging import apply_rules, initial_charges  # noqa: E402
from planecolor.formats import fixtures, format_rotation, parse_rotation, read_planar_code, write_planar_code  # noqa: E402
from planecolor.generate import generate_plane_graphs  # noqa: E402
from planecolor.plane_graph import adjacency_of, canonical_cycle, default_root, has_triangle, simple_cycles  # noqa: E402

RESULTS: dict[int, str] = {}


def report(n: int, ok: bool, detail: str, elapsed: float, budget: float) -> None:
    in_time = elapsed <= budget
    verdict = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.1f}s of {budget:.0f}s" + ("" if in_time else ", over budget")
    line = f"criterion {n}: {verdict} {detail} ({timing})"
    RESULTS[n] = line
    print(line)
    assert ok, line
    assert in_time, line


def _charge_corpus():
    for doc in fixtures().values():
        yield doc.rooted or default_root(doc.graph)
    for g in generate_plane_graphs(8):
        yield default_root(g)


def test_criterion_1_initial_charge_sums_to_zero():
    t = time.perf_counter()
    count, bad = 0, []
    for r in _charge_corpus():
        count += 1
        total = initial_charges(r).total_initial()
        if total != 0:
            bad.append((r.base.rotation, total))
    report(1, not bad, f"{count} rooted graphs, {len(bad)} nonzero initial sums", time.perf_counter() - t, 30)


def test_criterion_2_final_charge_sums_to_zero():
    t = time.perf_counter()
    count, bad = 0, []
    for r in _charge_corpus():
        count += 1
        led = apply_rules(r)
        if led.total_final() != 0:
            bad.append((r.base.rotation, led.total_final()))
    report(2, not bad, f"{count} rooted graphs, {len(bad)} nonzero final sums", time.perf_counter() - t, 30)


def test_criterion_3_family_graphs_are_colorable():
    t = time.perf_counter()
    graphs = list(generate_plane_graphs(8, "family_F"))
    bad = [g.rotation for g in graphs if solve(g, SPEC_110) is None]
    report(3, not bad, f"{len(graphs)} graphs in F, {len(bad)} not (1,1,0)-colourable", time.perf_counter() - t, 600)


def _chosen_triangle(g):
    # the least facial triangle, else the least triangle
    facial = [canonical_cycle(f.walk) for f in g.faces if f.degree == 3 and f.is_cycle]
    if facial:
        return min(facial)
    return min(canonical_cycle(c) for c in simple_cycles(adjacency_of(g), 3))


def test_criterion_4_triangle_precolorings_superextend():
    t = time.perf_counter()
    count, bad = 0, []
    for g in generate_plane_graphs(8, "family_F"):
        if not has_triangle(g):
            continue
        count += 1
        tri = _chosen_triangle(g)
        failing = first_nonextending_precoloring(g, tri, SPEC_110)
        if failing is not None:
            bad.append((g.rotation, failing))
    report(4, not bad, f"{count} graphs in F with a triangle, {len(bad)} failures", time.perf_counter() - t, 900)


def test_criterion_5_configuration_catalog():
    t = time.perf_counter()
    failed = [c.name for c in catalog() if not verify_local_extendability(c).ok]
    rep = verify_local_extendability(falsified_variant())
    ok = not failed and not rep.ok and bool(rep.witness)
    witness = " ".join(f"{v}:{c}" for v, c in sorted((rep.witness or {}).items()))
    detail = f"{len(catalog()) - len(failed)}/{len(catalog())} entries ok, falsified variant witness {witness or 'none'}"
    report(5, ok, detail, time.perf_counter() - t, 60)


EQUATIONS = {
    "face:3": [(-3, (F(5, 4), F(5, 4), F(1, 2))), (-3, (F(9, 4), F(3, 4)))],
    "face:4": [(-2, (F(5, 6), F(2, 3), F(1, 2)))],
}


def test_criterion_6_face_arithmetic():
    t = time.perf_counter()
    found = []
    for center, targets in EQUATIONS.items():
        seen = {}
        for v in caseenum.enumerate(center):
            key = (v.terms[0], tuple(sorted(v.terms[1:])))
            seen.setdefault(key, v)
        for init, parts in targets:
            v = seen.get((init, tuple(sorted(parts))))
            if v is not None and v.mu == 0 and init + sum(parts) == 0:
                found.append(f"{v.scenario}: {v.equation()}")
    for line in found:
        print("  ", line)
    report(6, len(found) == 3, f"{len(found)}/3 printed equations reproduced", time.perf_counter() - t, 60)


MINIMA = [
    ("face:3", (), "≥0"),
    ("face:4", (), "≥0"),
    ("vertex:4", (), "≥0"),
    ("vertex:5", (), "≥0"),
    ("vertex:6", (), "≥0"),
    ("c0:3", (), "≥0"),
    ("c0:7", (), "≥0"),
    ("vertex:4", ("no-two-344-triangles-at-4-vertex",), F(-1, 2)),
    ("vertex:6", ("weak6-R2c-reduction",), F(-1, 4)),
]


def test_criterion_7_case_minima():
    t = time.perf_counter()
    misses = []
    for center, off, want in MINIMA:
        res = caseenum.min_final_charge(center, off)
        ok = res.value >= 0 if want == "≥0" else res.value == want
        label = f"{center}" + (f" without {','.join(off)}" if off else "")
        print(f"   {label}: min {res.value} (want {want}) witness {res.witness.scenario if res.witness else '-'}")
        if not ok:
            misses.append(f"{label} min {res.value}")
    detail = "all minima as required" if not misses else "misses: " + "; ".join(misses)
    report(7, not misses, detail, time.perf_counter() - t, 120)


SPECS = [ColorSpec((0, 0, 0)), ColorSpec((1, 1, 0)), ColorSpec((1, 1, 1))]


def test_criterion_8_solver_matches_enumeration():
    t = time.perf_counter()
    count, bad = 0, []
    for name, doc in fixtures().items():
        if doc.graph.order > 8:
            continue
        adj = adjacency_of(doc.graph)
        for spec in SPECS:
            count += 1
            if (solve(doc.graph, spec) is not None) != brute_colorable(adj, spec.caps):
                bad.append((name, str(spec)))
    k5 = solve(complete_adj(5), SPEC_110) is not None
    k6 = solve(complete_adj(6), SPEC_110) is not None
    ok = not bad and k5 and not k6
    detail = f"{count} fixture/spec pairs, {len(bad)} disagreements; K5 {'SAT' if k5 else 'UNSAT'}, K6 {'SAT' if k6 else 'UNSAT'}"
    report(8, ok, detail, time.perf_counter() - t, 300)


def test_criterion_9_format_round_trips():
    graphs = list(generate_plane_graphs(7))[:1000]
    t = time.perf_counter()
    data = write_planar_code(graphs)
    back = read_planar_code(data)
    pc_ok = write_planar_code(back) == data and [g.rotation for g in back] == [g.rotation for g in graphs]
    texts = [format_rotation(g) for g in graphs]
    rot_ok = all(format_rotation(parse_rotation(x).graph) == x for x in texts)
    ok = len(graphs) == 1000 and pc_ok and rot_ok
    detail = f"{len(graphs)} graphs, planar_code {'exact' if pc_ok else 'differs'}, rotation text {'exact' if rot_ok else 'differs'}"
    report(9, ok, detail, time.perf_counter() - t, 10)


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[2]))
    failures = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failures += 1
    print()
    for n in sorted(RESULTS):
        print(RESULTS[n])
    raise SystemExit(1 if failures else 0)
