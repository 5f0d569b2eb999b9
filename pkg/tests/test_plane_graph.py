import itertools

import pytest
from hypothesis import given, settings, strategies as st

from planecolor.errors import (
    Disconnected,
    EulerViolation,
    LoopCreated,
    LoopOrMultiEdge,
    MissingReverseEdge,
    NotACycle,
    NotAFace,
)
from planecolor.generate import generate_plane_graphs
from planecolor.plane_graph import (
    PlaneGraph,
    build_from_rotation,
    canonical_cycle,
    check_family_membership,
    contract_sets,
    cycles_up_to,
    is_separating,
    root_at,
    trace_faces,
)

from conftest import brute_cycles, graph, k4_with_hub

SMALL = list(generate_plane_graphs(6))


def test_triangle_counts():
    g = build_from_rotation({1: [2, 3], 2: [3, 1], 3: [1, 2]})
    assert (g.order, g.size, len(g.faces)) == (3, 3, 2)
    assert [f.degree for f in trace_faces(g)] == [3, 3]


def test_cube_counts():
    g = graph("cube")
    assert (g.order, g.size, len(g.faces)) == (8, 12, 6)
    assert all(f.degree == 4 for f in g.faces)


def test_single_edge_has_one_face_of_length_two():
    g = PlaneGraph({1: [2], 2: [1]})
    assert [f.degree for f in g.faces] == [2]


@pytest.mark.parametrize(
    "rotation, error",
    [
        ({1: [2], 2: []}, MissingReverseEdge),
        ({1: [1]}, LoopOrMultiEdge),
        ({1: [2, 2], 2: [1, 1]}, LoopOrMultiEdge),
        ({1: [2], 2: [1], 3: [4], 4: [3]}, Disconnected),
        # K4 with a rotation that is not planar
        ({1: [2, 3, 4], 2: [1, 3, 4], 3: [1, 2, 4], 4: [1, 2, 3]}, EulerViolation),
    ],
)
def test_build_errors(rotation, error):
    with pytest.raises(error):
        build_from_rotation(rotation)


def test_face_walk_successor_uses_preceding_neighbour():
    g = graph("k4")
    for f in g.faces:
        w = f.walk
        for i in range(len(w)):
            u, v, x = w[i], w[(i + 1) % len(w)], w[(i + 2) % len(w)]
            nb = g.neighbors(v)
            assert nb[(nb.index(u) - 1) % len(nb)] == x


def test_euler_on_fixtures_and_generated(fx):
    graphs = [d.graph for d in fx.values()] + SMALL
    for g in graphs:
        assert g.order - g.size + len(g.faces) == 2
        assert sum(f.degree for f in g.faces) == 2 * g.size


def test_every_dart_on_exactly_one_face():
    for g in SMALL[:300]:
        darts = [d for f in g.faces for d in f.darts]
        assert len(darts) == len(set(darts)) == 2 * g.size


def test_k4_triangles():
    cs = cycles_up_to(graph("k4"), 3)
    assert len(cs) == 4 and all(c.length == 3 and c.facial for c in cs)


def test_cube_short_cycles_match_brute_force():
    g = graph("cube")
    cs = cycles_up_to(g, 5)
    assert sorted(c.length for c in cs) == [4] * 6
    assert {c.vertices for c in cs} == brute_cycles(g, 5)


def test_c7_single_cycle():
    cs = cycles_up_to(graph("c7"), 7)
    assert [c.vertices for c in cs] == [(1, 2, 3, 4, 5, 6, 7)]


def test_cycle_bound_range():
    with pytest.raises(ValueError):
        cycles_up_to(graph("k3"), 9)


def test_cycles_agree_with_brute_force_on_corpus():
    for g in SMALL[::7]:
        assert {c.vertices for c in cycles_up_to(g, 6)} == brute_cycles(g, 6)


def test_canonical_cycle_is_least_rotation_or_reflection():
    assert canonical_cycle((3, 1, 4, 2)) == (1, 3, 2, 4)
    assert canonical_cycle((2, 4, 1, 3)) == (1, 3, 2, 4)


def test_family_membership_examples():
    v = check_family_membership(graph("c5"))
    assert not v and v.kind == "5-cycle" and v.witness == (1, 2, 3, 4, 5)
    v = check_family_membership(graph("k4"))
    assert not v and v.kind == "adjacent-triangles"
    assert check_family_membership(graph("cube"))


def test_family_membership_matches_cycle_definition():
    for g in SMALL:
        cs = [c.vertices for c in cycles_up_to(g, 5)]
        tri_edges = [{frozenset((c[i], c[(i + 1) % 3])) for i in range(3)} for c in cs if len(c) == 3]
        adjacent = any(a & b for a, b in itertools.combinations(tri_edges, 2))
        expected = not any(len(c) == 5 for c in cs) and not adjacent
        assert bool(check_family_membership(g)) == expected


def test_cube_rooted_face_classes():
    r = root_at(graph("cube"), (1, 2, 4, 3))
    classes = r.face_classes()
    assert len(classes[(4, 2)]) == 4
    assert len(classes[(4, 0)]) == 1


def test_k4_hub_rooted_at_outer_triangle():
    r = root_at(k4_with_hub(), (1, 2, 3))
    assert {k: len(v) for k, v in r.face_classes().items()} == {(3, 2): 3}


def test_root_at_non_face():
    g = graph("cube")
    with pytest.raises(NotAFace):
        root_at(g, (1, 2, 6, 5, 7, 3))


def test_c0_incidences_sum():
    for g in SMALL[::11]:
        for f in g.faces:
            if not f.is_cycle:
                continue
            r = root_at(g, f.walk)
            direct = sum(len(set(h.walk) & r.c0) for h in r.inner_faces())
            assert sum(r.c0_count(h) for h in r.inner_faces()) == direct


def test_separating():
    g = k4_with_hub()
    assert not is_separating(g, (1, 2, 3))
    # triangle 1 2 3 with vertex 4 inside and 5 outside, both joined to all of it
    g2 = PlaneGraph({
        1: [2, 4, 3, 5], 2: [3, 4, 1, 5], 3: [1, 4, 2, 5],
        4: [1, 2, 3], 5: [1, 3, 2],
    })
    assert is_separating(g2, (1, 2, 3))
    assert not any(is_separating(graph("cube"), f.walk) for f in graph("cube").faces)
    with pytest.raises(NotACycle):
        is_separating(g2, (1, 4, 5))


def test_contract_c4_diagonal():
    c = contract_sets(graph("c4"), {1, 3})
    assert c.order == 3
    assert sorted(len(n) for n in c.adjacency.values()) == [1, 1, 2]


def test_contract_adjacent_pair():
    with pytest.raises(LoopCreated):
        contract_sets(graph("c4"), {1, 2})


def test_contract_cube_diagonal_stays_in_family():
    g = graph("cube")
    face = g.faces[0].walk
    c = contract_sets(g, {face[0], face[2]})
    assert c.order == 7 and c.embedding is not None
    assert check_family_membership(c.embedding)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_contraction_counts(g, data):
    non_adj = [(u, v) for u in g.vertices for v in g.vertices if u < v and not g.has_edge(u, v)]
    if not non_adj:
        return
    u, v = data.draw(st.sampled_from(non_adj))
    c = contract_sets(g, {u, v})
    assert c.order == g.order - 1
    for x, nb in c.adjacency.items():
        assert x not in nb
        assert all(x in c.adjacency[y] for y in nb)
