import itertools

import networkx as nx
import pytest

from planecolor.errors import BoundTooLarge
from planecolor.generate import bundled_corpus, generate_plane_graphs, plane_graphs_by_order
from planecolor.plane_graph import check_family_membership, has_triangle


def _face_count(rot) -> int:
    seen, faces = set(), 0
    for u in rot:
        for v in rot[u]:
            if (u, v) in seen:
                continue
            faces += 1
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                r = rot[b]
                a, b = b, r[r.index(a) - 1]
    return faces


def _norm(rot):
    out = []
    for _, r in sorted(rot.items()):
        i = r.index(min(r)) if r else 0
        out.append(tuple(r[i:] + r[:i]))
    return tuple(out)


def oracle_count(n: int) -> int:
    """Plane embeddings of every connected planar graph on n vertices, up to relabelling and mirror.

    Graphs come from the networkx atlas; embeddings are all rotation systems
    passing Euler's formula; classes are found by brute force over automorphisms.
    """
    if n == 1:
        return 1
    total = 0
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() != n or not nx.is_connected(G) or not nx.check_planarity(G)[0]:
            continue
        V = sorted(G)
        auts = [p for p in itertools.permutations(V) if all(G.has_edge(p[a], p[b]) for a, b in G.edges())]
        choices = []
        for v in V:
            nb = sorted(G[v])
            choices.append([tuple(nb)] if len(nb) <= 1 else [(nb[0],) + p for p in itertools.permutations(nb[1:])])
        classes = set()
        for combo in itertools.product(*choices):
            rot = dict(zip(V, combo))
            if n - G.number_of_edges() + _face_count(rot) != 2:
                continue
            classes.add(min(
                _norm({p[v]: tuple(p[u] for u in (rot[v][::-1] if m else rot[v])) for v in V})
                for p in auts for m in (False, True)
            ))
        total += len(classes)
    return total


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_oracle(n):
    layers = list(plane_graphs_by_order(n, use_corpus=False))
    assert len(layers[-1]) == oracle_count(n)


def test_small_examples():
    three = list(generate_plane_graphs(3, min_n=3))
    assert sorted(g.size for g in three) == [2, 3]
    four_f = list(generate_plane_graphs(4, "family_F", min_n=4))
    assert all(g.size < 6 for g in four_f)
    assert len(four_f) < len(list(generate_plane_graphs(4, min_n=4)))


def test_filters():
    for g in generate_plane_graphs(6, "family_F"):
        assert check_family_membership(g)
    for g in generate_plane_graphs(6, "has_triangle"):
        assert has_triangle(g)
    with pytest.raises(ValueError):
        list(generate_plane_graphs(3, "nope"))


def test_bound():
    with pytest.raises(BoundTooLarge):
        list(generate_plane_graphs(11))


def test_corpus_regenerates():
    corpus = bundled_corpus()
    fresh = list(plane_graphs_by_order(7, use_corpus=False))
    for a, b in zip(corpus, fresh):
        assert [g.rotation for g in a] == [g.rotation for g in b]


def test_no_duplicates_in_corpus():
    for layer in bundled_corpus():
        codes = [g.canonical_code for g in layer]
        assert len(codes) == len(set(codes))
