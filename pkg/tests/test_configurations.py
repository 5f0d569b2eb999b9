import itertools

import pytest

from planecolor import configurations as cf
from planecolor.coloring import ColorSpec
from planecolor.configurations import (
    Configuration,
    catalog,
    extend_precoloring,
    falsified_variant,
    find,
    format_catalog,
    parse_catalog,
    scan_graph,
    verify_local_extendability,
)
from planecolor.errors import ConfigTooLarge, InvalidConfiguration
from planecolor.plane_graph import root_at

from conftest import graph, k4_with_hub


def oracle(cfg: Configuration) -> tuple[bool, dict | None]:
    """Enumerate every total colouring of C; no sweep, no memo."""
    adj = cfg.adjacency()
    spec = cfg.spec
    fixed, free = cfg.fixed, cfg.free

    def limit(v, c):
        return min(cfg.allow(v), spec.cap(c)) if v in fixed else spec.cap(c)

    for combo in itertools.product(spec.colors, repeat=len(fixed)):
        pre = dict(zip(fixed, combo))
        if any(pre[u] != pre[v] for u, v in cfg.equalities):
            continue
        if any(sum(pre.get(u) == pre[v] for u in adj[v]) > limit(v, pre[v]) for v in fixed):
            continue
        ok = False
        for rest in itertools.product(spec.colors, repeat=len(free)):
            col = {**pre, **dict(zip(free, rest))}
            if all(sum(col[u] == col[v] for u in adj[v]) <= limit(v, col[v]) for v in cfg.vertices):
                ok = True
                break
        if not ok:
            return False, pre
    return True, None


def test_catalog_size_and_anchors():
    entries = catalog()
    assert len(entries) >= 10
    assert all(c.anchor and c.tag for c in entries)


def test_identification_entry_uses_equalities():
    assert find("diagonal-three-at-five-vertex").equalities


@pytest.mark.parametrize("cfg", catalog(), ids=lambda c: c.name)
def test_catalog_entry_verifies(cfg):
    rep = verify_local_extendability(cfg)
    assert rep.ok, rep.witness


def test_falsified_variant_fails_with_sound_witness():
    cfg = falsified_variant()
    rep = verify_local_extendability(cfg)
    assert not rep.ok and rep.witness
    assert extend_precoloring(cfg, rep.witness) is None


def test_empty_core_is_vacuous():
    cfg = Configuration("edge", 2, ((1, 2),), frozenset(), allowance={1: 1, 2: 1})
    assert verify_local_extendability(cfg).ok


def test_small_entries_match_oracle():
    small = [c for c in catalog() + cf.exploratory() if c.order <= 9]
    small.append(falsified_variant())
    assert small
    for cfg in small:
        rep = verify_local_extendability(cfg)
        ok, witness = oracle(cfg)
        assert rep.ok == ok, cfg.name
        if not ok:
            assert rep.witness == witness


def test_lexicographic_witness():
    rep = verify_local_extendability(falsified_variant())
    assert rep.witness == oracle(falsified_variant())[1]


def _small():
    return [c for c in catalog() if c.order <= 8]


def test_allowance_monotone():
    for cfg in _small():
        more = {v: 1 for v in cfg.fixed}
        assert verify_local_extendability(cfg.replace(allowance=more)).ok


def test_equalities_only_shrink():
    for cfg in _small():
        fixed = cfg.fixed
        if len(fixed) < 2:
            continue
        extra = tuple(cfg.equalities) + ((fixed[0], fixed[-1]),)
        assert verify_local_extendability(cfg.replace(equalities=extra)).ok


def test_catalog_text_round_trip():
    text = format_catalog(catalog())
    back = parse_catalog(text)
    assert back == list(catalog())
    assert format_catalog(back) == text


def test_invalid_configurations():
    with pytest.raises(InvalidConfiguration):
        Configuration("bad", 2, ((1, 3),), frozenset({1}))
    with pytest.raises(InvalidConfiguration):
        Configuration("bad", 3, ((1, 2),), frozenset({1}), equalities=((1, 2),))


def test_shell_limit():
    edges = tuple((1, v) for v in range(2, 17))
    cfg = Configuration("star", 16, edges, frozenset({1}))
    with pytest.raises(ConfigTooLarge):
        verify_local_extendability(cfg)


def test_extend_rejects_inadmissible():
    cfg = find("triangle-333")
    pre = {v: 1 for v in cfg.fixed}
    pre[cfg.fixed[0]] = 2
    with pytest.raises(InvalidConfiguration):
        extend_precoloring(cfg, {cfg.fixed[0]: 1})


def test_scan_cube_finds_two_three_neighbours():
    r = root_at(graph("cube"), (1, 2, 4, 3))
    names = {m.name for m in scan_graph(r)}
    assert "three-vertex-two-three-neighbours" in names


def test_scan_without_interior_threes():
    r = graph("octahedron")
    found = scan_graph(root_at(r, r.faces[0].walk))
    assert not any(m.name == "three-vertex-two-three-neighbours" for m in found)


def test_scan_k4_hub_reports_33x_triangles():
    found = scan_graph(root_at(k4_with_hub(), (1, 2, 3)))
    assert any(m.name == "triangle-33x" for m in found)


def test_spec_parse():
    assert ColorSpec.parse("1, 1, 0") == ColorSpec((1, 1, 0))
