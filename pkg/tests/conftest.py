import itertools
import sys

import pytest

from planecolor.formats import fixtures
from planecolor.plane_graph import PlaneGraph, adjacency_of


@pytest.fixture(scope="session")
def fx():
    return fixtures()


def graph(name: str) -> PlaneGraph:
    return fixtures()[name].graph


def rooted(name: str):
    return fixtures()[name].rooted


def k4_with_hub() -> PlaneGraph:
    # outer triangle 1 2 3, hub 4 inside
    return PlaneGraph({1: [2, 4, 3], 2: [3, 4, 1], 3: [1, 4, 2], 4: [1, 2, 3]})


def complete_adj(m: int) -> dict[int, frozenset[int]]:
    return {v: frozenset(u for u in range(1, m + 1) if u != v) for v in range(1, m + 1)}


def brute_cycles(graph, max_len: int) -> set[tuple[int, ...]]:
    """Cycles as vertex tuples, by trying every ordered vertex subset."""
    adj = adjacency_of(graph)
    found = set()
    for L in range(3, max_len + 1):
        for combo in itertools.permutations(sorted(adj), L):
            if combo[0] != min(combo) or combo[1] > combo[-1]:
                continue
            if all(combo[(i + 1) % L] in adj[combo[i]] for i in range(L)):
                found.add(combo)
    return found


def brute_colorable(adj, caps) -> bool:
    verts = sorted(adj)
    k = len(caps)
    for combo in itertools.product(range(k), repeat=len(verts)):
        col = dict(zip(verts, combo))
        if all(sum(col[u] == col[v] for u in adj[v]) <= caps[col[v]] for v in verts):
            return True
    return False


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
