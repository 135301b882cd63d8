"""Independent brute-force reference implementations for the tests.

These deliberately avoid the package's search code paths: subset
enumeration and itertools only, so oracle bugs cannot hide behind shared
logic.
"""

import itertools

from eppack.graph import Mode, MultiGraph
from eppack.iso import enumerate_cycles


def bf_vcover_cycles(g):
    """Smallest vertex set whose removal leaves a forest, by enumeration."""
    verts = sorted(g.vertices)
    for size in range(len(verts) + 1):
        for comb in itertools.combinations(verts, size):
            if g.delete_vertices(comb).is_forest():
                return size
    raise AssertionError("unreachable")


def bf_ecover_cycles(g):
    edges = sorted(g.edges)
    for size in range(len(edges) + 1):
        for comb in itertools.combinations(edges, size):
            if g.delete_edges(comb).is_forest():
                return size
    raise AssertionError("unreachable")


def _max_disjoint(sets):
    """Largest pairwise-disjoint subfamily, plain recursion."""
    best = 0

    def rec(i, used, acc):
        nonlocal best
        if acc + len(sets) - i <= best:
            return
        if i == len(sets):
            best = max(best, acc)
            return
        if not (sets[i] & used):
            rec(i + 1, used | sets[i], acc + 1)
        rec(i + 1, used, acc)

    rec(0, frozenset(), 0)
    return best


def bf_vpack_cycles(g, cap=200_000):
    cycles = enumerate_cycles(g, cap)
    return _max_disjoint([c.vertex_set for c in cycles])


def bf_epack_cycles(g, cap=200_000):
    cycles = enumerate_cycles(g, cap)
    return _max_disjoint([c.edge_set for c in cycles])


def bf_min_hitting(universe, sets):
    """Smallest subset of the universe meeting every set."""
    universe = sorted(universe)
    for size in range(len(universe) + 1):
        for comb in itertools.combinations(universe, size):
            chosen = set(comb)
            if all(s & chosen for s in sets):
                return size
    raise AssertionError("unreachable")


def from_networkx(nxg):
    """Convert a simple networkx graph to the package representation."""
    nodes = sorted(nxg.nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    edges = [(pos[u], pos[v]) for u, v in nxg.edges]
    return MultiGraph.from_edges(range(len(nodes)), edges)
