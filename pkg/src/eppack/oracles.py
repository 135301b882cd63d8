"""Exact desk-scale solvers used as ground truth.

Every solver either returns a provably optimal value with a verifying
witness or raises BudgetExceeded; it never approximates silently.
"""

import os
from dataclasses import dataclass

from .certificates import (
    CoverCertificate,
    PackingCertificate,
    PatternWitness,
)
from .errors import BudgetExceeded, InvalidParameter
from .graph import Cycle, Mode
from .iso import enumerate_copies

DEFAULT_NODE_CAP = 10_000_000
COPY_CAP = 100_000


def default_budget():
    return int(os.environ.get("EP_BUDGET", DEFAULT_NODE_CAP))


class _Counter:
    def __init__(self, cap):
        self.cap = cap
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.cap:
            raise BudgetExceeded(f"search exceeded {self.cap} nodes")


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: object
    explored: int


# -- cycle helpers ------------------------------------------------------------


def _chordless_cycles_through(g, v):
    """Chordless cycles containing v, as Cycle values (2-cycles included)."""
    out = []
    for u in g.neighbors(v):
        ids = g.edges_between(v, u)
        if len(ids) >= 2:
            out.append(Cycle((v, u), (ids[0], ids[1])))

    def emit(path):
        eids = []
        for a, b in zip(path, path[1:]):
            eids.append(g.edges_between(a, b)[0])
        eids.append(g.edges_between(path[-1], path[0])[0])
        out.append(Cycle(tuple(path), tuple(eids)))

    def dfs(path):
        last = path[-1]
        for u in sorted(g.neighbors(last)):
            if u in path:
                continue
            # chordless: u may touch the path only at its predecessor,
            # and may touch v only when it closes the cycle
            if any(g.edges_between(u, w) for w in path[1:-1]):
                continue
            if g.edges_between(u, v):
                if len(path) >= 2 and path[1] < u:
                    emit(path + [u])
                continue
            dfs(path + [u])

    for a in sorted(g.neighbors(v)):
        dfs([v, a])
    return out


def _chordless_cycles_through_edge(g, eid):
    """Chordless cycles using edge eid, shortest first.

    Restricting to chordless cycles is sound for edge-disjoint packing: if
    a maximum packing member through eid has a chord, the member plus the
    chord's owner (or the chord alone) re-decompose into as many
    edge-disjoint cycles with a strictly shorter member through eid.
    """
    u, v = g.endpoints(eid)
    out = []
    for other in g.edges_between(u, v):
        if other != eid:
            out.append(Cycle((u, v), (other, eid)))
    uv_simple = len(g.edges_between(u, v)) == 1

    def dfs(path, eids):
        last = path[-1]
        for w in sorted(g.neighbors(last)):
            if w in path:
                continue
            between = g.edges_between(last, w)
            if len(between) != 1:
                continue  # a parallel mate would be a chord
            if w == v:
                # closing straight from u would reuse eid itself; the
                # parallel 2-cycles are emitted above
                if len(path) >= 2 and uv_simple and not any(
                    g.edges_between(x, v) for x in path[1:-1]
                ):
                    out.append(
                        Cycle(tuple(path) + (v,), tuple(eids) + (between[0], eid))
                    )
                continue
            # w may touch the path only at its predecessor
            if any(g.edges_between(x, w) for x in path[:-1]):
                continue
            dfs(path + [w], eids + [between[0]])

    dfs([u], [])
    return sorted(out, key=lambda c: (len(c), c.vertices, c.edges))


def _cycle_space_dim(g):
    return g.m - g.n + len(g.components())


def _pack_upper_bound(g, mode):
    dim = _cycle_space_dim(g)
    has_parallel = any(
        len(g.edges_between(u, w)) >= 2 for u, w in g.underlying_pairs()
    )
    shortest = 2 if has_parallel else 3
    if mode is Mode.EDGE:
        return min(dim, g.m // shortest)
    return min(dim, g.n // shortest)


# -- exact cycle packing / covering -------------------------------------------


def exact_vpack_cycles(g, budget=None):
    """Maximum number of vertex-disjoint cycles, with witness."""
    counter = _Counter(budget or default_budget())
    best = [0, []]

    def rec(h, acc, members):
        counter.tick()
        if acc + _pack_upper_bound(h, Mode.VERTEX) <= best[0]:
            return
        c = h.shortest_cycle()
        if c is None:
            if acc > best[0]:
                best[0], best[1] = acc, list(members)
            return
        if acc + 1 > best[0]:
            # any single extra cycle already improves; record greedily
            best[0], best[1] = acc + 1, list(members) + [c]
        v = min(c.vertex_set)
        for p in _chordless_cycles_through(h, v):
            rec(h.delete_vertices(p.vertex_set), acc + 1, members + [p])
        rec(h.delete_vertices({v}), acc, members)

    rec(g, 0, [])
    witness = PackingCertificate(
        Mode.VERTEX, tuple(PatternWitness.from_cycle(c) for c in best[1])
    )
    return ExactResult(best[0], witness, counter.nodes)


def exact_vcover_cycles(g, budget=None):
    """Minimum feedback vertex set, with witness."""
    counter = _Counter(budget or default_budget())

    def attempt(h, size_left, chosen):
        counter.tick()
        c = h.shortest_cycle()
        if c is None:
            return chosen
        if size_left == 0:
            return None
        for v in sorted(c.vertex_set):
            got = attempt(h.delete_vertices({v}), size_left - 1, chosen + [v])
            if got is not None:
                return got
        return None

    for size in range(g.n + 1):
        got = attempt(g, size, [])
        if got is not None:
            witness = CoverCertificate(Mode.VERTEX, frozenset(got))
            return ExactResult(len(got), witness, counter.nodes)
    raise AssertionError("unreachable: deleting all vertices leaves a forest")


def exact_epack_cycles(g, budget=None):
    """Maximum number of edge-disjoint cycles, with witness."""
    counter = _Counter(budget or default_budget())
    # greedy shortest-cycle packing seeds the incumbent so pruning bites
    # from the first branch
    residue, seed = g, []
    while True:
        c = residue.shortest_cycle()
        if c is None:
            break
        seed.append(c)
        residue = residue.delete_edges(c.edge_set)
    best = [len(seed), seed]

    def rec(h, acc, members):
        counter.tick()
        if acc + _pack_upper_bound(h, Mode.EDGE) <= best[0]:
            return
        c = h.shortest_cycle()
        if c is None:
            if acc > best[0]:
                best[0], best[1] = acc, list(members)
            return
        if acc + min(_cycle_space_dim(h), h.m // len(c)) <= best[0]:
            return
        if acc + 1 > best[0]:
            best[0], best[1] = acc + 1, list(members) + [c]
        eid = min(c.edge_set)
        for p in _chordless_cycles_through_edge(h, eid):
            rec(h.delete_edges(p.edge_set), acc + 1, members + [p])
        rec(h.delete_edges({eid}), acc, members)

    rec(g, 0, [])
    witness = PackingCertificate(
        Mode.EDGE, tuple(PatternWitness.from_cycle(c) for c in best[1])
    )
    return ExactResult(best[0], witness, counter.nodes)


def exact_ecover_cycles(g):
    """Minimum edge set meeting all cycles: closed form m - n + components.

    The witness is the co-forest of a spanning forest; no search is needed,
    so this oracle is unbudgeted.
    """
    forest = set(g.spanning_forest_edges())
    extra = frozenset(eid for eid in g.edges if eid not in forest)
    witness = CoverCertificate(Mode.EDGE, extra)
    return ExactResult(len(extra), witness, 0)


# -- fixed-subgraph packing / covering ----------------------------------------


def _copies_with_elements(g, pattern, mode, copy_cap):
    copies = enumerate_copies(g, pattern, cap=copy_cap)
    out = []
    for vs, es in copies:
        elems = vs if mode is Mode.VERTEX else es
        out.append((PatternWitness(vs, es), frozenset(elems)))
    return out


def _greedy_disjoint(copies):
    used = set()
    picked = []
    for w, elems in copies:
        if not (elems & used):
            picked.append((w, elems))
            used |= elems
    return picked


def exact_pack_subgraph(g, pattern, mode, budget=None, copy_cap=COPY_CAP):
    """Maximum A_x-disjoint packing of copies of a fixed pattern.

    Branches on a least-covered element: either some member contains it
    (one branch per candidate copy) or no member does.
    """
    counter = _Counter(budget or default_budget())
    copies = _copies_with_elements(g, pattern, mode, copy_cap)
    per_copy = len(pattern.vertices) if mode is Mode.VERTEX else pattern.m
    if mode is Mode.EDGE and per_copy == 0:
        raise InvalidParameter("edge-mode packing needs a nontrivial pattern")
    seed = _greedy_disjoint(copies)
    best = [len(seed), [w for w, _ in seed]]

    def rec(available, acc, members):
        counter.tick()
        if acc > best[0]:
            best[0], best[1] = acc, list(members)
        if not available:
            return
        counts = {}
        for _, elems in available:
            for e in elems:
                counts[e] = counts.get(e, 0) + 1
        room = len(counts) // per_copy if per_copy else len(available)
        if acc + min(room, len(available)) <= best[0]:
            return
        e = min(sorted(counts), key=lambda x: counts[x])
        for w, elems in available:
            if e not in elems:
                continue
            rest = [c for c in available if not (c[1] & elems)]
            rec(rest, acc + 1, members + [w])
        rec([c for c in available if e not in c[1]], acc, members)

    rec(copies, 0, [])
    return ExactResult(
        best[0], PackingCertificate(mode, tuple(best[1])), counter.nodes
    )


def exact_cover_subgraph(g, pattern, mode, budget=None, copy_cap=COPY_CAP):
    """Minimum A_x hitting set destroying all copies of a fixed pattern."""
    counter = _Counter(budget or default_budget())
    copies = _copies_with_elements(g, pattern, mode, copy_cap)
    # dedup, then drop supersets: hitting the subset hits them for free
    distinct = sorted(set(elems for _, elems in copies), key=sorted)
    elem_sets = [
        s
        for s in distinct
        if not any(t < s for t in distinct)
    ]

    def disjoint_lower_bound(sets):
        used = set()
        count = 0
        for s in sets:
            if not (s & used):
                count += 1
                used |= s
        return count

    def attempt(sets, size_left, hit):
        counter.tick()
        if not sets:
            return hit
        if disjoint_lower_bound(sets) > size_left:
            return None
        target = min(sets, key=lambda s: (len(s), sorted(s)))
        for x in sorted(target):
            rest = [s for s in sets if x not in s]
            got = attempt(rest, size_left - 1, hit | {x})
            if got is not None:
                return got
        return None

    start = disjoint_lower_bound(elem_sets)
    for size in range(start, len(g.elements(mode)) + 1):
        got = attempt(elem_sets, size, frozenset())
        if got is not None:
            return ExactResult(
                len(got), CoverCertificate(mode, frozenset(got)), counter.nodes
            )
    raise AssertionError("unreachable: hitting every copy eventually succeeds")


# -- greedy subgraph duality ---------------------------------------------------


def greedy_subgraph_ep(g, pattern, mode):
    """Maximal greedy packing of pattern copies plus the induced cover.

    The cover is the union of the members' elements; maximality makes it a
    valid cover of size exactly |packing| * |A_x(pattern)|.
    """
    if mode is Mode.EDGE and pattern.m == 0:
        raise InvalidParameter("edge mode needs a nontrivial pattern")
    from .iso import find_copy

    members = []
    residue = g
    while True:
        got = find_copy(residue, pattern)
        if got is None:
            break
        w = PatternWitness(got[0], got[1])
        members.append(w)
        residue = residue.delete(w.elements(mode), mode)
    cover_elems = frozenset().union(*(w.elements(mode) for w in members)) if members else frozenset()
    return (
        PackingCertificate(mode, tuple(members)),
        CoverCertificate(mode, cover_elems),
    )
