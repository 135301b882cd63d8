"""Backtracking subgraph search and cycle enumeration for small patterns."""

from .errors import BudgetExceeded
from .graph import Cycle, _canonical_cycle


def enumerate_copies(host, pattern, cap=None, first_only=False):
    """All subgraphs of host isomorphic to pattern, as (vertices, edges) pairs.

    Distinct parallel-edge choices yield distinct copies, which is what
    edge-disjoint packing needs.  Results are deduplicated and sorted, so
    enumeration order is deterministic.  Raises BudgetExceeded when more
    than cap copies are produced.
    """
    pverts = sorted(pattern.vertices, key=lambda v: (-pattern.degree(v), v))
    pedges = sorted(pattern.edges)
    hverts = sorted(host.vertices)
    copies = set()

    def vertex_maps(i, mapping, used):
        if i == len(pverts):
            yield dict(mapping)
            return
        pv = pverts[i]
        # pattern neighbors already mapped constrain the candidates
        anchors = [
            (u, len(pattern.edges_between(pv, u)))
            for u in pattern.neighbors(pv)
            if u in mapping
        ]
        if anchors:
            u0, _ = anchors[0]
            candidates = [w for w in host.neighbors(mapping[u0]) if w not in used]
        else:
            candidates = [w for w in hverts if w not in used]
        for w in candidates:
            ok = True
            for u, mult in anchors:
                if len(host.edges_between(w, mapping[u])) < mult:
                    ok = False
                    break
            if ok and host.degree(w) >= pattern.degree(pv):
                mapping[pv] = w
                used.add(w)
                yield from vertex_maps(i + 1, mapping, used)
                del mapping[pv]
                used.discard(w)

    def edge_choices(mapping):
        # one host edge id per pattern edge, parallel copies kept apart
        slots = []
        for eid in pedges:
            u, v = pattern.endpoints(eid)
            slots.append((eid, host.edges_between(mapping[u], mapping[v])))
        chosen = {}

        def rec(j):
            if j == len(slots):
                yield frozenset(chosen.values())
                return
            _, ids = slots[j]
            for hid in ids:
                if hid in chosen.values():
                    continue
                chosen[j] = hid
                yield from rec(j + 1)
                del chosen[j]

        yield from rec(0)

    for mapping in vertex_maps(0, {}, set()):
        vset = frozenset(mapping.values())
        for eset in edge_choices(mapping):
            copy = (vset, eset)
            if copy in copies:
                continue
            copies.add(copy)
            if first_only:
                return [copy]
            if cap is not None and len(copies) > cap:
                raise BudgetExceeded(
                    f"more than {cap} copies of pattern in host"
                )
    return sorted(copies, key=lambda c: (sorted(c[0]), sorted(c[1])))


def find_copy(host, pattern):
    """First copy of pattern in host, or None."""
    got = enumerate_copies(host, pattern, first_only=True)
    return got[0] if got else None


def enumerate_cycles(g, cap=None):
    """All cycles of g (2-cycles from parallel pairs included), canonical.

    Raises BudgetExceeded past cap.  Intended for desk-scale hosts.
    """
    out = []

    def push(cycle):
        out.append(cycle)
        if cap is not None and len(out) > cap:
            raise BudgetExceeded(f"more than {cap} cycles in host")

    verts = sorted(g.vertices)
    for u in verts:
        for v in g.neighbors(u):
            if v < u:
                continue
            ids = g.edges_between(u, v)
            for a in range(len(ids)):
                for b in range(a + 1, len(ids)):
                    push(Cycle((u, v), (ids[a], ids[b])))

    # simple cycles of length >= 3: root at the smallest vertex of the cycle
    for s in verts:
        path = [s]
        on_path = {s}
        path_edges = []

        def dfs(v):
            for u in g.neighbors(v):
                if u < s:
                    continue
                for eid in g.edges_between(v, u):
                    if path_edges and eid == path_edges[-1]:
                        continue
                    if u == s:
                        if len(path) >= 3 and path[1] < path[-1]:
                            push(
                                _canonical_cycle(
                                    list(path), path_edges + [eid]
                                )
                            )
                        continue
                    if u in on_path:
                        continue
                    path.append(u)
                    on_path.add(u)
                    path_edges.append(eid)
                    dfs(u)
                    path.pop()
                    on_path.discard(u)
                    path_edges.pop()

        dfs(s)
    return sorted(out, key=lambda c: (len(c), c.vertices, c.edges))


def connected_subsets(g, max_size=None, cap=None):
    """All connected vertex subsets, grown from their smallest member."""
    out = []
    verts = sorted(g.vertices)
    for root in verts:
        # standard set-growing enumeration; every subset generated once
        stack = [(frozenset([root]), frozenset(u for u in verts if u < root))]
        while stack:
            subset, forbidden = stack.pop()
            out.append(subset)
            if cap is not None and len(out) > cap:
                raise BudgetExceeded(f"more than {cap} connected subsets")
            if max_size is not None and len(subset) >= max_size:
                continue
            frontier = sorted(
                {
                    u
                    for v in subset
                    for u in g.neighbors(v)
                    if u not in subset and u not in forbidden
                }
            )
            banned = set(forbidden)
            for u in frontier:
                stack.append((subset | {u}, frozenset(banned)))
                banned.add(u)
    return out
