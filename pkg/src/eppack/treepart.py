"""Tree partitions, their width, and the inductive edge-cover procedure for
connected patterns on hosts of bounded tree-partition width."""

from dataclasses import dataclass

from .certificates import (
    CoverCertificate,
    Diagnostics,
    EPOutcome,
    PackingCertificate,
    QualityReport,
)
from .errors import InvalidParameter, InvalidPartition
from .graph import Mode, MultiGraph


@dataclass(frozen=True)
class TreePartition:
    tree: MultiGraph
    root: int
    bags: dict  # tree vertex -> frozenset of host vertices


def validate_tp(g, tp):
    """Partition property plus the within-bag-or-across-tree-edge condition."""
    diags = Diagnostics(True)
    if set(tp.bags) != set(tp.tree.vertices) or tp.root not in tp.bags:
        diags.ok = False
        diags.violations.append(("bags-vs-tree-mismatch",))
        return diags
    if not tp.tree.is_forest() or not tp.tree.is_connected():
        diags.ok = False
        diags.violations.append(("partition-tree-not-a-tree",))
        return diags
    seen = set()
    for t in sorted(tp.bags):
        overlap = tp.bags[t] & seen
        if overlap:
            diags.ok = False
            diags.violations.append(("bags-overlap", t, sorted(overlap)))
            return diags
        seen |= tp.bags[t]
    if seen != g.vertices:
        diags.ok = False
        diags.violations.append(
            ("bags-miss-vertices", sorted(g.vertices - seen))
        )
        return diags
    if tp.tree.n == 1:
        return diags
    home = {v: t for t, bag in tp.bags.items() for v in bag}
    tree_pairs = {tuple(sorted(uv)) for uv in tp.tree.edges.values()}
    for eid in sorted(g.edges):
        u, v = g.endpoints(eid)
        tu, tv = home[u], home[v]
        if tu != tv and tuple(sorted((tu, tv))) not in tree_pairs:
            diags.ok = False
            diags.violations.append(("edge-crosses-non-adjacent-bags", eid))
            return diags
    return diags


def tp_width(g, tp):
    """Max over bag sizes, bag-internal edge counts, and cross-edge counts."""
    home = {v: t for t, bag in tp.bags.items() for v in bag}
    internal = {t: 0 for t in tp.bags}
    cross = {}
    for eid, (u, v) in g.edges.items():
        tu, tv = home[u], home[v]
        if tu == tv:
            internal[tu] += 1
        else:
            key = tuple(sorted((tu, tv)))
            cross[key] = cross.get(key, 0) + 1
    vals = [len(b) for b in tp.bags.values()]
    vals += list(internal.values())
    vals += list(cross.values())
    return max(vals, default=0)


def delta_tilde_bound(relation, h):
    """Worst-case minimal-witness max degree for the three containments."""
    if h < 1:
        raise InvalidParameter("h must be at least 1")
    if relation in ("minor", "topological-minor"):
        return h
    if relation == "immersion":
        return 2 * h
    raise InvalidParameter(f"unknown relation {relation!r}")


def bfs_layer_tp(g):
    """Heuristic partition: BFS layers per component, chained into one tree."""
    if not g.vertices:
        tree = MultiGraph(range(1), {})
        return TreePartition(tree, 0, {0: frozenset()})
    bags = {}
    edges = []
    prev_last = None
    for comp in g.components():
        start = min(comp)
        layer = {start}
        seen = {start}
        first = None
        while layer:
            nid = len(bags)
            bags[nid] = frozenset(layer)
            if first is None:
                first = nid
            else:
                edges.append((nid - 1, nid))
            nxt = set()
            for v in layer:
                for u in g.neighbors(v):
                    if u not in seen:
                        seen.add(u)
                        nxt.add(u)
            layer = nxt
        if prev_last is not None:
            edges.append((prev_last, first))
        prev_last = len(bags) - 1
    tree = MultiGraph.from_edges(range(len(bags)), edges)
    return TreePartition(tree, 0, bags)


# -- the inductive edge cover ----------------------------------------------------


def _rooted(tp):
    parent = {tp.root: None}
    order = [tp.root]
    stack = [tp.root]
    while stack:
        t = stack.pop()
        for u in tp.tree.neighbors(t):
            if u not in parent:
                parent[u] = t
                order.append(u)
                stack.append(u)
    children = {t: [] for t in parent}
    for t, p in parent.items():
        if p is not None:
            children[p].append(t)
    post = []

    def walk(t):
        for c in sorted(children[t]):
            walk(c)
        post.append(t)

    walk(tp.root)
    return children, post


def inductive_edge_cover(g, tp, det, k):
    """k edge-disjoint witnesses, or an edge cover of size <= k*r*(d*r + 1).

    Each round finds the deepest partition node whose subtree holds a
    witness, shrinks it to a minimal one, and cuts the bag-internal edges
    plus the bundles toward the children that minimal witness touches.
    """
    if k < 1:
        raise InvalidParameter("k must be at least 1")
    check = validate_tp(g, tp)
    if not check:
        raise InvalidPartition(f"invalid partition: {check.violations}")
    if det.delta_tilde_bound is None or not det.connected_patterns:
        raise InvalidParameter("detector must be connected with a degree bound")
    r = tp_width(g, tp)
    d = det.delta_tilde_bound

    children, post = _rooted(tp)
    subtree_vs = {}
    for t in post:
        acc = set(tp.bags[t])
        for c in children[t]:
            acc |= subtree_vs[c]
        subtree_vs[t] = frozenset(acc)

    members = []
    cut_all = set()
    residue = g
    while len(members) < k:
        found = None
        for t in post:
            sub = residue.induced(subtree_vs[t] & residue.vertices)
            w = det.minimal(sub)
            if w is not None:
                found = (t, w)
                break
        if found is None:
            bound = k * r * (d * r + 1)
            assert len(cut_all) <= bound
            cover = CoverCertificate(Mode.EDGE, frozenset(cut_all))
            report = QualityReport(bound_claimed=bound, hypotheses_held=True)
            return EPOutcome(report, cover=cover)
        t, w = found
        bag = tp.bags[t]
        cut = {
            eid
            for eid, (u, v) in residue.edges.items()
            if u in bag and v in bag
        }
        touched = [c for c in children[t] if subtree_vs[c] & w.vertices]
        assert len(touched) <= r * d, "witness meets too many child subtrees"
        for c in touched:
            cbag = tp.bags[c]
            for eid, (u, v) in residue.edges.items():
                if (u in bag and v in cbag) or (v in bag and u in cbag):
                    cut.add(eid)
        assert len(cut) <= r + d * r * r, "per-round cut exceeds its bound"
        members.append(w)
        cut_all |= cut
        residue = residue.delete_edges(cut)

    used = set()
    for w in members:
        assert not (w.edges & used), "collected witnesses share an edge"
        used |= w.edges
    packing = PackingCertificate(Mode.EDGE, tuple(members))
    report = QualityReport(bound_claimed=k, hypotheses_held=True)
    return EPOutcome(report, packing=packing)
