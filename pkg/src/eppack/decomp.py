"""Tree decompositions, their nice form, balanced separations, and the
recursive cover constructions built on them."""

from dataclasses import dataclass, field

from .certificates import (
    CoverCertificate,
    Diagnostics,
    EPOutcome,
    PackingCertificate,
    PatternWitness,
    QualityReport,
)
from .errors import (
    CeilingViolated,
    InvalidDecomposition,
    OracleFailure,
    ParameterEstimateUnavailable,
)
from .graph import Mode, MultiGraph
from .trees import SubtreeFamily, gallai, rs_selection


@dataclass(frozen=True)
class TreeDecomposition:
    tree: MultiGraph
    bags: dict  # tree vertex -> frozenset of host vertices

    def width(self):
        return max((len(b) for b in self.bags.values()), default=0) - 1


def validate_td(g, td):
    """Check the three decomposition conditions, naming the first failure."""
    diags = Diagnostics(True)
    if set(td.bags) != set(td.tree.vertices):
        diags.ok = False
        diags.violations.append(("bags-vs-tree-mismatch",))
        return diags
    if td.tree.vertices and (not td.tree.is_forest() or not td.tree.is_connected()):
        diags.ok = False
        diags.violations.append(("decomposition-tree-not-a-tree",))
        return diags
    covered = set().union(*td.bags.values()) if td.bags else set()
    missing = g.vertices - covered
    if missing:
        diags.ok = False
        diags.violations.append(("vertex-in-no-bag", sorted(missing)))
        return diags
    for eid in sorted(g.edges):
        u, v = g.endpoints(eid)
        if not any(u in b and v in b for b in td.bags.values()):
            diags.ok = False
            diags.violations.append(("edge-in-no-bag", eid, (u, v)))
            return diags
    for v in sorted(g.vertices):
        nodes = {t for t, b in td.bags.items() if v in b}
        if nodes and not td.tree.induced(nodes).is_connected():
            diags.ok = False
            diags.violations.append(("bags-of-vertex-disconnected", v))
            return diags
    return diags


def width(td):
    return td.width()


# -- construction from elimination orders --------------------------------------


def _td_from_elimination(g, order):
    """Standard clique-at-elimination construction; width follows the order."""
    if not order:
        tree = MultiGraph(range(1), {})
        return TreeDecomposition(tree, {0: frozenset()})
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    bags = {}
    for v in order:
        later = {u for u in adj[v] if pos[u] > pos[v]}
        bags[pos[v]] = frozenset({v} | later)
        for a in later:
            adj[a].discard(v)
            adj[a].update(later - {a})
    edges = []
    for v in order:
        later = sorted(bags[pos[v]] - {v}, key=lambda u: pos[u])
        if later:
            edges.append((pos[v], pos[later[0]]))
        elif pos[v] + 1 < len(order):
            # end of a component: its bag is a singleton, so chaining it to
            # the next node cannot break the connectivity condition
            edges.append((pos[v], pos[v] + 1))
    tree = MultiGraph.from_edges(range(len(order)), edges)
    return TreeDecomposition(tree, bags)


def min_fill_order(g):
    """Greedy elimination order minimizing fill-in at each step."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order = []
    remaining = set(g.vertices)
    while remaining:
        best = None
        for v in sorted(remaining):
            nbrs = adj[v] & remaining
            fill = sum(
                1
                for a in nbrs
                for b in nbrs
                if a < b and b not in adj[a]
            )
            key = (fill, len(nbrs), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        nbrs = adj[v] & remaining
        for a in nbrs:
            adj[a].update(nbrs - {a})
        order.append(v)
        remaining.discard(v)
    return order


def min_fill_td(g):
    return _td_from_elimination(g, min_fill_order(g))


def exact_elimination_td(g, max_n=15):
    """Optimal-width decomposition by subset dynamic programming.

    Only intended for very small hosts; the heuristics cover the rest.
    """
    n = g.n
    if n > max_n:
        raise InvalidDecomposition(f"exact search limited to {max_n} vertices")
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    nbr_mask = [0] * n
    for v in verts:
        for u in g.neighbors(v):
            nbr_mask[index[v]] |= 1 << index[u]

    def q(i, emask):
        """Vertices outside emask reachable from i through eliminated ones."""
        seen = 1 << i
        stack = [i]
        out = 0
        while stack:
            x = stack.pop()
            cand = nbr_mask[x] & ~seen
            seen |= cand
            rest = cand
            while rest:
                b = rest & -rest
                rest ^= b
                j = b.bit_length() - 1
                if (emask >> j) & 1:
                    stack.append(j)
                else:
                    out |= b
        return bin(out).count("1")

    full = (1 << n) - 1
    cost = {0: -1}
    choice = {}
    masks_by_size = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        masks_by_size[bin(mask).count("1")].append(mask)
    for size in range(1, n + 1):
        for mask in masks_by_size[size]:
            best = None
            rest = mask
            while rest:
                b = rest & -rest
                rest ^= b
                i = b.bit_length() - 1
                prev = mask ^ b
                w = max(cost[prev], q(i, prev))
                if best is None or w < best[0]:
                    best = (w, i)
            cost[mask] = best[0]
            choice[mask] = best[1]
    order_idx = []
    mask = full
    while mask:
        i = choice[mask]
        order_idx.append(i)
        mask ^= 1 << i
    order_idx.reverse()
    return _td_from_elimination(g, [verts[i] for i in order_idx])


# -- nice form -------------------------------------------------------------------


@dataclass(frozen=True)
class NiceNode:
    kind: str  # base | introduce | forget | join
    bag: frozenset
    children: tuple
    vertex: int = None  # the introduced/forgotten vertex


@dataclass
class NiceTreeDecomposition:
    nodes: dict  # id -> NiceNode
    root: int

    def postorder(self):
        out = []

        def walk(t):
            for c in self.nodes[t].children:
                walk(c)
            out.append(t)

        walk(self.root)
        return out

    def subtree_vertices(self):
        """id -> union of bags in the node's subtree."""
        out = {}
        for t in self.postorder():
            node = self.nodes[t]
            acc = set(node.bag)
            for c in node.children:
                acc |= out[c]
            out[t] = frozenset(acc)
        return out

    def width(self):
        return max((len(n.bag) for n in self.nodes.values()), default=0) - 1

    def audit(self):
        """Hard checks of the nice-form invariants."""
        assert self.nodes[self.root].bag == frozenset()
        for t, node in self.nodes.items():
            deg = len(node.children) + (0 if t == self.root else 1)
            assert deg <= 3, "degree exceeds 3"
            if node.kind == "base":
                assert node.bag == frozenset() and not node.children
            elif node.kind == "introduce":
                (c,) = node.children
                assert node.bag == self.nodes[c].bag | {node.vertex}
                assert node.vertex not in self.nodes[c].bag
            elif node.kind == "forget":
                (c,) = node.children
                assert node.bag == self.nodes[c].bag - {node.vertex}
                assert node.vertex in self.nodes[c].bag
            elif node.kind == "join":
                a, b = node.children
                assert self.nodes[a].bag == node.bag == self.nodes[b].bag
            else:
                raise AssertionError(f"unknown kind {node.kind}")

    def to_td(self):
        edges = []
        for t, node in self.nodes.items():
            for c in node.children:
                edges.append((t, c))
        tree = MultiGraph.from_edges(self.nodes.keys(), edges)
        return TreeDecomposition(tree, {t: n.bag for t, n in self.nodes.items()})


def to_nice(g, td):
    """Rooted nice form with the same width."""
    check = validate_td(g, td)
    if not check:
        raise InvalidDecomposition(f"invalid decomposition: {check.violations}")
    nodes = {}
    counter = [0]

    def new(kind, bag, children, vertex=None):
        nid = counter[0]
        counter[0] += 1
        nodes[nid] = NiceNode(kind, frozenset(bag), tuple(children), vertex)
        return nid

    def chain_up_from_base(bag):
        nid = new("base", frozenset(), ())
        cur = set()
        for v in sorted(bag):
            cur.add(v)
            nid = new("introduce", set(cur), (nid,), v)
        return nid

    def adapt(nid, bag_from, bag_to):
        cur = set(bag_from)
        for v in sorted(bag_from - bag_to):
            cur.discard(v)
            nid = new("forget", set(cur), (nid,), v)
        for v in sorted(bag_to - bag_from):
            cur.add(v)
            nid = new("introduce", set(cur), (nid,), v)
        return nid

    if not td.tree.vertices:
        root = new("base", frozenset(), ())
        return NiceTreeDecomposition(nodes, root)

    troot = min(td.tree.vertices)
    parent = {troot: None}
    order = [troot]
    stack = [troot]
    while stack:
        t = stack.pop()
        for u in td.tree.neighbors(t):
            if u not in parent:
                parent[u] = t
                order.append(u)
                stack.append(u)
    children = {t: [] for t in parent}
    for t, p in parent.items():
        if p is not None:
            children[p].append(t)

    def build(t):
        bag = td.bags[t]
        kids = sorted(children[t])
        if not kids:
            return chain_up_from_base(bag)
        tops = [adapt(build(c), td.bags[c], bag) for c in kids]
        while len(tops) > 1:
            merged = new("join", bag, (tops[0], tops[1]))
            tops = [merged] + tops[2:]
        return tops[0]

    top = build(troot)
    root = adapt(top, td.bags[troot], frozenset())
    if nodes[root].bag != frozenset():
        raise AssertionError("root bag not empty")
    ntd = NiceTreeDecomposition(nodes, root)
    ntd.audit()
    return ntd


# -- balanced separations ---------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    a: frozenset
    b: frozenset

    @property
    def order(self):
        return len(self.a & self.b)

    def validate(self, g):
        if self.a | self.b != g.vertices:
            return False
        left = self.a - self.b
        right = self.b - self.a
        for u, v in g.edges.values():
            if (u in left and v in right) or (v in left and u in right):
                return False
        return True


def balanced_separation(g, ntd, pack_oracle):
    """Separation of order <= width+1 with both strict sides' packing <= 2k/3."""
    try:
        k = pack_oracle(g)
    except Exception as exc:  # oracle contract: total on induced subgraphs
        raise OracleFailure(str(exc)) from exc
    if k == 0:
        return Separation(frozenset(g.vertices), frozenset())
    sub_vs = ntd.subtree_vertices()
    cache = {}

    def pack_of(vs):
        if vs not in cache:
            cache[vs] = pack_oracle(g.induced(vs))
        return cache[vs]

    def minus(t):
        return frozenset(sub_vs[t] - ntd.nodes[t].bag)

    chosen = None
    for t in ntd.postorder():
        if 3 * pack_of(minus(t)) > 2 * k:
            chosen = t
            break
    if chosen is None:
        raise AssertionError("root must satisfy the packing threshold")
    node = ntd.nodes[chosen]
    if node.kind == "forget":
        (u,) = node.children
    elif node.kind == "join":
        u = max(node.children, key=lambda c: (pack_of(minus(c)), -c))
    else:
        raise AssertionError(f"threshold node of kind {node.kind}")
    a = frozenset(sub_vs[u])
    b = frozenset(g.vertices - minus(u))
    sep = Separation(a, b)
    if not sep.validate(g):
        raise AssertionError("separation invariant violated")
    return sep


# -- ceilings and the recursive cover ---------------------------------------------


@dataclass(frozen=True)
class Ceiling:
    """Caller-supplied monotone superadditive bound on the parameter."""

    f: object  # callable int -> int
    note: str = ""

    def check(self, samples=((0, 1), (1, 1), (1, 2), (2, 3), (3, 5))):
        for x, y in samples:
            if self.f(x) + self.f(y) > self.f(x + y):
                return False
            if self.f(x) > self.f(x + 1):
                return False
        return True


def _restrict_td(td, keep):
    return TreeDecomposition(
        td.tree, {t: b & keep for t, b in td.bags.items()}
    )


def cover_connected_bounded_tw(g, det, ceiling, td=None, pack_oracle=None):
    """Recursive cover for connected patterns via balanced separations."""
    if pack_oracle is None:
        pack_oracle = det.exact_vpack
    if td is None:
        td = min_fill_td(g)

    def rec(h, td_h):
        if det.find(h) is None:
            return set()
        k = pack_oracle(h)
        w = td_h.width()
        if w > ceiling.f(k):
            raise CeilingViolated(
                f"observed width {w} exceeds ceiling f({k})={ceiling.f(k)}"
            )
        ntd = to_nice(h, td_h)
        sep = balanced_separation(h, ntd, pack_oracle)
        cov = set(sep.a & sep.b)
        for side in (sep.a - sep.b, sep.b - sep.a):
            cov |= rec(h.induced(side), _restrict_td(td_h, side))
        return cov

    return CoverCertificate(Mode.VERTEX, frozenset(rec(g, td)))


# -- disconnected patterns ----------------------------------------------------------


def disconnected_pattern_ep(g, td, component_detectors, k, cap=100_000):
    """Pack k disjoint unions (one witness per component family) or cover.

    Covers come from the deficient family: a tree cover of its decomposition
    traces, expanded to the union of the corresponding bags.
    """
    check = validate_td(g, td)
    if not check:
        raise InvalidDecomposition(f"invalid decomposition: {check.violations}")
    q = len(component_detectors)
    need = k * q
    max_bag = max((len(b) for b in td.bags.values()), default=0)

    witness_lists = []
    trace_lists = []
    for det in component_detectors:
        ws = det.enumerate(g, cap)
        traces = []
        for w in ws:
            tr = frozenset(t for t, b in td.bags.items() if b & w.vertices)
            if det.connected_patterns:
                assert td.tree.induced(tr).is_connected(), "trace not connected"
            traces.append(tr)
        witness_lists.append(ws)
        trace_lists.append(traces)

    packs = []
    for traces in trace_lists:
        if not traces:
            packs.append((0, None))
            continue
        fam = SubtreeFamily(td.tree, tuple(traces))
        packing, cover = gallai(fam)
        packs.append((len(packing), cover))

    deficient = next((i for i, (p, _) in enumerate(packs) if p < need), None)
    if deficient is None:
        selection = rs_selection(td.tree, trace_lists, k)
        if selection is None:
            raise AssertionError("selection must exist when every family is rich")
        members = []
        for j in range(k):
            vs, es = set(), set()
            for i in range(q):
                # map the selected trace back to one of its witnesses
                tr = selection[i][j]
                idx = trace_lists[i].index(tr)
                w = witness_lists[i][idx]
                vs |= w.vertices
                es |= w.edges
            members.append(PatternWitness(frozenset(vs), frozenset(es)))
        packing = PackingCertificate(Mode.VERTEX, tuple(members))
        report = QualityReport(bound_claimed=k, hypotheses_held=True)
        return EPOutcome(report, packing=packing)

    _, tree_cover = packs[deficient]
    if tree_cover is None:
        elements = frozenset()
    else:
        elements = frozenset().union(
            *(td.bags[t] for t in tree_cover.elements)
        ) if tree_cover.elements else frozenset()
    cover = CoverCertificate(Mode.VERTEX, elements)
    report = QualityReport(
        bound_claimed=max_bag * (need - 1),
        hypotheses_held=True,
        events=(("deficient-family", deficient),),
    )
    residue = g.delete_vertices(cover.elements)
    assert component_detectors[deficient].find(residue) is None
    return EPOutcome(report, cover=cover)


# -- composition combinator -----------------------------------------------------------


def compose_ep(ceiling, solver_family, pack_estimator):
    """General solver from a ceiling and per-parameter-bound solvers."""

    def solve(g):
        if pack_estimator is None:
            raise ParameterEstimateUnavailable("no packing estimator supplied")
        k = pack_estimator(g)
        solver = solver_family(ceiling.f(k))
        return solver(g)

    return solve
