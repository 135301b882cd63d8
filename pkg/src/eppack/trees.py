"""Exact min-max machinery for subtrees of a tree.

gallai realizes the packing/covering equality for subtree families via the
deepest-topmost-vertex greedy; rs_selection is a budgeted witness search
for the multi-family disjoint selection statement.
"""

from dataclasses import dataclass

from .certificates import (
    CoverCertificate,
    PackingCertificate,
    PatternWitness,
)
from .errors import BudgetExceeded, InvalidFamily, InvalidParameter
from .graph import Mode


@dataclass(frozen=True)
class SubtreeFamily:
    """A host tree plus vertex subsets each inducing a connected subtree."""

    tree: object  # MultiGraph, acyclic and connected
    members: tuple  # of frozensets

    def validate(self):
        if not self.tree.is_forest() or not self.tree.is_connected():
            raise InvalidFamily("host is not a tree")
        for i, mem in enumerate(self.members):
            if not mem:
                raise InvalidFamily(f"member {i} is empty")
            if not mem <= self.tree.vertices:
                raise InvalidFamily(f"member {i} leaves the host")
            sub = self.tree.induced(mem)
            if not sub.is_connected():
                raise InvalidFamily(f"member {i} does not induce a subtree")


def _depths(tree, root):
    depth = {root: 0}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for u in tree.neighbors(v):
            if u not in depth:
                depth[u] = depth[v] + 1
                order.append(u)
                stack.append(u)
    return depth


def gallai(fam):
    """Equal-size subtree packing and vertex cover (exact min-max).

    Root at the smallest vertex; repeatedly pick the remaining member whose
    topmost vertex is deepest, put that vertex in the cover, and discard
    every member through it.
    """
    fam.validate()
    tree = fam.tree
    if not tree.vertices:
        raise InvalidFamily("empty host tree")
    root = min(tree.vertices)
    depth = _depths(tree, root)

    tops = []
    for i, mem in enumerate(fam.members):
        top = min(mem, key=lambda v: (depth[v], v))
        tops.append((depth[top], top, i))

    alive = set(range(len(fam.members)))
    chosen = []
    cover = []
    while alive:
        # deepest topmost vertex; ties by vertex id then member index
        pick = max(
            (tops[i] for i in sorted(alive)),
            key=lambda t: (t[0], -t[1], -t[2]),
        )
        _, top, idx = pick
        chosen.append(idx)
        cover.append(top)
        alive = {i for i in alive if top not in fam.members[i]}

    members = tuple(
        PatternWitness(
            fam.members[i],
            frozenset(tree.induced(fam.members[i]).spanning_forest_edges()),
        )
        for i in chosen
    )
    return (
        PackingCertificate(Mode.VERTEX, members),
        CoverCertificate(Mode.VERTEX, frozenset(cover)),
    )


def family_detector(fam):
    """Detector whose witnesses are the family members still intact."""
    from .certificates import PatternDetector

    def find(g):
        for mem in fam.members:
            if mem <= g.vertices:
                sub = g.induced(mem)
                if sub.is_connected():
                    return PatternWitness(
                        mem, frozenset(sub.spanning_forest_edges())
                    )
        return None

    return PatternDetector("subtree-family", find, connected_patterns=True)


def rs_selection(tree, family_members, k, budget=1_000_000):
    """k members per family, globally vertex-disjoint, or None.

    Backtracking over families in order; guaranteed to succeed whenever each
    family holds k*q pairwise disjoint members, which callers can check via
    gallai beforehand.
    """
    if k < 1 or not family_members:
        raise InvalidParameter("rs_selection needs k >= 1 and q >= 1")
    fams = [sorted(map(frozenset, members), key=sorted) for members in family_members]
    q = len(fams)
    slots = [(i, j) for i in range(q) for j in range(k)]
    picked = [[] for _ in range(q)]
    nodes = [0]

    def rec(s, used):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"selection search exceeded {budget} nodes")
        if s == len(slots):
            return True
        i, j = slots[s]
        start = fams[i].index(picked[i][-1]) + 1 if j > 0 else 0
        for idx in range(start, len(fams[i])):
            mem = fams[i][idx]
            if mem & used:
                continue
            picked[i].append(mem)
            if rec(s + 1, used | mem):
                return True
            picked[i].pop()
        return False

    if rec(0, frozenset()):
        return [list(p) for p in picked]
    return None
