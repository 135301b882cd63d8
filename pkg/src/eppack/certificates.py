"""Packing/cover certificates, pattern detectors, and independent verifiers.

A certificate never trusts the algorithm that produced it: verify_packing
and verify_cover recheck everything against the host graph and a detector,
and report structured diagnostics instead of prose.
"""

from dataclasses import dataclass, field

from .errors import BudgetExceeded, InvalidParameter
from .graph import Mode, MultiGraph
from .iso import connected_subsets, enumerate_copies, enumerate_cycles, find_copy


@dataclass(frozen=True)
class PatternWitness:
    """Vertex and edge sets of a host subgraph isomorphic to a family member."""

    vertices: frozenset
    edges: frozenset

    def subgraph(self, host):
        es = {}
        for eid in self.edges:
            u, v = host.endpoints(eid)
            es[eid] = (u, v)
        return MultiGraph(self.vertices, es)

    def elements(self, mode):
        return self.vertices if mode is Mode.VERTEX else self.edges

    @classmethod
    def from_cycle(cls, cycle):
        return cls(cycle.vertex_set, cycle.edge_set)


@dataclass(frozen=True)
class PackingCertificate:
    mode: Mode
    members: tuple

    def __len__(self):
        return len(self.members)

    def to_dict(self, bound_claimed=None, hypotheses_held=None):
        d = {
            "mode": self.mode.value,
            "kind": "packing",
            "members": [
                [sorted(w.vertices), sorted(w.edges)] for w in self.members
            ],
        }
        if bound_claimed is not None:
            d["bound_claimed"] = bound_claimed
        if hypotheses_held is not None:
            d["hypotheses_held"] = hypotheses_held
        return d

    @classmethod
    def from_dict(cls, d):
        members = tuple(
            PatternWitness(frozenset(vs), frozenset(es)) for vs, es in d["members"]
        )
        return cls(Mode.parse(d["mode"]), members)


@dataclass(frozen=True)
class CoverCertificate:
    mode: Mode
    elements: frozenset

    def __len__(self):
        return len(self.elements)

    def to_dict(self, bound_claimed=None, hypotheses_held=None):
        d = {
            "mode": self.mode.value,
            "kind": "cover",
            "elements": sorted(self.elements),
        }
        if bound_claimed is not None:
            d["bound_claimed"] = bound_claimed
        if hypotheses_held is not None:
            d["hypotheses_held"] = hypotheses_held
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(Mode.parse(d["mode"]), frozenset(d["elements"]))


def certificate_from_dict(d):
    if d["kind"] == "packing":
        return PackingCertificate.from_dict(d)
    if d["kind"] == "cover":
        return CoverCertificate.from_dict(d)
    raise InvalidParameter(f"unknown certificate kind {d['kind']!r}")


@dataclass(frozen=True)
class QualityReport:
    bound_claimed: int
    hypotheses_held: bool
    events: tuple = ()


@dataclass(frozen=True)
class EPOutcome:
    """Either a packing of the requested size or a cover; never both."""

    report: QualityReport
    packing: PackingCertificate = None
    cover: CoverCertificate = None

    def __post_init__(self):
        if (self.packing is None) == (self.cover is None):
            raise InvalidParameter("outcome must carry exactly one certificate")

    @property
    def certificate(self):
        return self.packing if self.packing is not None else self.cover


@dataclass
class Diagnostics:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


# -- detectors ----------------------------------------------------------------


class PatternDetector:
    """Predicate/witness finder for a guest family.

    find(g) returns a PatternWitness or None; minimal(g) additionally
    shrinks the witness until no proper subgraph is still a witness.
    """

    def __init__(
        self,
        name,
        find,
        connected_patterns,
        delta_tilde_bound=None,
        enumerate_witnesses=None,
        exact_vpack=None,
    ):
        self.name = name
        self._find = find
        self.connected_patterns = connected_patterns
        self.delta_tilde_bound = delta_tilde_bound
        self._enumerate = enumerate_witnesses
        self._exact_vpack = exact_vpack

    def find(self, g):
        return self._find(g)

    def minimal(self, g):
        """Witness shrunk by greedy edge removal with re-testing."""
        w = self.find(g)
        if w is None:
            return None
        while True:
            sub = w.subgraph(g)
            for eid in sorted(w.edges):
                cand = sub.delete_edges([eid])
                inner = self.find(cand)
                if inner is not None:
                    w = inner
                    break
            else:
                break
        # drop vertices not touched by the remaining edges, unless edgeless
        if w.edges:
            touched = set()
            for eid in w.edges:
                u, v = g.endpoints(eid)
                touched.update((u, v))
            w = PatternWitness(frozenset(touched), w.edges)
        return w

    def enumerate(self, g, cap=None):
        if self._enumerate is None:
            raise InvalidParameter(f"detector {self.name} cannot enumerate")
        return self._enumerate(g, cap)

    def exact_vpack(self, g):
        if self._exact_vpack is None:
            raise InvalidParameter(f"detector {self.name} has no exact packer")
        return self._exact_vpack(g)


def cycles_detector():
    """The family of graphs containing a cycle (theta_2 as a minor)."""

    def find(g):
        c = g.shortest_cycle()
        return None if c is None else PatternWitness.from_cycle(c)

    def enumerate_witnesses(g, cap=None):
        return [PatternWitness.from_cycle(c) for c in enumerate_cycles(g, cap)]

    def exact_vpack(g):
        from . import oracles

        return oracles.exact_vpack_cycles(g).value

    return PatternDetector(
        "cycles",
        find,
        connected_patterns=True,
        delta_tilde_bound=2,
        enumerate_witnesses=enumerate_witnesses,
        exact_vpack=exact_vpack,
    )


@dataclass(frozen=True)
class ThetaWitness(PatternWitness):
    """Two disjoint connected sets with >= t edges between them."""

    side_a: frozenset = frozenset()
    side_b: frozenset = frozenset()
    cross_edges: frozenset = frozenset()


def _spanning_edges(g, xs):
    return set(g.induced(xs).spanning_forest_edges())


def theta_detector(t, budget=200_000):
    """Detector for graphs with a theta_t minor (t parallel edges).

    Exact under the subset-enumeration budget; t = 2 reduces to cycles.
    """
    if t < 2:
        raise InvalidParameter("theta detector needs t >= 2")

    def find(g):
        if t == 2:
            c = g.shortest_cycle()
            if c is None:
                return None
            a = frozenset([c.vertices[0]])
            b = frozenset(c.vertices[1:])
            cross = frozenset(c.edges[:1] + c.edges[-1:])
            ew = _spanning_edges(g, b)
            return ThetaWitness(a | b, frozenset(cross) | frozenset(ew), a, b, cross)
        if g.n > 1 and budget is not None and 2 ** g.n > budget:
            raise BudgetExceeded(f"host too large for exhaustive theta_{t} search")
        for a in connected_subsets(g, cap=budget):
            rest = g.vertices - a
            if not rest:
                continue
            for comp in g.induced(rest).components():
                cross = []
                for v in sorted(a):
                    for u in sorted(comp):
                        cross.extend(g.edges_between(v, u))
                if len(cross) >= t:
                    cross = frozenset(sorted(cross)[:t])
                    edges = (
                        frozenset(_spanning_edges(g, a))
                        | frozenset(_spanning_edges(g, comp))
                        | cross
                    )
                    return ThetaWitness(a | comp, edges, a, comp, cross)
        return None

    return PatternDetector(
        f"theta_{t}",
        find,
        connected_patterns=True,
        delta_tilde_bound=t,
    )


def fixed_subgraph_detector(pattern, name):
    """Family of graphs containing a fixed small pattern as a subgraph."""

    def find(g):
        got = find_copy(g, pattern)
        if got is None:
            return None
        return PatternWitness(got[0], got[1])

    def enumerate_witnesses(g, cap=None):
        return [
            PatternWitness(vs, es) for vs, es in enumerate_copies(g, pattern, cap=cap)
        ]

    maxdeg = max((pattern.degree(v) for v in pattern.vertices), default=0)
    return PatternDetector(
        name,
        find,
        connected_patterns=pattern.is_connected(),
        delta_tilde_bound=maxdeg,
        enumerate_witnesses=enumerate_witnesses,
    )


def triangles_detector():
    return fixed_subgraph_detector(MultiGraph.complete(3), "triangles")


def builtin_detectors():
    """Name -> detector map for the shipped pattern families."""
    return {
        "cycles": cycles_detector(),
        "triangles": triangles_detector(),
        "theta_2": theta_detector(2),
        "theta_3": theta_detector(3),
        "theta_4": theta_detector(4),
        "k3": fixed_subgraph_detector(MultiGraph.complete(3), "k3"),
        "k4": fixed_subgraph_detector(MultiGraph.complete(4), "k4"),
        "k5": fixed_subgraph_detector(MultiGraph.complete(5), "k5"),
        "path3": fixed_subgraph_detector(MultiGraph.path_graph(3), "path3"),
        "k2": fixed_subgraph_detector(MultiGraph.complete(2), "k2"),
    }


# -- verification -------------------------------------------------------------


def verify_packing(g, det, packing):
    """Recheck a packing: membership, witness-hood, pairwise disjointness."""
    diags = Diagnostics(True)
    for i, w in enumerate(packing.members):
        stray_v = w.vertices - g.vertices
        if stray_v:
            diags.ok = False
            diags.violations.append(("member-vertices-outside-host", i, sorted(stray_v)))
            return diags
        stray_e = w.edges - set(g.edges)
        if stray_e:
            diags.ok = False
            diags.violations.append(("member-edges-outside-host", i, sorted(stray_e)))
            return diags
        for eid in w.edges:
            u, v = g.endpoints(eid)
            if u not in w.vertices or v not in w.vertices:
                diags.ok = False
                diags.violations.append(("member-edge-endpoint-missing", i, eid))
                return diags
        if det.find(w.subgraph(g)) is None:
            diags.ok = False
            diags.violations.append(("member-not-a-witness", i))
            return diags
    seen = {}
    for i, w in enumerate(packing.members):
        for x in sorted(w.elements(packing.mode)):
            if x in seen:
                diags.ok = False
                diags.violations.append(("members-not-disjoint", seen[x], i, x))
                return diags
            seen[x] = i
    return diags


def verify_cover(g, det, cover):
    """Recheck a cover: element validity and witness-freeness after deletion."""
    diags = Diagnostics(True)
    universe = g.elements(cover.mode)
    stray = cover.elements - universe
    if stray:
        diags.ok = False
        diags.violations.append(("cover-elements-outside-host", sorted(stray)))
        return diags
    residue = g.delete(cover.elements, cover.mode)
    w = det.find(residue)
    if w is not None:
        diags.ok = False
        diags.violations.append(("witness-survives-cover", sorted(w.vertices)))
    return diags
