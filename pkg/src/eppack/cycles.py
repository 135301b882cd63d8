"""Constructive packing-or-covering for cycles.

The driver alternates low-degree reduction with shortest-cycle harvesting.
Each harvested cycle is expanded back through the reduction trace, so all
certificates refer to the caller's graph.
"""

import math
from dataclasses import dataclass

from .certificates import (
    CoverCertificate,
    EPOutcome,
    PackingCertificate,
    PatternWitness,
    QualityReport,
)
from .errors import InvalidParameter
from .graph import Cycle, Mode


# -- trichotomy classifier -----------------------------------------------------


@dataclass(frozen=True)
class Forest:
    pass


@dataclass(frozen=True)
class ShortCycle:
    cycle: Cycle
    length: int


@dataclass(frozen=True)
class LowDegreeVertex:
    vertex: int
    degree: int


@dataclass(frozen=True)
class GirthCertificate:
    min_degree: int
    girth: int
    threshold: int


def short_cycle_threshold(q, c):
    return math.ceil(c * math.log2(q))


def classify(g, q, c):
    """Forest / short cycle / low-degree vertex / high-girth certificate.

    The cycle check runs before the degree check so that a parallel pair is
    consumed as a 2-cycle rather than suppressed away.
    """
    if q < 2 or c <= 0:
        raise InvalidParameter("classify needs q >= 2 and c > 0")
    cyc = g.shortest_cycle()
    if cyc is None:
        return Forest()
    threshold = short_cycle_threshold(q, c)
    if len(cyc) <= threshold:
        return ShortCycle(cyc, len(cyc))
    degs = g.degrees()
    low = [v for v in sorted(degs) if degs[v] <= 2]
    if low:
        return LowDegreeVertex(low[0], degs[low[0]])
    return GirthCertificate(min(degs.values()), len(cyc), threshold)


# -- low-degree reduction --------------------------------------------------------


@dataclass(frozen=True)
class DeleteVertex:
    vertex: int
    edges: tuple


@dataclass(frozen=True)
class Suppress:
    vertex: int
    edge_a: int  # {x, vertex}
    edge_b: int  # {vertex, z}
    replacement: int  # fresh edge {x, z}
    x: int
    z: int


@dataclass(frozen=True)
class ReductionTrace:
    events: tuple

    def expand_cycle(self, cycle):
        """Map a cycle of the reduced graph to a cycle of the original."""
        verts = list(cycle.vertices)
        eids = list(cycle.edges)
        for ev in reversed(self.events):
            if not isinstance(ev, Suppress) or ev.replacement not in eids:
                continue
            i = eids.index(ev.replacement)
            a, b = verts[i], verts[(i + 1) % len(verts)]
            # splice x - edge_a - vertex - edge_b - z in the right direction
            if (a, b) == (ev.x, ev.z):
                eids[i : i + 1] = [ev.edge_a, ev.edge_b]
            elif (a, b) == (ev.z, ev.x):
                eids[i : i + 1] = [ev.edge_b, ev.edge_a]
            else:
                raise AssertionError("trace replay mismatch")
            verts.insert(i + 1, ev.vertex)
        return Cycle(tuple(verts), tuple(eids))

    def replay(self, g):
        """Reproduce the reduced graph from the original."""
        h = g
        for ev in self.events:
            if isinstance(ev, DeleteVertex):
                h = h.delete_vertices({ev.vertex})
            else:
                edges = {
                    eid: uv
                    for eid, uv in h.edges.items()
                    if eid not in (ev.edge_a, ev.edge_b)
                }
                edges[ev.replacement] = (ev.x, ev.z)
                h = type(h)(h.vertices - {ev.vertex}, edges)
        return h


def reduce_low_degree(g):
    """Strip degree <= 1 vertices and suppress two-neighbor degree-2 vertices.

    Degree-2 vertices whose both edges go to the same neighbor carry a
    2-cycle and are left alone.  Returns the reduced graph and the trace.
    """
    events = []
    h = g
    next_eid = g.next_edge_id()
    while True:
        degs = h.degrees()
        target = None
        for v in sorted(degs):
            if degs[v] <= 1:
                target = ("drop", v)
                break
            if degs[v] == 2:
                e1, e2 = h.incident(v)
                nbrs = h.neighbors(v)
                if len(nbrs) == 2:
                    target = ("suppress", v, e1, e2)
                    break
        if target is None:
            return h, ReductionTrace(tuple(events))
        if target[0] == "drop":
            v = target[1]
            events.append(DeleteVertex(v, tuple(h.incident(v))))
            h = h.delete_vertices({v})
        else:
            _, v, e1, e2 = target
            a, b = h.endpoints(e1)
            x = a if b == v else b
            a, b = h.endpoints(e2)
            z = a if b == v else b
            rep = next_eid
            next_eid += 1
            events.append(Suppress(v, e1, e2, rep, x, z))
            edges = {
                eid: uv for eid, uv in h.edges.items() if eid not in (e1, e2)
            }
            edges[rep] = (x, z)
            h = type(h)(h.vertices - {v}, edges)


# -- the packing-or-covering driver ---------------------------------------------


def ep_cycles(g, k, mode, c=4.0):
    """Either k disjoint cycles or a cycle cover, with a quality report.

    When every harvested cycle stays within the short-cycle threshold the
    cover obeys |cover| <= ceil(c*log2(3k)) * k; otherwise a high-girth
    event is recorded and only the generic min-degree-3 bound is claimed.
    """
    if k < 1 or c <= 0:
        raise InvalidParameter("ep_cycles needs k >= 1 and c > 0")
    threshold = short_cycle_threshold(3 * k, c)
    harvested = []
    cover_elems = set()
    events = []
    residue = g
    while True:
        reduced, trace = reduce_low_degree(residue)
        cyc = reduced.shortest_cycle()
        if cyc is None:
            break
        if len(cyc) > threshold:
            events.append(
                (
                    "high-girth",
                    {"girth": len(cyc), "threshold": threshold},
                )
            )
        expanded = trace.expand_cycle(cyc)
        harvested.append(expanded)
        if len(harvested) >= k:
            held = all(len(x) <= threshold for x in harvested)
            packing = PackingCertificate(
                mode, tuple(PatternWitness.from_cycle(x) for x in harvested)
            )
            report = QualityReport(
                bound_claimed=k, hypotheses_held=held, events=tuple(events)
            )
            return EPOutcome(report, packing=packing)
        taken = expanded.vertex_set if mode is Mode.VERTEX else expanded.edge_set
        cover_elems |= taken
        residue = residue.delete(taken, mode)
    held = all(len(x) <= threshold for x in harvested)
    if held:
        bound = threshold * k
    else:
        bound = k * (2 * math.ceil(math.log2(max(2, g.n))) + 2)
    events.append(("harvested", len(harvested)))
    cover = CoverCertificate(mode, frozenset(cover_elems))
    report = QualityReport(
        bound_claimed=bound, hypotheses_held=held, events=tuple(events)
    )
    return EPOutcome(report, cover=cover)
