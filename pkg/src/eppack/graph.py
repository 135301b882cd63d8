"""Loopless undirected multigraphs and their local operations.

Vertices and edges carry dense integer identifiers that stay stable across
operations: derived graphs keep the surviving identifiers and allocate
fresh ones (max + 1 onward) for anything they create, so certificates
written against one graph remain meaningful after further surgery.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import (
    InvalidParameter,
    MixedElementKinds,
    NoSharedEndpoint,
    UnknownIdentifier,
    WouldCreateLoop,
)


class Mode(Enum):
    """Selects the vertex or edge variant of packings and covers."""

    VERTEX = "v"
    EDGE = "e"

    @classmethod
    def parse(cls, text):
        for m in cls:
            if text in (m.value, m.name.lower()):
                return m
        raise InvalidParameter(f"unknown mode {text!r}")


@dataclass(frozen=True)
class Cycle:
    """A cycle as an alternating vertex/edge sequence.

    vertices[i] and vertices[(i+1) % L] are joined by edges[i]; parallel
    edges are therefore distinguishable.  Length is the edge count.
    """

    vertices: tuple
    edges: tuple

    def __len__(self):
        return len(self.edges)

    @property
    def vertex_set(self):
        return frozenset(self.vertices)

    @property
    def edge_set(self):
        return frozenset(self.edges)


def _canonical_cycle(vertices, edges):
    """Rotate/reflect so the vertex sequence is lexicographically smallest."""
    n = len(vertices)
    best = None
    for start in range(n):
        for step in (1, -1):
            vs = tuple(vertices[(start + step * i) % n] for i in range(n))
            if step == 1:
                es = tuple(edges[(start + i) % n] for i in range(n))
            else:
                es = tuple(edges[(start - 1 - i) % n] for i in range(n))
            if best is None or (vs, es) < best:
                best = (vs, es)
    return Cycle(best[0], best[1])


class MultiGraph:
    """Immutable loopless multigraph; operations return new graphs."""

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices, edges):
        vs = frozenset(vertices)
        es = dict(edges)
        for eid, (u, v) in es.items():
            if u == v:
                raise WouldCreateLoop(f"edge {eid} joins {u} to itself")
            if u not in vs or v not in vs:
                raise UnknownIdentifier(f"edge {eid}={{{u},{v}}} has missing endpoint")
            if u > v:
                es[eid] = (v, u)
        self._vertices = vs
        self._edges = es
        adj = {v: {} for v in vs}
        for eid in sorted(es):
            u, v = es[eid]
            adj[u].setdefault(v, []).append(eid)
            adj[v].setdefault(u, []).append(eid)
        self._adj = adj

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_edges(cls, vertices, pairs):
        """Vertices plus (u, v) pairs; edge ids are 0..m-1 in input order."""
        return cls(vertices, {i: (u, v) for i, (u, v) in enumerate(pairs)})

    @classmethod
    def complete(cls, n):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return cls.from_edges(range(n), pairs)

    @classmethod
    def cycle_graph(cls, n):
        return cls.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path_graph(cls, n):
        return cls.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def theta(cls, t):
        """Two vertices joined by t parallel edges."""
        return cls.from_edges(range(2), [(0, 1)] * t)

    @classmethod
    def complete_bipartite(cls, a, b):
        pairs = [(i, a + j) for i in range(a) for j in range(b)]
        return cls.from_edges(range(a + b), pairs)

    @classmethod
    def petersen(cls):
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(range(10), outer + spokes + inner)

    # -- basic accessors ------------------------------------------------------

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        return self._edges

    @property
    def n(self):
        return len(self._vertices)

    @property
    def m(self):
        return len(self._edges)

    def endpoints(self, eid):
        try:
            return self._edges[eid]
        except KeyError:
            raise UnknownIdentifier(f"unknown edge {eid}") from None

    def neighbors(self, v):
        try:
            return sorted(self._adj[v])
        except KeyError:
            raise UnknownIdentifier(f"unknown vertex {v}") from None

    def edges_between(self, u, v):
        return sorted(self._adj.get(u, {}).get(v, ()))

    def incident(self, v):
        out = []
        for ids in self._adj[v].values():
            out.extend(ids)
        return sorted(out)

    def degree(self, v):
        return sum(len(ids) for ids in self._adj[v].values())

    def degrees(self):
        return {v: self.degree(v) for v in self._vertices}

    def next_vertex_id(self):
        return max(self._vertices, default=-1) + 1

    def next_edge_id(self):
        return max(self._edges, default=-1) + 1

    def elements(self, mode):
        return self._vertices if mode is Mode.VERTEX else frozenset(self._edges)

    # -- local operations -----------------------------------------------------

    def delete_vertices(self, xs):
        xs = set(xs)
        unknown = xs - self._vertices
        if unknown:
            raise UnknownIdentifier(f"unknown vertices {sorted(unknown)}")
        keep_v = self._vertices - xs
        keep_e = {
            eid: uv
            for eid, uv in self._edges.items()
            if uv[0] in keep_v and uv[1] in keep_v
        }
        return MultiGraph(keep_v, keep_e)

    def delete_edges(self, xs):
        xs = set(xs)
        unknown = xs - set(self._edges)
        if unknown:
            raise UnknownIdentifier(f"unknown edges {sorted(unknown)}")
        keep_e = {eid: uv for eid, uv in self._edges.items() if eid not in xs}
        return MultiGraph(self._vertices, keep_e)

    def delete(self, xs, mode=None):
        """Delete a set of vertices or a set of edges (never a mixture)."""
        xs = set(xs)
        if mode is Mode.VERTEX:
            return self.delete_vertices(xs)
        if mode is Mode.EDGE:
            return self.delete_edges(xs)
        fits_v = xs <= self._vertices
        fits_e = xs <= set(self._edges)
        if fits_v and fits_e and xs:
            raise MixedElementKinds(
                f"{sorted(xs)} is ambiguous; pass an explicit mode"
            )
        if fits_v:
            return self.delete_vertices(xs)
        if fits_e:
            return self.delete_edges(xs)
        if xs & self._vertices and xs & set(self._edges):
            raise MixedElementKinds(f"{sorted(xs)} mixes vertex and edge ids")
        raise UnknownIdentifier(f"{sorted(xs)} not all vertices nor all edges")

    def induced(self, xs):
        xs = set(xs)
        unknown = xs - self._vertices
        if unknown:
            raise UnknownIdentifier(f"unknown vertices {sorted(unknown)}")
        keep_e = {
            eid: uv for eid, uv in self._edges.items() if uv[0] in xs and uv[1] in xs
        }
        return MultiGraph(xs, keep_e)

    def contract(self, eid):
        """Merge the endpoints of eid into a fresh vertex.

        Multiplicities toward third vertices are summed; every copy between
        the two endpoints vanishes, so no loop is ever created.
        """
        x, y = self.endpoints(eid)
        w = self.next_vertex_id()
        keep_v = (self._vertices - {x, y}) | {w}
        keep_e = {}
        for other, (u, v) in self._edges.items():
            if {u, v} == {x, y}:
                continue
            if u in (x, y):
                u = w
            if v in (x, y):
                v = w
            keep_e[other] = (u, v)
        return MultiGraph(keep_v, keep_e)

    def lift(self, e1, e2):
        """Replace the edge pair {x,y},{y,z} by one new copy of {x,z}."""
        a, b = self.endpoints(e1)
        c, d = self.endpoints(e2)
        if e1 == e2:
            raise NoSharedEndpoint("lift needs two distinct edges")
        shared = {a, b} & {c, d}
        if not shared:
            raise NoSharedEndpoint(f"edges {e1} and {e2} share no endpoint")
        # Pick the shared vertex; for parallel edges both choices coincide
        # on the outer pair, which is the loop case below.
        y = min(shared)
        x = a if b == y else b
        z = c if d == y else d
        if x == z:
            raise WouldCreateLoop(f"lifting {e1},{e2} would create a loop at {x}")
        keep_e = {eid: uv for eid, uv in self._edges.items() if eid not in (e1, e2)}
        keep_e[self.next_edge_id()] = (x, z)
        return MultiGraph(self._vertices, keep_e)

    # -- traversal ------------------------------------------------------------

    def components(self):
        """Vertex sets of connected components, sorted by smallest member."""
        seen = set()
        out = []
        for s in sorted(self._vertices):
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self._adj[v]:
                    if u not in comp:
                        comp.add(u)
                        queue.append(u)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_connected(self):
        return len(self.components()) <= 1

    def is_forest(self):
        # union-find over edges; a parallel pair already closes a cycle
        parent = {v: v for v in self._vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for u, v in self._edges.values():
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def spanning_forest_edges(self):
        """Edge ids of a spanning forest (smallest ids first)."""
        parent = {v: v for v in self._vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        chosen = []
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                chosen.append(eid)
        return chosen

    def _bfs_path(self, source, target, banned_edge):
        """Shortest source->target path avoiding one edge id; ties prefer
        smaller vertex ids.  Returns (vertices, edge ids) or None."""
        prev = {source: (None, None)}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if v == target:
                break
            for u in sorted(self._adj[v]):
                if u in prev:
                    continue
                ids = [e for e in self._adj[v][u] if e != banned_edge]
                if not ids:
                    continue
                prev[u] = (v, min(ids))
                queue.append(u)
        if target not in prev:
            return None
        verts, eids = [target], []
        v = target
        while prev[v][0] is not None:
            p, e = prev[v]
            eids.append(e)
            verts.append(p)
            v = p
        verts.reverse()
        eids.reverse()
        return verts, eids

    def shortest_cycle(self):
        """A shortest cycle, or None on forests.

        A parallel pair counts as a cycle of length 2.  Ties are broken by
        the smallest canonical vertex/edge sequence, so the result is
        deterministic.
        """
        best = None

        def consider(verts, eids):
            nonlocal best
            cand = _canonical_cycle(verts, eids)
            key = (len(cand), cand.vertices, cand.edges)
            if best is None or key < (len(best), best.vertices, best.edges):
                best = cand

        for u in sorted(self._vertices):
            for v in sorted(self._adj[u]):
                if v < u:
                    continue
                ids = self._adj[u][v]
                if len(ids) >= 2:
                    consider([u, v], sorted(ids)[:2])
        if best is not None:
            return best  # length 2 is unbeatable in a loopless graph
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            found = self._bfs_path(u, v, eid)
            if found is None:
                continue
            verts, eids = found
            if best is not None and len(eids) + 1 > len(best):
                continue
            consider(verts, eids + [eid])
        return best

    def girth(self):
        c = self.shortest_cycle()
        return None if c is None else len(c)

    # -- misc -----------------------------------------------------------------

    def underlying_pairs(self):
        """Set of unordered endpoint pairs (multiplicities collapsed)."""
        return {uv for uv in self._edges.values()}

    def __repr__(self):
        return f"MultiGraph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, tuple(sorted(self._edges.items()))))


class GraphBuilder:
    """Mutable helper for assembling large graphs (gadget generation)."""

    def __init__(self):
        self._verts = []
        self._pairs = []

    def add_vertex(self):
        v = len(self._verts)
        self._verts.append(v)
        return v

    def add_edge(self, u, v):
        eid = len(self._pairs)
        self._pairs.append((u, v))
        return eid

    def build(self):
        return MultiGraph.from_edges(self._verts, self._pairs)
