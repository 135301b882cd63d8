"""Seeded random instance generators.

Everything is driven by the splittable generator in rng, so identical
parameters and seed give identical instances on any platform.
"""

from .errors import InvalidParameter
from .graph import MultiGraph
from .rng import SplitMix64


def gnp(n, p, seed):
    """Simple binomial random graph on vertices 0..n-1."""
    if n < 0 or not (0.0 <= p <= 1.0):
        raise InvalidParameter("gnp needs n >= 0 and p in [0, 1]")
    rng = SplitMix64(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return MultiGraph.from_edges(range(n), edges)


def planar_stacked(n, deletions, seed):
    """Stacked triangulation on n vertices, then random edge deletions.

    Planar by construction: grow from K_4 by repeatedly placing a new
    vertex inside a face and joining it to the face's three corners.
    """
    if n < 4:
        raise InvalidParameter("stacked triangulations need n >= 4")
    if deletions < 0:
        raise InvalidParameter("deletions must be nonnegative")
    rng = SplitMix64(seed)
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    for v in range(4, n):
        f = faces.pop(rng.randrange(len(faces)))
        a, b, c = f
        edges += [(a, v), (b, v), (c, v)]
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    g = MultiGraph.from_edges(range(n), edges)
    drop = rng.sample(sorted(g.edges), min(deletions, g.m))
    return g.delete_edges(drop)


def random_tree(n, seed):
    """Random recursive tree on vertices 0..n-1."""
    if n < 1:
        raise InvalidParameter("trees need n >= 1")
    rng = SplitMix64(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return MultiGraph.from_edges(range(n), edges)


def random_subtree_family(n, count, max_size, seed):
    """Random tree plus random connected subsets grown by neighbor steps."""
    if count < 1 or max_size < 1:
        raise InvalidParameter("need count >= 1 and max_size >= 1")
    rng = SplitMix64(seed)
    tree = random_tree(n, rng.next_u64())
    members = []
    for _ in range(count):
        size = rng.randint(1, max_size)
        current = {rng.randrange(n)}
        frontier = sorted(
            u for v in current for u in tree.neighbors(v) if u not in current
        )
        while len(current) < size and frontier:
            u = frontier[rng.randrange(len(frontier))]
            current.add(u)
            frontier = sorted(
                w
                for v in current
                for w in tree.neighbors(v)
                if w not in current
            )
        members.append(frozenset(current))
    from .trees import SubtreeFamily

    return SubtreeFamily(tree, tuple(members))


def gen_random(kind, params, seed):
    """Dispatcher used by the command line and the benchmarks."""
    if kind == "gnp":
        return gnp(params.get("n", 10), params.get("p", 0.3), seed)
    if kind == "planar-stacked":
        return planar_stacked(
            params.get("n", 8), params.get("deletions", 0), seed
        )
    if kind == "tree":
        return random_tree(params.get("n", 10), seed)
    if kind == "subtree-family":
        return random_subtree_family(
            params.get("n", 10),
            params.get("count", 5),
            params.get("max_size", 4),
            seed,
        )
    raise InvalidParameter(f"unknown generator kind {kind!r}")
