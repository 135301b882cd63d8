"""Readers and writers for the text formats.

Graphs use the PACE-style `p gr` format with 1-based indices; repeated
edge lines are parallel edges.  Writers emit sorted, normalized output so
a write/read/write cycle is byte-identical.
"""

import json

from .decomp import TreeDecomposition
from .errors import InvalidParameter
from .gadgets import Gadget, MinorModel, SubdivisionModel
from .graph import MultiGraph
from .treepart import TreePartition
from .trees import SubtreeFamily


def _data_lines(text):
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield line


# -- graphs ------------------------------------------------------------------


def parse_gr(text):
    lines = list(_data_lines(text))
    if not lines or not lines[0].startswith("p gr"):
        raise InvalidParameter("missing 'p gr' header")
    parts = lines[0].split()
    if len(parts) != 4:
        raise InvalidParameter("malformed 'p gr' header")
    n, m = int(parts[2]), int(parts[3])
    if len(lines) - 1 != m:
        raise InvalidParameter(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        u, v = (int(tok) for tok in line.split())
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidParameter(f"vertex out of range in line {line!r}")
        edges.append((u - 1, v - 1))
    return MultiGraph.from_edges(range(n), edges)


def format_gr(g):
    order = sorted(g.vertices)
    pos = {v: i + 1 for i, v in enumerate(order)}
    pairs = sorted(
        tuple(sorted((pos[u], pos[v]))) for u, v in g.edges.values()
    )
    lines = [f"p gr {g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in pairs]
    return "\n".join(lines) + "\n"


def read_gr(path):
    with open(path) as fh:
        return parse_gr(fh.read())


def write_gr(g, path):
    with open(path, "w") as fh:
        fh.write(format_gr(g))


# -- tree decompositions --------------------------------------------------------


def parse_td(text):
    lines = list(_data_lines(text))
    if not lines or not lines[0].startswith("s td"):
        raise InvalidParameter("missing 's td' header")
    _, _, nbags, _width1, _n = lines[0].split()
    nbags = int(nbags)
    bags = {}
    tree_edges = []
    for line in lines[1:]:
        toks = line.split()
        if toks[0] == "b":
            idx = int(toks[1]) - 1
            bags[idx] = frozenset(int(t) - 1 for t in toks[2:])
        else:
            a, b = int(toks[0]) - 1, int(toks[1]) - 1
            tree_edges.append((a, b))
    if set(bags) != set(range(nbags)):
        raise InvalidParameter("bag indices must be 1..#bags")
    tree = MultiGraph.from_edges(range(nbags), tree_edges)
    return TreeDecomposition(tree, bags)


def format_td(td, n):
    nodes = sorted(td.bags)
    pos = {t: i + 1 for i, t in enumerate(nodes)}
    lines = [f"s td {len(nodes)} {td.width() + 1} {n}"]
    for t in nodes:
        vs = " ".join(str(v + 1) for v in sorted(td.bags[t]))
        lines.append(f"b {pos[t]} {vs}".rstrip())
    pairs = sorted(
        tuple(sorted((pos[a], pos[b]))) for a, b in td.tree.edges.values()
    )
    lines += [f"{a} {b}" for a, b in pairs]
    return "\n".join(lines) + "\n"


def read_td(path):
    with open(path) as fh:
        return parse_td(fh.read())


def write_td(td, n, path):
    with open(path, "w") as fh:
        fh.write(format_td(td, n))


# -- tree partitions --------------------------------------------------------------


def parse_tp(text):
    lines = list(_data_lines(text))
    if not lines or not lines[0].startswith("s tp"):
        raise InvalidParameter("missing 's tp' header")
    _, _, nbags, _n = lines[0].split()
    nbags = int(nbags)
    bags = {}
    tree_edges = []
    for line in lines[1:]:
        toks = line.split()
        if toks[0] == "b":
            idx = int(toks[1]) - 1
            bags[idx] = frozenset(int(t) - 1 for t in toks[2:])
        else:
            a, b = int(toks[0]) - 1, int(toks[1]) - 1
            tree_edges.append((a, b))
    if set(bags) != set(range(nbags)):
        raise InvalidParameter("bag indices must be 1..#bags")
    tree = MultiGraph.from_edges(range(nbags), tree_edges)
    return TreePartition(tree, 0, bags)


def format_tp(tp, n):
    nodes = sorted(tp.bags)
    # root must come out as bag 1
    nodes.remove(tp.root)
    nodes.insert(0, tp.root)
    pos = {t: i + 1 for i, t in enumerate(nodes)}
    lines = [f"s tp {len(nodes)} {n}"]
    for t in nodes:
        vs = " ".join(str(v + 1) for v in sorted(tp.bags[t]))
        lines.append(f"b {pos[t]} {vs}".rstrip())
    pairs = sorted(
        tuple(sorted((pos[a], pos[b]))) for a, b in tp.tree.edges.values()
    )
    lines += [f"{a} {b}" for a, b in pairs]
    return "\n".join(lines) + "\n"


def read_tp(path):
    with open(path) as fh:
        return parse_tp(fh.read())


def write_tp(tp, n, path):
    with open(path, "w") as fh:
        fh.write(format_tp(tp, n))


# -- subtree families ---------------------------------------------------------------


def parse_family(text):
    lines = list(_data_lines(text))
    if not lines or not lines[0].startswith("t "):
        raise InvalidParameter("missing 't <n>' header")
    n = int(lines[0].split()[1])
    tree_edges = []
    for line in lines[1 : n]:
        a, b = (int(t) - 1 for t in line.split())
        tree_edges.append((a, b))
    members = []
    for line in lines[n:]:
        members.append(frozenset(int(t) - 1 for t in line.split()))
    tree = MultiGraph.from_edges(range(n), tree_edges)
    return SubtreeFamily(tree, tuple(members))


def format_family(fam):
    n = fam.tree.n
    lines = [f"t {n}"]
    pairs = sorted(
        tuple(sorted((u + 1, v + 1))) for u, v in fam.tree.edges.values()
    )
    lines += [f"{a} {b}" for a, b in pairs]
    for mem in fam.members:
        lines.append(" ".join(str(v + 1) for v in sorted(mem)))
    return "\n".join(lines) + "\n"


def read_family(path):
    with open(path) as fh:
        return parse_family(fh.read())


def write_family(fam, path):
    with open(path, "w") as fh:
        fh.write(format_family(fam))


# -- certificates ---------------------------------------------------------------------


def write_certificate(cert, path, bound_claimed=None, hypotheses_held=None):
    with open(path, "w") as fh:
        json.dump(cert.to_dict(bound_claimed, hypotheses_held), fh, indent=1)
        fh.write("\n")


def read_certificate(path):
    from .certificates import certificate_from_dict

    with open(path) as fh:
        return certificate_from_dict(json.load(fh))


# -- gadget metadata ----------------------------------------------------------------


def gadget_to_dict(gadget):
    d = {
        "k": gadget.k,
        "variant": gadget.variant,
        "vertices": sorted(gadget.graph.vertices),
        "edges": [
            [eid, u, v] for eid, (u, v) in sorted(gadget.graph.edges.items())
        ],
        "labels": {str(v): list(lab) for v, lab in sorted(gadget.labels.items())},
        "copies": {str(c): sorted(vs) for c, vs in gadget.copies.items()},
        "columns": [
            [list(key), sorted(vs)] for key, vs in sorted(gadget.columns.items(), key=str)
        ],
        "apex_groups": [
            [list(key), sorted(vs)]
            for key, vs in sorted(gadget.apex_groups.items(), key=str)
        ],
        "ports": [
            [list(key), sorted(vs)] for key, vs in sorted(gadget.ports.items(), key=str)
        ],
        "bundles": [
            [list(key), list(eids)] for key, eids in sorted(gadget.bundles.items())
        ],
    }
    if gadget.pattern is not None:
        d["pattern"] = {
            "vertices": sorted(gadget.pattern.vertices),
            "edges": [
                [eid, u, v]
                for eid, (u, v) in sorted(gadget.pattern.edges.items())
            ],
        }
    return d


def gadget_from_dict(d):
    graph = MultiGraph(
        d["vertices"], {eid: (u, v) for eid, u, v in d["edges"]}
    )
    pattern = None
    if "pattern" in d:
        pd = d["pattern"]
        pattern = MultiGraph(
            pd["vertices"], {eid: (u, v) for eid, u, v in pd["edges"]}
        )
    return Gadget(
        graph=graph,
        labels={int(v): tuple(lab) for v, lab in d["labels"].items()},
        k=d["k"],
        variant=d["variant"],
        pattern=pattern,
        copies={int(c): frozenset(vs) for c, vs in d["copies"].items()},
        columns={tuple(key): frozenset(vs) for key, vs in d["columns"]},
        apex_groups={tuple(key): frozenset(vs) for key, vs in d["apex_groups"]},
        ports={tuple(key): frozenset(vs) for key, vs in d["ports"]},
        bundles={tuple(key): tuple(eids) for key, eids in d["bundles"]},
    )


def write_gadget_meta(gadget, path):
    with open(path, "w") as fh:
        json.dump(gadget_to_dict(gadget), fh, indent=1)
        fh.write("\n")


def read_gadget_meta(path):
    with open(path) as fh:
        return gadget_from_dict(json.load(fh))


def model_to_dict(model):
    if isinstance(model, SubdivisionModel):
        return {
            "kind": "subdivision",
            "branch": {str(v): b for v, b in sorted(model.branch.items())},
            "paths": [
                [list(key), list(path)] for key, path in sorted(model.paths.items())
            ],
        }
    if isinstance(model, MinorModel):
        return {
            "kind": "minor",
            "branch_sets": {
                str(v): sorted(bs) for v, bs in sorted(model.branch_sets.items())
            },
            "edge_map": [
                [list(key), eid] for key, eid in sorted(model.edge_map.items())
            ],
        }
    raise InvalidParameter("unknown model type")
