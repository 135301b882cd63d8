import math

import pytest

from eppack.certificates import cycles_detector, verify_cover, verify_packing
from eppack.cycles import (
    Forest,
    GirthCertificate,
    LowDegreeVertex,
    ShortCycle,
    classify,
    ep_cycles,
    reduce_low_degree,
    short_cycle_threshold,
)
from eppack.errors import InvalidParameter
from eppack.gen import gnp
from eppack.graph import Mode, MultiGraph


def test_threshold():
    assert short_cycle_threshold(3, 4.0) == math.ceil(4.0 * math.log2(3))
    assert short_cycle_threshold(2, 1.0) == 1


def test_classify_trichotomy():
    assert isinstance(classify(MultiGraph.path_graph(4), 3, 4.0), Forest)
    got = classify(MultiGraph.complete(4), 3, 4.0)
    assert isinstance(got, ShortCycle) and got.length == 3
    # big cycle, low degree everywhere: threshold too small for the cycle
    got = classify(MultiGraph.cycle_graph(50), 3, 1.0)
    assert isinstance(got, LowDegreeVertex)
    # Petersen with c tiny: min degree 3, girth 5 above threshold
    got = classify(MultiGraph.petersen(), 3, 0.5)
    assert isinstance(got, GirthCertificate)
    assert got.min_degree == 3 and got.girth == 5
    with pytest.raises(InvalidParameter):
        classify(MultiGraph.complete(3), 1, 4.0)


def test_classify_prefers_parallel_pair_over_suppression():
    g = MultiGraph.from_edges(range(3), [(0, 1), (1, 2), (1, 2)])
    got = classify(g, 3, 4.0)
    assert isinstance(got, ShortCycle) and got.length == 2


def test_reduce_keeps_parallel_pair_vertices():
    g = MultiGraph.from_edges(range(3), [(0, 1), (1, 2), (1, 2)])
    h, trace = reduce_low_degree(g)
    assert h.girth() == 2
    assert trace.replay(g) == h


def test_reduce_to_empty_on_forest():
    g = MultiGraph.path_graph(6)
    h, trace = reduce_low_degree(g)
    assert h.n == 0
    assert trace.replay(g) == h


def test_expand_cycle_round_trip():
    # hexagon reduces heavily; its only cycle must expand back intact
    g = MultiGraph.cycle_graph(6)
    h, trace = reduce_low_degree(g)
    c = h.shortest_cycle()
    exp = trace.expand_cycle(c)
    assert exp.vertex_set == g.vertices
    assert exp.edge_set == frozenset(g.edges)


def test_ep_cycles_packing_and_cover():
    det = cycles_detector()
    g = MultiGraph.from_edges(
        range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    )
    out = ep_cycles(g, 2, Mode.VERTEX)
    assert out.packing is not None and len(out.packing) == 2
    assert verify_packing(g, det, out.packing)

    out = ep_cycles(g, 3, Mode.VERTEX)
    assert out.cover is not None
    assert verify_cover(g, det, out.cover)
    thr = short_cycle_threshold(9, 4.0)
    assert out.report.hypotheses_held
    assert len(out.cover) <= thr * 3


def test_ep_cycles_forest_gives_empty_cover():
    out = ep_cycles(MultiGraph.path_graph(8), 2, Mode.VERTEX)
    assert out.cover is not None and len(out.cover) == 0


def test_ep_cycles_edge_mode():
    det = cycles_detector()
    theta = MultiGraph.theta(4)
    out = ep_cycles(theta, 2, Mode.EDGE)
    assert out.packing is not None
    assert verify_packing(theta, det, out.packing)


def test_ep_cycles_randomized():
    det = cycles_detector()
    for seed in range(30):
        g = gnp(25, 0.12, seed)
        for k in (1, 2, 3):
            out = ep_cycles(g, k, Mode.VERTEX)
            if out.packing is not None:
                assert verify_packing(g, det, out.packing)
            else:
                assert verify_cover(g, det, out.cover)
                if out.report.hypotheses_held:
                    thr = short_cycle_threshold(3 * k, 4.0)
                    assert len(out.cover) <= thr * k


def test_ep_cycles_rejects_bad_params():
    with pytest.raises(InvalidParameter):
        ep_cycles(MultiGraph.complete(3), 0, Mode.VERTEX)
    with pytest.raises(InvalidParameter):
        ep_cycles(MultiGraph.complete(3), 1, Mode.VERTEX, c=0)
