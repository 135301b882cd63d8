import json
import subprocess
import sys

import pytest

from eppack import io as eio
from eppack.cli import main
from eppack.decomp import min_fill_td
from eppack.gadgets import thicken
from eppack.gen import gnp
from eppack.graph import MultiGraph
from eppack.treepart import bfs_layer_tp


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "k3.gr"
    eio.write_gr(MultiGraph.complete(3), path)
    return str(path)


@pytest.fixture
def host_file(tmp_path):
    path = tmp_path / "host.gr"
    eio.write_gr(gnp(10, 0.35, 7), path)
    return str(path)


def test_console_script_smoke():
    out = subprocess.run(
        [sys.executable, "-m", "eppack.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert "cycles" in out.stdout and "gadget" in out.stdout


def test_cycles_exit_codes(tmp_path, triangle_file):
    cert = tmp_path / "out.json"
    # one triangle: k=1 yields a packing, k=2 forces a cover
    assert main(["cycles", "-i", triangle_file, "-k", "1", "-o", str(cert)]) == 0
    payload = json.loads(cert.read_text())
    assert payload["kind"] == "packing"
    assert main(["cycles", "-i", triangle_file, "-k", "2", "-o", str(cert)]) == 10
    payload = json.loads(cert.read_text())
    assert payload["kind"] == "cover"


def test_oracle_values(capsys, triangle_file, host_file):
    assert main(["oracle", "vpack-cycles", "-i", triangle_file]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["oracle", "ecover-cycles", "-i", host_file]) == 0
    g = eio.read_gr(host_file)
    assert int(capsys.readouterr().out.strip()) == g.m - g.n + 1


def test_oracle_subgraph_with_pattern(capsys, host_file):
    assert main(
        ["oracle", "pack-sub", "-i", host_file, "--pattern", "k3", "--mode", "e"]
    ) == 0
    assert int(capsys.readouterr().out.strip()) >= 0


def test_trees_gallai_and_select(tmp_path, capsys):
    from eppack.gen import random_subtree_family
    from eppack.trees import SubtreeFamily

    fam = random_subtree_family(10, 6, 3, 1)
    fpath = tmp_path / "fam.txt"
    fpath.write_text(eio.format_family(fam))
    assert main(["trees", "gallai", "-i", str(fpath)]) == 0
    assert "packing" in capsys.readouterr().out

    # two families on one path, each rich enough for k=1
    tree = MultiGraph.path_graph(4)
    a = SubtreeFamily(tree, (frozenset({0}), frozenset({1})))
    b = SubtreeFamily(tree, (frozenset({2}), frozenset({3})))
    pa, pb = tmp_path / "a.txt", tmp_path / "b.txt"
    pa.write_text(eio.format_family(a))
    pb.write_text(eio.format_family(b))
    assert main(["trees", "select", "-i", str(pa), str(pb), "-k", "1"]) == 0
    assert "selection found" in capsys.readouterr().out

    thin = SubtreeFamily(tree, (frozenset({0, 1}),))
    other = SubtreeFamily(tree, (frozenset({1, 2}),))
    pa.write_text(eio.format_family(thin))
    pb.write_text(eio.format_family(other))
    assert main(["trees", "select", "-i", str(pa), str(pb), "-k", "1"]) == 10


def test_decomp_actions(tmp_path, host_file, capsys):
    g = eio.read_gr(host_file)
    td = min_fill_td(g)
    tdpath = tmp_path / "host.td"
    eio.write_td(td, g.n, tdpath)

    assert main(["decomp", "validate", "-i", host_file, "-t", str(tdpath)]) == 0
    assert capsys.readouterr().out.strip() == "valid"

    nice_out = tmp_path / "nice.td"
    assert main(
        ["decomp", "nice", "-i", host_file, "-t", str(tdpath), "-o", str(nice_out)]
    ) == 0
    back = eio.read_td(nice_out)
    assert back.width() == td.width()

    assert main(["decomp", "separate", "-i", host_file, "-t", str(tdpath)]) == 0
    sep = json.loads(capsys.readouterr().out)
    assert set(sep) == {"a", "b"}

    code = main(["decomp", "cover", "-i", host_file, "-t", str(tdpath)])
    assert code in (0, 10)

    code = main(
        ["decomp", "disconnected", "-i", host_file, "-t", str(tdpath), "-k", "1"]
    )
    assert code in (0, 10)


def test_decomp_invalid_td(tmp_path, host_file, capsys):
    bad = tmp_path / "bad.td"
    bad.write_text("s td 1 1 10\nb 1 1\n")
    assert main(["decomp", "validate", "-i", host_file, "-t", str(bad)]) == 1
    assert "invalid" in capsys.readouterr().out


def test_tp_actions(tmp_path, host_file, capsys):
    g = eio.read_gr(host_file)
    tp = bfs_layer_tp(g)
    tppath = tmp_path / "host.tp"
    eio.write_tp(tp, g.n, tppath)

    assert main(["tp", "validate", "-i", host_file, "-t", str(tppath)]) == 0
    assert main(["tp", "width", "-i", host_file, "-t", str(tppath)]) == 0
    assert int(capsys.readouterr().out.splitlines()[-1]) >= 1
    code = main(["tp", "cover", "-i", host_file, "-t", str(tppath), "-k", "2"])
    assert code in (0, 10)


def test_gadget_pipeline(tmp_path, capsys):
    out = tmp_path / "gad.gr"
    assert main(
        ["gadget", "thicken", "--pattern", "k4", "-k", "2", "-o", str(out)]
    ) == 0
    gadget = eio.read_gadget_meta(str(out) + ".meta")
    assert gadget.graph == eio.read_gr(out) or gadget.graph.n == eio.read_gr(out).n

    route_out = tmp_path / "model.json"
    x = str(min(gadget.graph.vertices))
    assert main(
        ["gadget", "route", "-i", str(out) + ".meta", "-x", x, "-o", str(route_out)]
    ) == 0
    model = json.loads(route_out.read_text())
    assert "branch" in model and "paths" in model

    assert main(["gadget", "gamma", "-d", "2", "-k", "2"]) == 0
    assert "14 vertices" in capsys.readouterr().out


def test_fuzz_and_bench(tmp_path, capsys):
    assert main(["fuzz", "tuza", "--trials", "20", "--max-n", "7"]) == 0
    assert "0 violations" in capsys.readouterr().out

    csv_out = tmp_path / "gap.csv"
    assert main(
        ["bench", "--mode", "e", "--k-max", "2", "-n", "12", "-o", str(csv_out)]
    ) == 0
    lines = csv_out.read_text().splitlines()
    assert lines[0] == "k,n,pack,cover,bound,hypotheses_held"
    assert len(lines) >= 2


def test_verify_round_trip(tmp_path, triangle_file, capsys):
    cert = tmp_path / "c.json"
    main(["cycles", "-i", triangle_file, "-k", "1", "-o", str(cert)])
    assert main(["verify", "-i", triangle_file, "-c", str(cert)]) == 0
    assert capsys.readouterr().out.strip() == "valid"

    # a cover that misses the only cycle must be rejected
    from eppack.certificates import CoverCertificate
    from eppack.graph import Mode

    eio.write_certificate(CoverCertificate(Mode.VERTEX, frozenset()), cert)
    g = eio.read_gr(triangle_file)
    assert g.m == 3
    assert main(["verify", "-i", triangle_file, "-c", str(cert)]) == 1


def test_error_exit_code(capsys):
    assert main(["cycles", "-i", "/nonexistent/file.gr", "-k", "1"]) == 2
    assert "error:" in capsys.readouterr().err
