"""The `ep` command line tool.

Exit codes: 0 for success or a packing outcome, 10 when a cover is
returned, 1 when a verification fails, 2 on any error.
"""

import argparse
import json
import os
import sys

from . import bench as bench_mod
from . import gadgets, gen, io, oracles, treepart
from .certificates import builtin_detectors, verify_cover, verify_packing
from .cycles import ep_cycles
from .decomp import (
    Ceiling,
    balanced_separation,
    cover_connected_bounded_tw,
    disconnected_pattern_ep,
    to_nice,
    validate_td,
)
from .errors import EPError
from .graph import Mode, MultiGraph
from .trees import gallai, rs_selection

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2
EXIT_COVER = 10


def _pattern_graph(name):
    shorthand = {
        "k2": MultiGraph.complete(2),
        "k3": MultiGraph.complete(3),
        "k4": MultiGraph.complete(4),
        "k5": MultiGraph.complete(5),
        "k33": MultiGraph.complete_bipartite(3, 3),
        "path3": MultiGraph.path_graph(3),
        "petersen": MultiGraph.petersen(),
    }
    if name in shorthand:
        return shorthand[name]
    if os.path.exists(name):
        return io.read_gr(name)
    raise EPError(f"unknown pattern {name!r}")


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_cycles(args):
    g = io.read_gr(args.input)
    mode = Mode.parse(args.mode)
    outcome = ep_cycles(g, args.k, mode, args.c_const)
    cert = outcome.certificate
    payload = cert.to_dict(
        outcome.report.bound_claimed, outcome.report.hypotheses_held
    )
    _emit(args, json.dumps(payload, indent=1) + "\n")
    if outcome.packing is not None:
        print(f"packing of size {len(outcome.packing)}", file=sys.stderr)
        return EXIT_OK
    print(f"cover of size {len(outcome.cover)}", file=sys.stderr)
    return EXIT_COVER


def cmd_oracle(args):
    g = io.read_gr(args.input)
    if args.which in ("pack-sub", "cover-sub"):
        pattern = _pattern_graph(args.pattern)
        mode = Mode.parse(args.mode)
        fn = (
            oracles.exact_pack_subgraph
            if args.which == "pack-sub"
            else oracles.exact_cover_subgraph
        )
        result = fn(g, pattern, mode, budget=args.budget)
    else:
        fn = {
            "vpack-cycles": oracles.exact_vpack_cycles,
            "vcover-cycles": oracles.exact_vcover_cycles,
            "epack-cycles": oracles.exact_epack_cycles,
            "ecover-cycles": lambda h, budget=None: oracles.exact_ecover_cycles(h),
        }[args.which]
        result = fn(g, budget=args.budget)
    print(result.value)
    if args.output:
        io.write_certificate(result.witness, args.output)
    return EXIT_OK


def cmd_trees(args):
    if args.action == "gallai":
        fam = io.read_family(args.input[0])
        packing, cover = gallai(fam)
        print(f"packing {len(packing)} cover {len(cover)}")
        if args.output:
            with open(args.output, "w") as fh:
                json.dump(
                    {
                        "packing": packing.to_dict(),
                        "cover": cover.to_dict(),
                    },
                    fh,
                    indent=1,
                )
                fh.write("\n")
        return EXIT_OK
    fams = [io.read_family(path) for path in args.input]
    tree = fams[0].tree
    if any(f.tree != tree for f in fams[1:]):
        raise EPError("all family files must share one tree")
    got = rs_selection(tree, [list(f.members) for f in fams], args.k)
    if got is None:
        print("no selection")
        return EXIT_COVER
    print("selection found")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(
                [[sorted(m) for m in per] for per in got], fh, indent=1
            )
            fh.write("\n")
    return EXIT_OK


def cmd_decomp(args):
    g = io.read_gr(args.input)
    td = io.read_td(args.td)
    if args.action == "validate":
        check = validate_td(g, td)
        print("valid" if check else f"invalid: {check.violations}")
        return EXIT_OK if check else EXIT_INVALID
    if args.action == "nice":
        ntd = to_nice(g, td)
        _emit(args, io.format_td(ntd.to_td(), g.n))
        return EXIT_OK
    dets = builtin_detectors()
    if args.action == "separate":
        ntd = to_nice(g, td)
        det = dets[args.patterns]
        sep = balanced_separation(g, ntd, det.exact_vpack)
        _emit(
            args,
            json.dumps({"a": sorted(sep.a), "b": sorted(sep.b)}, indent=1)
            + "\n",
        )
        return EXIT_OK
    if args.action == "cover":
        det = dets[args.patterns]
        coeff = args.ceiling_coeff or max(1, td.width())
        ceiling = Ceiling(lambda k: coeff * k, f"linear, coefficient {coeff}")
        cover = cover_connected_bounded_tw(g, det, ceiling, td)
        _emit(args, json.dumps(cover.to_dict(), indent=1) + "\n")
        return EXIT_COVER if cover.elements else EXIT_OK
    # disconnected
    names = args.patterns.split(",")
    outcome = disconnected_pattern_ep(
        g, td, [dets[name] for name in names], args.k
    )
    cert = outcome.certificate
    payload = cert.to_dict(
        outcome.report.bound_claimed, outcome.report.hypotheses_held
    )
    _emit(args, json.dumps(payload, indent=1) + "\n")
    return EXIT_OK if outcome.packing is not None else EXIT_COVER


def cmd_tp(args):
    g = io.read_gr(args.input)
    tp = io.read_tp(args.tp)
    if args.action == "validate":
        check = treepart.validate_tp(g, tp)
        print("valid" if check else f"invalid: {check.violations}")
        return EXIT_OK if check else EXIT_INVALID
    if args.action == "width":
        print(treepart.tp_width(g, tp))
        return EXIT_OK
    det = builtin_detectors()[args.patterns]
    outcome = treepart.inductive_edge_cover(g, tp, det, args.k)
    cert = outcome.certificate
    payload = cert.to_dict(
        outcome.report.bound_claimed, outcome.report.hypotheses_held
    )
    _emit(args, json.dumps(payload, indent=1) + "\n")
    return EXIT_OK if outcome.packing is not None else EXIT_COVER


def cmd_gadget(args):
    if args.action == "gamma":
        gadget = gadgets.gamma(args.d, args.k)
    elif args.action == "thicken":
        h = _pattern_graph(args.pattern)
        if args.minor:
            gadget = gadgets.thicken_minor(h, args.k)
        elif args.subcubic:
            gadget = gadgets.thicken_subcubic(h, args.k)
        else:
            gadget = gadgets.thicken(h, args.k)
    else:
        gadget = io.read_gadget_meta(args.input)
        forbidden = frozenset(
            int(tok) for tok in args.x.split(",") if tok.strip()
        )
        model = gadgets.route_avoiding(gadget, forbidden)
        _emit(args, json.dumps(io.model_to_dict(model), indent=1) + "\n")
        return EXIT_OK
    if args.output:
        io.write_gr(gadget.graph, args.output)
        io.write_gadget_meta(gadget, args.output + ".meta")
    print(f"{gadget.graph.n} vertices, {gadget.graph.m} edges")
    return EXIT_OK


def cmd_fuzz(args):
    fn = bench_mod.fuzz_tuza if args.target == "tuza" else bench_mod.fuzz_jones
    report = fn(args.trials, args.max_n, args.seed)
    print(
        f"{report.trials} trials, max ratio {report.max_ratio:.3f}, "
        f"{len(report.violations)} violations"
    )
    return EXIT_OK if not report.violations else EXIT_INVALID


def cmd_bench(args):
    table = bench_mod.bench_gap(
        Mode.parse(args.mode), args.k_max, args.n, args.p, args.seed
    )
    _emit(args, table.to_csv())
    return EXIT_OK


def cmd_verify(args):
    g = io.read_gr(args.input)
    cert = io.read_certificate(args.certificate)
    det = builtin_detectors()[args.patterns]
    from .certificates import PackingCertificate

    if isinstance(cert, PackingCertificate):
        check = verify_packing(g, det, cert)
    else:
        check = verify_cover(g, det, cert)
    print("valid" if check else f"invalid: {check.violations}")
    return EXIT_OK if check else EXIT_INVALID


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ep", description="packing/covering duality toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cycles", help="constructive cycle packing or cover")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--mode", default="v", choices=["v", "e"])
    p.add_argument("--c-const", type=float, default=4.0)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_cycles)

    p = sub.add_parser("oracle", help="exact ground-truth solvers")
    p.add_argument(
        "which",
        choices=[
            "vpack-cycles",
            "vcover-cycles",
            "epack-cycles",
            "ecover-cycles",
            "pack-sub",
            "cover-sub",
        ],
    )
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--pattern", default="k3")
    p.add_argument("--mode", default="v", choices=["v", "e"])
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("trees", help="subtree family packing and selection")
    p.add_argument("action", choices=["gallai", "select"])
    p.add_argument("-i", "--input", nargs="+", required=True)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_trees)

    p = sub.add_parser("decomp", help="tree decomposition machinery")
    p.add_argument(
        "action", choices=["validate", "nice", "separate", "cover", "disconnected"]
    )
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-t", "--td", required=True)
    p.add_argument("--patterns", default="cycles")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--ceiling-coeff", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_decomp)

    p = sub.add_parser("tp", help="tree partition machinery")
    p.add_argument("action", choices=["validate", "width", "cover"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-t", "--tp", required=True)
    p.add_argument("--patterns", default="cycles")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_tp)

    p = sub.add_parser("gadget", help="lower-bound gadget generators")
    p.add_argument("action", choices=["gamma", "thicken", "route"])
    p.add_argument("-d", type=int, default=4)
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--pattern", default="k5")
    p.add_argument("--subcubic", action="store_true")
    p.add_argument("--minor", action="store_true")
    p.add_argument("-i", "--input")
    p.add_argument("-x", default="")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_gadget)

    p = sub.add_parser("fuzz", help="conjecture fuzzers")
    p.add_argument("target", choices=["tuza", "jones"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_fuzz)

    p = sub.add_parser("bench", help="gap growth benchmark (CSV)")
    p.add_argument("--mode", default="v", choices=["v", "e"])
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("-n", type=int, default=20)
    p.add_argument("-p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("verify", help="independent certificate verification")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--certificate", required=True)
    p.add_argument("--patterns", default="cycles")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except EPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
