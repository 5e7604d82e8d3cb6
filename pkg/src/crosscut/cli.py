"""Command-line drivers.

Exit codes: 0 success / isomorphic / pass, 1 non-isomorphic / fail,
2 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import kernels
from .branches import ClassCounts, DepthError, interleave, tail_equal
from .group_action import act, joint_thresholds, respecting_element
from .reduction import (
    MalformedEncoding,
    all_digraphs,
    decode,
    encode,
    load_graph,
    make_params,
    roundtrip,
)
from .reducts import block_partition, cb_reduct, coarsen, load_unary
from .structures import (
    BoundError,
    check_cross_cutting,
    check_witness,
    e_infinity,
    find_isomorphism,
    load_structure,
    save_structure,
)
from .suite import run_suite


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(report, as_json, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        elif isinstance(value, bool):
            value = str(value).lower()
        out.write(f"{key}: {value}\n")


def _write_json(doc, path):
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def _params_for_structure(S, args):
    meta = S.meta.get("params")
    if meta and args.counts is None and args.depth is None:
        return make_params(meta["k"], meta["counts"], meta["m"], meta.get("closure", True))
    # infer k: the number of singleton tail classes must match the k it implies
    singles = sum(1 for cl in e_infinity(S).classes() if len(cl) == 1)
    counts = args.counts
    for k in range(singles + 1):
        try:
            P = make_params(k, counts, args.depth if args.depth is not None else S.m, not args.no_closure)
        except (ValueError, DepthError):
            continue
        if P.m != S.m:
            continue
        c = P.cutoff
        tails = {tuple(S.labels[n][cl[0]] for n in range(c, S.m)) for cl in e_infinity(S).classes() if len(cl) == 1}
        if len(tails) == k:
            return P
    raise UsageError("cannot determine encoding parameters; pass --counts/--depth matching the encoder")


# -- subcommands ------------------------------------------------------------


def cmd_encode(args):
    G = load_graph(args.graph)
    P = make_params(G.vertices, args.counts, args.depth, not args.no_closure)
    S, _ = encode(G, P)
    if args.output:
        save_structure(S, args.output)
    hist = Counter(len(cl) for cl in e_infinity(S).classes())
    _emit(
        {
            "command": "encode",
            "params": P.to_json(),
            "edges": len(G.edges),
            "size": S.size,
            "histogram": {str(k): v for k, v in sorted(hist.items())},
            "output": args.output or "-",
        },
        args.json,
    )
    if not args.output:
        sys.stdout.write(S.dumps() + "\n")
    return 0


def cmd_decode(args):
    S = load_structure(args.structure)
    P = _params_for_structure(S, args)
    G = decode(S, P)
    if args.output:
        _write_json(G.to_json(), args.output)
    _emit(
        {"command": "decode", "params": P.to_json(), "vertices": G.vertices, "edges": [list(e) for e in G.sorted_edges()]},
        args.json,
    )
    return 0


def cmd_roundtrip(args):
    if args.exhaustive:
        cases = []
        for k in range(args.max_vertices + 1):
            P = make_params(k, args.counts, args.depth, not args.no_closure)
            fails = 0
            total = 0
            for G in all_digraphs(k):
                total += 1
                fails += roundtrip(G, P)["verdict"] != "pass"
            cases.append({"k": k, "graphs": total, "failures": fails, "params": P.to_json()})
        ok = all(c["failures"] == 0 for c in cases)
        report = {"command": "roundtrip", "verdict": "pass" if ok else "fail", "cases": cases}
        _emit(report, args.json)
        return 0 if ok else 1
    if not args.graph:
        raise UsageError("roundtrip needs --graph or --exhaustive")
    G = load_graph(args.graph)
    P = make_params(G.vertices, args.counts, args.depth, not args.no_closure)
    r = roundtrip(G, P)
    r["histogram"] = {str(k): v for k, v in r["histogram"].items()}
    _emit({"command": "roundtrip", **r}, args.json)
    return 0 if r["verdict"] == "pass" else 1


def cmd_check_iso(args):
    S, T = load_structure(args.first), load_structure(args.second)
    w = find_isomorphism(S, T, prune=not args.no_prune)
    report = {"command": "check-iso", "isomorphic": w is not None, "prune": not args.no_prune}
    if w is not None:
        report["witness"] = list(w.mapping)
        report["witness_valid"] = check_witness(S, T, w.mapping)
    _emit(report, args.json)
    return 0 if w is not None else 1


def cmd_crosscut(args):
    S = load_structure(args.structure)
    meta = S.meta.get("params")
    if args.counts is not None:
        counts = ClassCounts(tuple(args.counts))
    elif meta:
        counts = ClassCounts(tuple(meta["counts"]))
    else:
        counts = ClassCounts(tuple(max(1, S.class_count(n)) for n in range(S.m)))
    ok, failing = check_cross_cutting(S, counts)
    report = {"command": "crosscut", "counts": list(counts), "cross_cutting": ok}
    if failing is not None:
        report["failing"] = list(failing)
    _emit(report, args.json)
    return 0 if ok else 1


def cmd_blocks(args):
    if args.counts is None:
        raise UsageError("blocks needs --counts")
    bp = block_partition(ClassCounts(tuple(args.counts)))
    report = {"command": "blocks", "counts": args.counts, **bp.to_json()}
    if args.structure:
        S = coarsen(load_structure(args.structure), bp)
        report["relation_classes"] = [S.class_count(n) for n in range(S.m)]
        if args.output:
            save_structure(S, args.output)
    _emit(report, args.json)
    return 0


def cmd_cb_reduct(args):
    U = load_unary(args.structure)
    S = cb_reduct(U)
    if args.output:
        save_structure(S, args.output)
    _emit(
        {
            "command": "cb-reduct",
            "size": S.size,
            "relation_classes": [S.class_count(n) for n in range(S.m)],
            "meet_classes": e_infinity(S).count,
        },
        args.json,
    )
    return 0


def cmd_respect(args):
    if args.sigma is None:
        raise UsageError("respect needs --sigma")
    sigma = args.sigma
    k = len(sigma)
    P = make_params(k, args.counts, args.depth)
    fam = P.family
    g = respecting_element(fam, sigma)
    jt = joint_thresholds(fam, sigma)
    vertex_ok = [tail_equal(act(g, fam[i]), fam[sigma[i]], jt[i]) for i in range(k)]
    pair_ok = []
    ns = fam.thresholds
    for i in range(k):
        for j in range(k):
            if i != j:
                cut = max(ns[i], ns[j], ns[sigma[i]], ns[sigma[j]])
                pair_ok.append(tail_equal(act(g, interleave(fam, i, j)), interleave(fam, sigma[i], sigma[j]), cut))
    ok = all(vertex_ok) and all(pair_ok)
    report = {
        "command": "respect",
        "params": P.to_json(),
        "sigma": list(sigma),
        "joint_thresholds": jt,
        "group_element": [list(p) for p in g.perms],
        "vertex_checks": f"{sum(vertex_ok)}/{len(vertex_ok)}",
        "pair_checks": f"{sum(pair_ok)}/{len(pair_ok)}",
        "verdict": "pass" if ok else "fail",
    }
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(g.serialize() + "\n")
    _emit(report, args.json)
    return 0 if ok else 1


def cmd_suite(args):
    results = run_suite(prune=not args.no_prune)
    ok = all(r.passed for r in results)
    if args.json:
        _emit(
            {
                "command": "suite",
                "verdict": "pass" if ok else "fail",
                "criteria": [
                    {"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                    | ({"elapsed": round(r.elapsed, 3)} if args.timings else {})
                    for r in results
                ],
            },
            True,
        )
    else:
        for r in results:
            sys.stdout.write(r.line(args.timings) + "\n")
        sys.stdout.write(f"verdict: {'pass' if ok else 'fail'}\n")
    return 0 if ok else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--counts", type=_int_list, help="class counts, e.g. 2,3,4,5")
    common.add_argument("--depth", type=int, help="truncation depth m")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("-o", "--output", help="output file")
    common.add_argument("--no-closure", action="store_true", help="encode canonical representatives only")
    common.add_argument("--backend", choices=sorted(kernels.BACKENDS), help="kernel backend")

    parser = argparse.ArgumentParser(prog="crosscut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="encode a graph as a structure")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="decode a structure to a graph")
    p.add_argument("--structure", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("roundtrip", parents=[common], help="encode, decode and compare")
    p.add_argument("--graph")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--max-vertices", type=int, default=3)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("check-iso", parents=[common], help="decide isomorphism of two structures")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--no-prune", action="store_true")
    p.set_defaults(func=cmd_check_iso)

    p = sub.add_parser("crosscut", parents=[common], help="check the cross-cutting class counts")
    p.add_argument("--structure", required=True)
    p.set_defaults(func=cmd_crosscut)

    p = sub.add_parser("blocks", parents=[common], help="block partition (and optional coarsening)")
    p.add_argument("--structure")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("cb-reduct", parents=[common], help="two-class relations of a unary structure")
    p.add_argument("--structure", required=True)
    p.set_defaults(func=cmd_cb_reduct)

    p = sub.add_parser("respect", parents=[common], help="build and verify a respecting group element")
    p.add_argument("--sigma", type=_int_list)
    p.set_defaults(func=cmd_respect)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        kernels.use_backend(args.backend)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, KeyError, MalformedEncoding, BoundError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        sys.stderr.write(f"crosscut {args.command}: error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
