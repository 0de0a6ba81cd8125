"""Command-line interface: gen / build / verify / transform / stats / oracle.

Exit codes: 0 success, 1 domain failure (a verification violation was
found), 2 usage, parse, or budget errors.  All output is deterministic
for fixed inputs and seeds; randomness parameters are echoed in output
headers as comments.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generators, oracle as oracle_mod
from .graph import (CapGraph, DiGraph, GraphParseError, match_edge_ids,
                    parse_any_edge_list, parse_edge_list,
                    serialize_cap_edge_list, serialize_edge_list)
from .preserver import ftbfp
from .transform import bounded_outdegree_transform
from .verify import BudgetExceededError, verify_ftbfp


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _load_digraph(path: str) -> DiGraph:
    return parse_edge_list(_read_text(path))


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="flowpreserve",
        description="Fault-tolerant bounded-flow preservers for digraphs")
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instances")
    gensub = gen.add_subparsers(dest="kind", required=True)
    lb = gensub.add_parser("lower-bound",
                           help="extremal family forcing dense preservers")
    lb.add_argument("--lambda", dest="lam", type=int, required=True)
    lb.add_argument("--k", type=int, required=True)
    lb.add_argument("--n", type=int, required=True)
    lb.add_argument("--out", default="-")
    lb.add_argument("--layout", help="write named vertex groups as JSON")
    hard = gensub.add_parser("hardness",
                             help="set-cover reduction instance")
    hard.add_argument("--universe-file", required=True,
                      help='set-cover file: "|U| |F|" then one line per set')
    hard.add_argument("--lambda", dest="lam", type=int, required=True)
    hard.add_argument("--out", default="-")
    hard.add_argument("--layout")
    rnd = gensub.add_parser("random", help="seeded random digraph")
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--m", type=int, required=True)
    rnd.add_argument("--seed", type=int, required=True)
    rnd.add_argument("--cmax", type=int,
                     help="emit capacities in 1..cmax (CapGraph format)")
    rnd.add_argument("--out", default="-")
    rnd.add_argument("--layout")

    build = sub.add_parser("build", help="build a preserver")
    build.add_argument("--graph", default="-")
    build.add_argument("--source", type=int, required=True)
    build.add_argument("--lambda", dest="lam", type=int, required=True)
    build.add_argument("--k", type=int, required=True)
    build.add_argument("--out", default="-")
    build.add_argument("--audit", help="write per-vertex audit JSON lines")

    ver = sub.add_parser("verify", help="exhaustive fault-enumeration check")
    ver.add_argument("--graph", required=True)
    ver.add_argument("--sub", required=True)
    ver.add_argument("--source", type=int, required=True)
    ver.add_argument("--lambda", dest="lam", type=int, required=True)
    ver.add_argument("--k", type=int, required=True)
    ver.add_argument("--budget", type=int)
    ver.add_argument("--workers", type=int, default=1)

    tra = sub.add_parser("transform", help="out-degree-2 rewrite for (s,t)")
    tra.add_argument("--graph", default="-")
    tra.add_argument("--source", type=int, required=True)
    tra.add_argument("--dest", type=int, required=True)
    tra.add_argument("--out", default="-")
    tra.add_argument("--map", dest="map_path",
                     help="sidecar: orig_eid l_vid r_vid splitter_eid")

    st = sub.add_parser("stats", help="size and degree report")
    st.add_argument("--graph", default="-")
    st.add_argument("--lambda", dest="lam", type=int)
    st.add_argument("--k", type=int)

    orc = sub.add_parser("oracle", help="reachability oracle")
    orcsub = orc.add_subparsers(dest="action", required=True)
    ob = orcsub.add_parser("build")
    ob.add_argument("--graph", default="-")
    ob.add_argument("--lambda", dest="lam", type=int, required=True)
    ob.add_argument("--k", type=int, required=True)
    ob.add_argument("--out", required=True)
    ob.add_argument("--workers", type=int, default=1)
    oq = orcsub.add_parser("query")
    _query_args(oq)

    q = sub.add_parser("query", help="alias for oracle query")
    _query_args(q)
    return top


def _query_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--oracle", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--fail", default="",
                   help="comma-separated failed edge ids")


def _cmd_gen(args) -> int:
    if args.kind == "lower-bound":
        inst = generators.lower_bound_instance(args.lam, args.k, args.n)
        header = (f"# flowpreserve gen lower-bound lambda={args.lam} "
                  f"k={args.k} n={args.n}\n")
        _write_text(args.out, header + serialize_edge_list(inst.g))
        if args.layout:
            layout = {"source": inst.source,
                      "roots": list(inst.roots),
                      "leaves": list(inst.leaves),
                      "sinks": list(inst.sinks)}
            _write_text(args.layout, json.dumps(layout, sort_keys=True) + "\n")
        return 0
    if args.kind == "hardness":
        sc = generators.parse_set_cover(_read_text(args.universe_file))
        inst = generators.hardness_instance(sc, args.lam)
        header = (f"# flowpreserve gen hardness lambda={args.lam} "
                  f"u={inst.u} k={inst.k}\n")
        _write_text(args.out, header + serialize_edge_list(inst.g))
        if args.layout:
            layout = {"source": inst.source,
                      "k": inst.k,
                      "roots": list(inst.roots),
                      "sinks": list(inst.sinks),
                      "set_vertices": {f"{i},{w}": vid for (i, w), vid
                                       in sorted(inst.y_of.items())},
                      "bypass": [list(z) for z in inst.z_of]}
            _write_text(args.layout, json.dumps(layout, sort_keys=True) + "\n")
        return 0
    header = (f"# flowpreserve gen random n={args.n} m={args.m} "
              f"seed={args.seed}\n")
    if args.cmax:
        cg = generators.random_capgraph(args.n, args.m, args.cmax, args.seed)
        _write_text(args.out, header + serialize_cap_edge_list(cg))
    else:
        g = generators.random_digraph(args.n, args.m, args.seed)
        _write_text(args.out, header + serialize_edge_list(g))
    if args.layout:
        # random graphs carry no named vertex groups
        _write_text(args.layout, json.dumps({}, sort_keys=True) + "\n")
    return 0


def _cmd_build(args) -> int:
    g = _load_digraph(args.graph)
    result = ftbfp(g, args.source, args.lam, args.k)
    header = (f"# flowpreserve build source={args.source} lambda={args.lam} "
              f"k={args.k} edges={result.total_edges}\n")
    _write_text(args.out, header + serialize_edge_list(result.h))
    if args.audit:
        rows = [json.dumps({"vertex": a.vertex,
                            "kept_in_degree": a.kept_in_degree,
                            "f_observed": a.flow_capped},
                           sort_keys=True)
                for a in result.audit]
        _write_text(args.audit, "\n".join(rows) + "\n")
    return 0


def _cmd_verify(args) -> int:
    g = _load_digraph(args.graph)
    sub = match_edge_ids(g, _load_digraph(args.sub))
    violation = verify_ftbfp(g, sub, args.source, args.lam, args.k,
                             budget=args.budget, workers=args.workers)
    if violation is None:
        print("ok")
        return 0
    print(str(violation))
    return 1


def _cmd_transform(args) -> int:
    g = _load_digraph(args.graph)
    tg = bounded_outdegree_transform(g, args.source, args.dest)
    header = (f"# flowpreserve transform source={args.source} "
              f"dest={args.dest} source_h={tg.source_h} dest_h={tg.dest_h}\n")
    _write_text(args.out, header + serialize_edge_list(tg.h))
    if args.map_path:
        rows = [f"{e} {tg.split_left[e]} {tg.split_right[e]} "
                f"{tg.splitter_edge[e]}"
                for e in sorted(tg.splitter_edge)]
        _write_text(args.map_path, "\n".join(rows) + "\n")
    return 0


def _cmd_stats(args) -> int:
    loaded = parse_any_edge_list(_read_text(args.graph))
    g = loaded.base if isinstance(loaded, CapGraph) else loaded
    max_in = max((g.in_degree(v) for v in range(g.n)), default=0)
    max_out = max((g.out_degree(v) for v in range(g.n)), default=0)
    line = f"n={g.n} m={g.m} max_in_degree={max_in} max_out_degree={max_out}"
    if args.lam is not None and args.k is not None:
        in_bound = (2 ** args.k) * args.lam
        edge_bound = args.lam * (2 ** args.k) * g.n
        ok = max_in <= in_bound and g.m <= edge_bound
        line += (f" in_degree_bound={in_bound} edge_bound={edge_bound}"
                 f" in_degree_slack={in_bound - max_in}"
                 f" edge_slack={edge_bound - g.m}"
                 f" bounds_ok={'true' if ok else 'false'}")
    print(line)
    return 0


def _cmd_oracle(args) -> int:
    if args.action == "build":
        g = _load_digraph(args.graph)
        o = oracle_mod.build_oracle(g, args.lam, args.k,
                                    workers=args.workers)
        oracle_mod.save_oracle(o, args.out)
        return 0
    return _cmd_query(args)


def _cmd_query(args) -> int:
    o = oracle_mod.load_oracle(args.oracle)
    faults = [int(tok) for tok in args.fail.split(",") if tok]
    result = oracle_mod.query(o, args.x, args.y, faults)
    print(f"value={result.value} tag={result.tag}")
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "build": _cmd_build,
    "verify": _cmd_verify,
    "transform": _cmd_transform,
    "stats": _cmd_stats,
    "oracle": _cmd_oracle,
    "query": _cmd_query,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except BudgetExceededError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (GraphParseError, oracle_mod.OracleLoadError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
