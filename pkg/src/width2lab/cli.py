"""Command line front end.

Exit codes: 0 when every answer was produced (and self-checked), 1 when some
certificate or decomposition failed its re-check, 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from multiprocessing import Pool
from typing import List, Optional, Sequence

from . import decomp as dc
from . import generators as gen
from . import oracles
from .cellmodel import cycle_path_model
from .graph import Graph, GraphError, blocks
from .io import ParseError, format_edge_list, read_graphs, to_dot, to_graph6
from .minors import ALL_IDS, OBSTRUCTIONS, WIDTH_ONE, has_minor, has_rooted_minor, obstruction_graph
from .recognize import PARAMS, RecognitionError, analyze_block, check_certificate, recognize

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(paths: Sequence[str]) -> List[Graph]:
    out: List[Graph] = []
    for p in paths or ["-"]:
        if p == "-":
            text, src = sys.stdin.read(), "<stdin>"
        else:
            try:
                with open(p) as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"{p}: {exc.strerror}") from exc
            src = p
        out += read_graphs(text, src)
    return out


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _map(fn, items: Sequence, jobs: int) -> List:
    if jobs > 1 and len(items) > 1:
        with Pool(jobs) as pool:
            return pool.map(fn, items)
    return [fn(x) for x in items]


# ---------------------------------------------------------------------------
# recognize / decompose / validate


def _recognize_one(task):
    g, param, bound, seed = task
    rng = random.Random(seed) if seed is not None else None
    cert = recognize(g, param, bound, rng)
    ok, problems = check_certificate(g, cert)
    return cert.to_json(), ok, problems


def cmd_recognize(args) -> int:
    graphs = _read(args.inputs)
    tasks = [(g, args.param, args.bound, args.seed) for g in graphs]
    status = EXIT_OK
    for i, (cert, ok, problems) in enumerate(_map(_recognize_one, tasks, args.jobs)):
        if not ok:
            status = EXIT_CHECK
            print(f"graph {i}: certificate failed re-check: {'; '.join(problems)}", file=sys.stderr)
        if args.format == "text":
            what = cert["answer"]
            if what == "no":
                what += f" ({cert['witness']['obstruction']} minor)"
            print(f"graph {i}: {args.param} <= {args.bound}? {what}")
        else:
            _emit(cert)
    return status


def cmd_decompose(args) -> int:
    status = EXIT_OK
    for i, g in enumerate(_read(args.inputs)):
        cert = recognize(g, args.param, args.bound)
        if not cert.answer:
            print(f"graph {i}: no decomposition; {cert.obstruction} is a minor", file=sys.stderr)
            status = max(status, EXIT_INPUT)
            continue
        d = cert.decomposition
        rep = dc.validate(g, d, d.variant, max_width=args.bound)
        if not rep.ok:
            status = EXIT_CHECK
        if args.format == "dot":
            print(d.to_dot(f"T{i}"), end="")
        elif args.format == "text":
            print(f"graph {i}: {d.variant} decomposition, width {d.width}, {len(d.bags)} bags")
            for x in d.nodes:
                print(f"  {x}: {sorted(d.bags[x])}")
        else:
            _emit(d.to_json())
    return status


def cmd_validate(args) -> int:
    graphs = _read([args.graph])
    if len(graphs) != 1:
        raise InputError("validate expects exactly one graph")
    try:
        with open(args.decomposition) as fh:
            d = dc.Decomposition.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"{args.decomposition}: cannot read decomposition ({exc})") from exc
    variant = args.variant or d.variant
    rep = dc.validate(graphs[0], d, variant, max_width=args.bound)
    if args.format == "text":
        print(f"{variant}: {'ok' if rep.ok else 'invalid'}, width {rep.width}")
        for v in rep.violations:
            print("  " + v)
    else:
        _emit(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_CHECK


# ---------------------------------------------------------------------------
# minor / cells


def cmd_minor(args) -> int:
    host = _read([args.host])[0]
    if args.pattern in ALL_IDS:
        pattern = obstruction_graph(args.pattern)
    else:
        pattern = _read([args.pattern])[0]
    if args.root is not None:
        m = has_rooted_minor(host, args.root, pattern, args.pattern_root)
    else:
        m = has_minor(host, pattern)
    if args.format == "text":
        print("no minor" if m is None else f"minor found: {m.to_json()['branch_sets']}")
    else:
        _emit({"found": m is not None, "model": m.to_json() if m else None})
    return EXIT_OK


def cmd_cells(args) -> int:
    for i, g in enumerate(_read(args.inputs)):
        report = {"graph": i, "blocks": []}
        for b in blocks(g).blocks:
            info = analyze_block(g.subgraph(b))
            entry = {"vertices": sorted(b)}
            if info.cells is None:
                entry["tree_of_cycles"] = info.flags is not None
            else:
                entry.update(info.cells.to_json())
                if info.flags.path:
                    entry["cycle_path_model"] = cycle_path_model(info.cells).to_json()
            report["blocks"].append(entry)
        if args.format == "text":
            for e in report["blocks"]:
                flags = e.get("flags", {"tree_of_cycles": e.get("tree_of_cycles")})
                print(f"graph {i} block {e['vertices']}: {len(e.get('cells', []))} cells, {flags}")
        else:
            _emit(report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# generate


def _generate(args) -> List[Graph]:
    rng = random.Random(args.seed)
    k = args.k
    kind = args.kind
    if kind in ALL_IDS:
        return [gen.make_obstruction(kind)]
    if kind == "sun":
        return [gen.make_sun(k or 3)]
    if kind == "sc":
        return [gen.make_sc(k or 4)]
    if kind == "nest-sc":
        return [gen.make_nest_sc(k or 3).graph()]
    if kind == "spider":
        return [gen.make_spider_tree(k or 2)]
    if kind == "gt":
        return [gen.make_gt(gen.make_spider_tree(k or 2))]
    if kind == "gt-prime":
        return [gen.make_gt_prime(gen.make_spider_tree(k or 2))]
    if kind == "path-of-cycles":
        return [gen.sample_path_of_cycles()]
    if kind == "tree-of-cycles":
        return [gen.make_tree_of_cycles(rng, k or 5, 6, not args.no_chain, not args.no_two_boundaried)
                for _ in range(args.count)]
    if kind == "mamba":
        return [gen.random_mamba(rng, k or 3) for _ in range(args.count)]
    if kind == "corpus":
        return list(gen.corpus(args.seed or 0, args.count, args.max_n or 60))
    raise InputError(f"unknown generator {kind!r}")


def cmd_generate(args) -> int:
    for g in _generate(args):
        if args.format == "graph6":
            print(to_graph6(g))
        elif args.format == "dot":
            print(to_dot(g), end="")
        else:
            print(format_edge_list(g), end="")
    return EXIT_OK


# ---------------------------------------------------------------------------
# oracle / crosscheck


CAP_NAMES = ("PATHWIDTH_CAP", "HEAD_ORACLE_CAP", "CYCLE_ENUM_CAP", "NONEDGE_CAP", "MINOR_ORACLE_CAP")


def _apply_cap(cap: Optional[int]) -> dict:
    """Override every oracle cap; returns the previous values."""
    saved = {name: getattr(oracles, name) for name in CAP_NAMES}
    if cap is not None:
        for name in CAP_NAMES:
            setattr(oracles, name, cap)
    return saved


def cmd_oracle(args) -> int:
    for i, g in enumerate(_read(args.inputs)):
        if args.name == "pathwidth":
            res = {"pathwidth": oracles.pathwidth_exact(g, args.k_max)}
        elif args.name == "sctw":
            res = {"sctw": oracles.sctw_exact(g)}
        elif args.name == "head":
            if args.vertex is None:
                res = {"heads": [v for v in g.vertices if oracles.head_vertex_oracle(g, v) is not None]}
            else:
                d = oracles.head_vertex_oracle(g, args.vertex)
                res = {"head": d is not None, "decomposition": d.to_json() if d else None}
        elif args.name == "cycles":
            res = {"chordless_cycles": [list(c) for c in oracles.chordless_cycles_enum(g)]}
        else:
            raise InputError(f"unknown oracle {args.name!r}")
        res["graph"] = i
        if args.format == "text":
            print(f"graph {i}: " + ", ".join(f"{k}={v}" for k, v in res.items() if k != "graph"))
        else:
            _emit(res)
    return EXIT_OK


CROSS_PARAMS = ("width1", "tw", "sptw", "sctw", "dptw", "spctw")


def _crosscheck_one(g: Graph):
    present = {}
    for oid in set(WIDTH_ONE).union(*OBSTRUCTIONS.values()):
        h = obstruction_graph(oid)
        present[oid] = h.n <= g.n and h.m <= g.m and has_minor(g, h) is not None
    rows = []
    for p in CROSS_PARAMS:
        if p == "width1":
            cert = recognize(g, "spctw", 1)
            expect = not any(present[o] for o in WIDTH_ONE)
        else:
            cert = recognize(g, p, 2)
            expect = not any(present[o] for o in OBSTRUCTIONS[p])
        ok, _ = check_certificate(g, cert)
        rows.append((p, cert.answer, expect, ok))
    return rows


def cmd_crosscheck(args) -> int:
    graphs = list(oracles.graphs_up_to(args.max_n, connected=True))
    results = _map(_crosscheck_one, graphs, args.jobs)
    table = {p: [0, 0, 0, 0] for p in CROSS_PARAMS}  # yes, no, disagreements, failed checks
    for rows in results:
        for p, ans, exp, ok in rows:
            t = table[p]
            t[0 if ans else 1] += 1
            t[2] += ans != exp
            t[3] += not ok
    dis = sum(t[2] for t in table.values())
    bad = sum(t[3] for t in table.values())
    if args.format == "json":
        _emit({"graphs": len(graphs), "max_n": args.max_n,
               "table": {p: dict(zip(("yes", "no", "disagreements", "failed_checks"), t)) for p, t in table.items()},
               "disagreements": dis})
    else:
        print(f"{len(graphs)} connected graphs on <= {args.max_n} vertices")
        print(f"{'parameter':<10}{'yes':>8}{'no':>8}{'disagree':>10}{'bad cert':>10}")
        for p, t in table.items():
            print(f"{p:<10}{t[0]:>8}{t[1]:>8}{t[2]:>10}{t[3]:>10}")
        print(f"{dis} disagreements")
    return EXIT_CHECK if dis or bad else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="width2lab", description="Certified recognition of width-two graph classes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "dot", "edgelist", "graph6"), default=None)
    common.add_argument("--jobs", type=int, default=1, help="worker processes (across graphs)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--oracle-cap", type=int, default=None, help="override the size caps of the brute-force oracles")
    param = argparse.ArgumentParser(add_help=False)
    param.add_argument("--param", choices=PARAMS, default="spctw")
    param.add_argument("--bound", type=int, choices=(1, 2), default=2)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", parents=[common, param], help="certificate per input graph")
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("decompose", parents=[common, param], help="emit the yes-witness decomposition")
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate", parents=[common], help="check a decomposition JSON against a graph")
    p.add_argument("graph")
    p.add_argument("decomposition")
    p.add_argument("--variant", choices=dc.VARIANTS, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("minor", parents=[common], help="search for a minor model")
    p.add_argument("host")
    p.add_argument("--pattern", required=True, help="obstruction id or graph file")
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--pattern-root", type=int, default=0)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("cells", parents=[common], help="cell report per block")
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("generate", parents=[common], help="emit a constructed or random graph")
    p.add_argument("kind", help="obstruction id, sun, sc, nest-sc, spider, gt, gt-prime, path-of-cycles, tree-of-cycles, mamba, corpus")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--no-chain", action="store_true")
    p.add_argument("--no-two-boundaried", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", parents=[common], help="run a brute-force oracle")
    p.add_argument("name", choices=("pathwidth", "sctw", "head", "cycles"))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--vertex", type=int, default=None)
    p.add_argument("--k-max", type=int, default=4)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("crosscheck", parents=[common], help="exhaustive sweep against the minor search")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_crosscheck)
    return ap


DEFAULT_FORMAT = {"generate": "edgelist", "crosscheck": "text"}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # input files may follow options, e.g. "oracle head --vertex 0 g.txt"
    if extra:
        if not hasattr(args, "inputs") or any(x.startswith("-") and x != "-" for x in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.inputs = list(args.inputs) + extra
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "json")
    saved = _apply_cap(args.oracle_cap)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, RecognitionError, oracles.OracleLimitError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        for name, value in saved.items():
            setattr(oracles, name, value)


if __name__ == "__main__":
    sys.exit(main())
