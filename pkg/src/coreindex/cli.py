"""Command-line interface.

Exit codes: 0 success, 1 a check or expectation failed, 2 usage or parse
error, 3 a size guard refused the request.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from typing import Sequence

from . import batch, extremal
from .counting import core_index, f_vector, subgraph_core
from .families import FamilyError, build, expected_F, graph_class, parse_spec
from .formats import ParseError, decode_graph6, encode_graph6, format_edge_list, parse_edge_list
from .graph import Graph, GraphError, SizeGuardError, size_guards_lifted, wiener_index

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

COMPUTE_MAX_N = 16
TREE_CHECKS = {"lemma-concave", "thm-score", "thm-tree-F", "thm-pmax3", "thm-pmax4"}

# rough seconds per graph for each engine, measured on one core
_RATE = {"trees": 4e-6, "unicyclic": 2e-5, "table": 1e-6, "stream": 1e-3}


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def parse_range(text: str) -> list[int]:
    """``6``, ``6..20`` or ``4,6,9..11`` to a sorted list of ints."""
    out: set[int] = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                a, b = part.split("..", 1)
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise UsageError(f"empty range {part!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}; use forms like 6, 6..20 or 4,6,9..11") from None
    return sorted(out)


def class_size(cls_name: str, n: int) -> tuple[int, str]:
    cls = graph_class(cls_name)
    if cls.source == "trees":
        return max(1, n ** (n - 2)), "trees"
    if cls.source == "unicyclic":
        return batch.unicyclic_count(n) if n >= 3 else 0, "unicyclic"
    return 2 ** math.comb(n, 2), "table"


def estimate(what: str, n: int, cls_name: str | None = None) -> str:
    if cls_name is not None:
        size, engine = class_size(cls_name, n)
        secs = size * _RATE[engine]
        return f"cost estimate: {what} at n={n} visits {size} labeled graphs, roughly {secs:.0f} s"
    return f"cost estimate: {what} at n={n} may visit up to {2 ** n} vertex subsets"


# -- graph input ---------------------------------------------------------------------------------

def inline_edges(text: str) -> str:
    """``5:0-1,1-2`` to the ``n m`` / ``u v`` edge-list text."""
    head, sep, body = text.partition(":")
    if not sep:
        raise UsageError(f"inline edges look like 5:0-1,1-2, got {text!r}")
    pairs = [p.strip() for p in body.split(",") if p.strip()]
    rows = []
    for p in pairs:
        a, dash, b = p.partition("-")
        if not dash:
            raise UsageError(f"bad edge {p!r} in {text!r}")
        rows.append(f"{a} {b}")
    return "\n".join([f"{head.strip()} {len(rows)}"] + rows) + "\n"


def read_graphs(args) -> list[Graph]:
    if args.g6:
        return [decode_graph6(args.g6)]
    if args.edges:
        return [parse_edge_list(inline_edges(args.edges))]
    if args.family:
        return [build(parse_spec(args.family))]
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="ascii").read()
    if args.input_format == "edges":
        return [parse_edge_list(text)]
    graphs, offset = [], 0
    for line in text.splitlines(keepends=True):
        body = line.strip()
        if body and not body.startswith("#"):
            try:
                graphs.append(decode_graph6(body))
            except ParseError as exc:
                raise ParseError(str(exc).rsplit(" (at byte", 1)[0], offset + exc.offset) from None
        offset += len(line.encode())
    return graphs


def _compute_record(G: Graph, what: str) -> dict:
    rec: dict = {"graph6": encode_graph6(G), "n": G.n, "m": len(G.edges)}
    if what in ("F", "all"):
        rec["F"] = core_index(G)
    if what in ("fv", "all"):
        rec["f_vector"] = f_vector(G)
    if what in ("core", "all"):
        rec["core"] = sorted(subgraph_core(G))
    if what in ("wiener", "all"):
        rec["wiener"] = wiener_index(G)
    return rec


def cmd_compute(args, out) -> int:
    graphs = read_graphs(args)
    for G in graphs:
        if G.n > COMPUTE_MAX_N:
            if not args.unsafe_size:
                raise SizeGuardError("compute", G.n, COMPUTE_MAX_N)
            print(estimate("compute", G.n), file=sys.stderr)
    records = [_compute_record(G, args.what) for G in graphs]
    if args.format == "json":
        payload = {"schema_version": extremal.SCHEMA_VERSION, "graphs": records}
        out.write(dumps(payload) + "\n")
    elif args.format == "csv":
        cols = [c for c in ("graph6", "n", "m", "F", "f_vector", "core", "wiener") if c in records[0]] if records else []
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        for r in records:
            w.writerow([" ".join(map(str, r[c])) if isinstance(r[c], list) else r[c] for c in cols])
    else:
        for r in records:
            parts = [r["graph6"]]
            for key in ("F", "f_vector", "core", "wiener"):
                if key in r:
                    val = " ".join(map(str, r[key])) if isinstance(r[key], list) else str(r[key])
                    parts.append(f"{key}={val}")
            out.write("  ".join(parts) + "\n")
    return EXIT_OK


def cmd_gen(args, out) -> int:
    s = parse_spec(args.spec)
    G = build(s)
    rec: dict = {"spec": str(s), "graph6": encode_graph6(G), "n": G.n, "edges": format_edge_list(G)}
    status = EXIT_OK
    if args.expect_F:
        want, got = expected_F(s), core_index(G)
        rec.update(closed_form=want, computed=got, match=(want == got) if want is not None else None)
        if want is not None and want != got:
            status = EXIT_FAIL
    if args.format == "json":
        rec["schema_version"] = extremal.SCHEMA_VERSION
        out.write(dumps(rec) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(rec))
        w.writerow(list(rec.values()))
    else:
        out.write(rec["graph6"] + "\n")
        if args.expect_F:
            cf = "none" if rec["closed_form"] is None else rec["closed_form"]
            verdict = {True: "match", False: "MISMATCH", None: "no closed form"}[rec["match"]]
            out.write(f"closed-form={cf} computed={rec['computed']} {verdict}\n")
    return status


def _side_rows(report: extremal.ExtremalReport):
    for mode in ("min", "max"):
        side = getattr(report, mode)
        if side is None:
            continue
        for form in side.observed or [""]:
            yield mode, side, form


def cmd_scan(args, out) -> int:
    if args.unsafe_size:
        print(estimate("scan", args.n, args.cls), file=sys.stderr)
    if args.expect and args.mode == "both":
        raise UsageError("--expect needs --mode min or max; use --expect-min/--expect-max with both")
    kw = {
        "expected": [parse_spec(x) for x in args.expect],
        "expected_min": [parse_spec(x) for x in args.expect_min],
        "expected_max": [parse_spec(x) for x in args.expect_max],
    }
    report = extremal.scan(args.cls, args.n, args.mode, workers=args.workers, unsafe=args.unsafe_size,
                           engine=args.engine, **kw)
    if args.format == "json":
        out.write(dumps(report.to_dict()) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["class", "n", "size", "mode", "value", "count", "match", "graph6"])
        for mode, side, form in _side_rows(report):
            w.writerow([report.class_name, report.n, report.size, mode, side.value, side.count,
                        "" if side.match is None else str(side.match).lower(), form])
    else:
        out.write(f"class {report.class_name} (n={report.n}): {report.size} labeled graphs\n")
        for mode in ("min", "max"):
            side = getattr(report, mode)
            if side is None:
                continue
            cover = "all forms" if side.forms_complete else "sampled forms"
            out.write(f"{mode} F = {side.value}, {side.count} labeled extremizers, "
                      f"{cover}: {' '.join(side.observed)}\n")
            if side.match is not None:
                out.write(f"  expected {' '.join(side.expected)}: {'match' if side.match else 'MISMATCH'}"
                          + (f" ({side.reason})" if side.reason else "") + "\n")
    return EXIT_FAIL if report.match is False else EXIT_OK


def cmd_verify(args, out) -> int:
    ids = extremal.theorem_ids() if args.ids == ["all"] else args.ids
    unknown = [i for i in ids if i not in extremal.REGISTRY]
    if unknown:
        raise UsageError(f"unknown theorem id(s): {', '.join(unknown)}; see `coreindex list`")
    opts: dict = {"workers": args.workers}
    for key in ("seed", "cases", "k"):
        if getattr(args, key) is not None:
            opts[key] = getattr(args, key)
    ns = parse_range(args.n) if args.n else None
    failed = 0
    total = 0
    for tid in ids:
        run_ns = ns
        if args.max_n_trees is not None and tid in TREE_CHECKS:
            base = run_ns if run_ns is not None else extremal.REGISTRY[tid].default_n
            run_ns = [n for n in base if n <= args.max_n_trees]
        if args.unsafe_size:
            print(f"{tid}: guards lifted for n in {run_ns or extremal.REGISTRY[tid].default_n}", file=sys.stderr)
        for r in extremal.verify_theorem(tid, run_ns, **opts):
            total += 1
            failed += not r.passed
            if args.format == "json":
                out.write(dumps(r.to_dict()) + "\n")
            elif args.format == "csv":
                if total == 1:
                    out.write("theorem,params,passed,detail,counterexample\n")
                csv.writer(out, lineterminator="\n").writerow(
                    [r.theorem, dumps(r.params), str(r.passed).lower(), r.detail, r.counterexample or ""])
            else:
                tag = "PASS" if r.passed else "FAIL"
                params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
                line = f"{tag} {r.theorem} {params}: {r.detail}"
                if r.counterexample:
                    line += f" [counterexample {r.counterexample}: {r.counterexample_edges}]"
                out.write(line + "\n")
            out.flush()
    if args.format == "text":
        out.write(f"{total - failed}/{total} checks passed\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_correlate(args, out) -> int:
    if args.unsafe_size:
        print(estimate("correlate", args.n, args.cls), file=sys.stderr)
    res = extremal.wiener_correlation(args.cls, args.n, unsafe=args.unsafe_size)
    if args.format == "json":
        out.write(dumps(res.to_dict()) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["statistic", "value", "graph6"])
        for row in res.table:
            for g in row["graphs"]:
                w.writerow([row["statistic"], row["value"], g])
    else:
        out.write(f"class {res.class_name} (n={res.n}): {res.size} labeled graphs\n")
        out.write(f"spearman rho(F, W) = {res.spearman:.6f}  p = {res.pvalue:.3e}\n")
        for row in res.table:
            out.write(f"{row['statistic']:>6} = {row['value']}: {' '.join(row['graphs'])}\n")
    return EXIT_OK


def cmd_list(args, out) -> int:
    rows = [{"id": c.id, "claim": c.claim, "default_n": list(c.default_n)} for c in extremal.REGISTRY.values()]
    if args.format == "json":
        out.write(dumps({"schema_version": extremal.SCHEMA_VERSION, "theorems": rows}) + "\n")
    else:
        for r in rows:
            ns = r["default_n"]
            span = f"n={ns[0]}..{ns[-1]}" if len(ns) > 1 else (f"n<={ns[0]}" if ns else "fixed")
            out.write(f"{r['id']:<26} {span:<10} {r['claim']}\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $COREINDEX_WORKERS or 1)")
    common.add_argument("--unsafe-size", action="store_true", help="lift size guards; prints a cost estimate")

    p = argparse.ArgumentParser(prog="coreindex", description="Count connected subgraphs and check extremal claims.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="F, f-vector, subgraph core or Wiener index of a graph")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", help="graph6 string")
    src.add_argument("--edges", help="inline edge list n:u-v,..., e.g. 4:0-1,1-2,2-3")
    src.add_argument("--family", help="family spec such as lollipop:n=6,g=3")
    src.add_argument("--input", help="file with one graph6 per line, or - for stdin")
    c.add_argument("--input-format", choices=("graph6", "edges"), default="graph6")
    c.add_argument("--what", choices=("F", "fv", "core", "wiener", "all"), default="F")
    c.set_defaults(func=cmd_compute)

    g = sub.add_parser("gen", parents=[common], help="build a named family member")
    g.add_argument("spec", help="e.g. pineapple:n=5,g=3")
    g.add_argument("--expect-F", action="store_true", help="compare the closed form with the counted value")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("scan", parents=[common], help="extremes of F over a labeled class")
    s.add_argument("--class", dest="cls", required=True, help="e.g. trees, unicyclic:g=4, pendants:k=1")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=("min", "max", "both"), default="both")
    s.add_argument("--expect", action="append", default=[], help="expected extremizer spec (repeatable)")
    s.add_argument("--expect-min", action="append", default=[])
    s.add_argument("--expect-max", action="append", default=[])
    s.add_argument("--engine", choices=("auto", "stream"), default="auto")
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify", parents=[common], help="run registered checks")
    v.add_argument("ids", nargs="+", help="theorem ids, or all")
    v.add_argument("--n", help="sizes, e.g. 6..20")
    v.add_argument("--k", type=int)
    v.add_argument("--max-n-trees", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--cases", type=int)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("correlate", parents=[common], help="rank correlation of F and the Wiener index")
    r.add_argument("--class", dest="cls", default="trees")
    r.add_argument("--n", type=int, required=True)
    r.set_defaults(func=cmd_correlate)

    ls = sub.add_parser("list", parents=[common], help="list theorem ids")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.workers is None and "COREINDEX_WORKERS" in os.environ:
        try:
            args.workers = batch.default_workers()
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if args.workers is not None and args.workers < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.unsafe_size:
            with size_guards_lifted():
                return args.func(args, out)
        return args.func(args, out)
    except SizeGuardError as exc:
        print(f"error: {exc}; rerun with --unsafe-size to override", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ParseError, FamilyError, extremal.EmptyClass, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
