"""Command-line interface.

compute: run selected parameters over graph files under per-cell time
budgets and persist the record matrix. stats: render analytics reports
from a result file. fetch: download manifest-listed graphs with checksum
pinning. The process exits 0 iff no record in play has status=error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import stats as st
from .graph import fetch_dataset, load_manifest
from .registry import RunOptions, resolve_params
from .runner import (ResultRecord, collect_graph_files, has_errors,
                     load_graphs, read_results, run_compute, write_results)

_DILWORTH_NOTE = ("dilworth: comparing vicinal preorders via closed "
                  "neighborhoods (u below w iff N(u) is a subset of N[w]); "
                  "this is the reading the matching algorithm certifies")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="graphparams",
        description="exact structural graph parameters and reports")
    sub = ap.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="compute parameters over graphs")
    comp.add_argument("--graphs", nargs="+", required=True,
                      metavar="DIR|FILE",
                      help="graph files or directories of graph files")
    comp.add_argument("--format", default="auto",
                      choices=("auto", "edgelist", "dimacs", "mtx"))
    comp.add_argument("--params", default="all",
                      help="comma-separated parameter names, or 'all'")
    comp.add_argument("--timeout-secs", type=float, default=None,
                      metavar="N", help="per-cell budget (default: none)")
    comp.add_argument("--vi-variant", default="improved",
                      choices=("basic", "improved"))
    comp.add_argument("--out", required=True,
                      help="results file, .csv or .json")
    comp.add_argument("--quiet", action="store_true",
                      help="suppress per-cell progress on stderr")

    stp = sub.add_parser("stats", help="reports over a results file")
    stp.add_argument("--in", dest="infile", required=True)
    stp.add_argument("--report", required=True,
                     choices=("distributions", "klam", "min-combos",
                              "max-combos", "hierarchy"))
    stp.add_argument("--ratios", action="store_true",
                     help="add per-instance value/n ratio statistics")

    fet = sub.add_parser("fetch", help="download graphs from a manifest")
    fet.add_argument("--manifest", required=True)
    fet.add_argument("--dest", required=True)
    return ap


def _cmd_compute(args) -> int:
    try:
        params = resolve_params(args.params)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    files = collect_graph_files(args.graphs)
    if not files:
        print("no graph files found", file=sys.stderr)
        return 2
    graphs = load_graphs(files, args.format)
    if any(p.split("_")[0] == "dilworth" for p in params):
        print(_DILWORTH_NOTE, file=sys.stderr)

    def progress(r: int, state: str, elapsed: float) -> None:
        print(f"vi: r={r} {state} ({elapsed:.1f}s)", file=sys.stderr)

    opts = RunOptions(vi_variant=args.vi_variant,
                      progress=None if args.quiet else progress)
    log = None if args.quiet else sys.stderr
    records = run_compute(graphs, params, args.timeout_secs, opts, log=log)
    write_results(records, args.out)
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return 1 if has_errors(records) else 0


def _fmt(x: float | None, nd: int = 1) -> str:
    return "-" if x is None else f"{x:.{nd}f}"


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(header)] + [line(r) for r in rows])


def _report_distributions(records, ratios: bool) -> str:
    ns = st.exact_values(records, "n")
    header = ["parameter", "count", "avg", "median", "p90"]
    if ratios:
        header += ["avg k/n", "median k/n", "p90 k/n"]
    rows = []
    for p in st.record_params(records, include_bookkeeping=True):
        vals = st.exact_values(records, p)
        if not vals:
            rows.append([p, "0", "-", "-", "-"] + (["-"] * 3 if ratios
                                                   else []))
            continue
        s = st.summarize(list(vals.values()))
        row = [p, str(s.count), _fmt(s.avg), _fmt(s.median), _fmt(s.p90)]
        if ratios:
            rs = [v / ns[i] for i, v in vals.items()
                  if i in ns and ns[i] > 0]
            if rs and p not in st.BOOKKEEPING:
                t = st.summarize(rs)
                row += [_fmt(t.avg, 3), _fmt(t.median, 3), _fmt(t.p90, 3)]
            else:
                row += ["-", "-", "-"]
        rows.append(row)
    return _table(header, rows)


def _report_klam(records) -> str:
    fns = list(st.KLAM_FUNCTIONS)
    header = ["parameter"] + fns
    rows = [["threshold"] + [str(st.klam_threshold(f)) for f in fns]]
    counts = {f: st.klam_counts(records, f) for f in fns}
    for p in st.record_params(records):
        rows.append([p] + [str(counts[f].get(p, 0)) for f in fns])
    return _table(header, rows)


def _report_combos(records, pick_name: str) -> str:
    combo = st.min_combo if pick_name == "min" else st.max_combo
    params = [p for p in st.record_params(records)
              if st.exact_values(records, p)]
    header = ["pair", "count", "skipped", "median", "p90"]
    rows = []
    for i, a in enumerate(params):
        for b in params[i + 1:]:
            pairs, skipped = combo(records, a, b)
            if not pairs:
                continue
            s = st.summarize([v for _, v in pairs])
            rows.append((s.median, f"{pick_name}({a},{b})",
                         [f"{pick_name}({a},{b})", str(s.count),
                          str(skipped), _fmt(s.median), _fmt(s.p90)]))
    rows.sort(key=lambda r: (r[0], r[1]))
    return _table(header, [r[2] for r in rows])


def _report_hierarchy(records) -> str:
    edges = st.load_hierarchy_edges()
    annos = st.hierarchy_annotations(records, edges)
    viols = st.hierarchy_violations(records, edges)
    header = ["edge (lower <= upper + c)", "count", "median l/u", "p90 l/u"]
    rows = []
    for a in annos:
        e = a.edge
        name = f"{e.lower} <= {e.upper} + {e.additive_offset}"
        rows.append([name, str(a.count), _fmt(a.median, 2),
                     _fmt(a.p90, 2)])
    out = _table(header, rows)
    if viols:
        out += "\n\nviolations:\n" + "\n".join("  " + v for v in viols)
    else:
        out += "\n\nno violations"
    return out


def _cmd_stats(args) -> int:
    records = read_results(args.infile)
    if args.report == "distributions":
        print(_report_distributions(records, args.ratios))
    elif args.report == "klam":
        print(_report_klam(records))
    elif args.report == "min-combos":
        print(_report_combos(records, "min"))
    elif args.report == "max-combos":
        print(_report_combos(records, "max"))
    elif args.report == "hierarchy":
        print(_report_hierarchy(records))
    return 1 if has_errors(records) else 0


def _cmd_fetch(args) -> int:
    manifest = load_manifest(Path(args.manifest).read_text())
    metas = fetch_dataset(manifest, args.dest)
    print(f"fetched {len(metas)} of {len(manifest.entries)} instances "
          f"into {args.dest}", file=sys.stderr)
    return 0 if len(metas) == len(manifest.entries) else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compute":
        return _cmd_compute(args)
    if args.command == "stats":
        return _cmd_stats(args)
    return _cmd_fetch(args)


if __name__ == "__main__":
    sys.exit(main())
