"""grover-lab command line.

    grover-lab analyze "hamming(3,3)"
    grover-lab analyze --graph6-file petersen.g6 --format json
    grover-lab tables --k-max 20 --verify-golden
    grover-lab verify-existence
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import GraphDomainError, ParseError, UnsupportedGraph
from .expr import construct
from .graph6 import parse_graph6
from .graphs import Graph, basic_predicates
from .grover import build_operators, check_periodic_spectral
from .pst import DEFAULT_TAU_MAX, minimal_time_scan, spectral_data
from .spectrum_search import (
    DEFAULT_R_MAX,
    closed_walk_filter,
    compare_with_golden,
    enumerate_tables,
    feasible_rows,
    load_golden,
    to_json_lines,
    to_markdown,
    to_tsv,
    verify_candidate_graph,
)
from .walk_regularity import DEFAULT_L_MAX, classify_swr, srg_recognize

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_GOLDEN = 4


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _even_k(text: str) -> int:
    v = int(text)
    if v < 4 or v % 2:
        raise argparse.ArgumentTypeError(f"--k-max must be even and at least 4, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grover-lab", description="Exact Grover-walk state transfer analysis.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report for one graph")
    a.add_argument("spec", nargs="?", help="construction expression, e.g. 'cycle(4)'")
    a.add_argument("--graph", dest="graph_opt", help="construction expression")
    a.add_argument("--graph6-file", type=Path, help="file whose first non-empty line is graph6")
    a.add_argument("--tau-max", type=_positive, default=DEFAULT_TAU_MAX)
    a.add_argument("--l-max", type=_positive, default=DEFAULT_L_MAX)
    a.add_argument("--format", choices=("md", "json"), default="md")
    a.add_argument("--dump-operators", type=Path, help="also write U and P as exact JSON here")
    a.add_argument("--out", type=Path)

    t = sub.add_parser("tables", help="enumerate feasible spectra")
    t.add_argument("--k-max", type=_even_k, default=20)
    t.add_argument("--r-max", type=_positive, default=DEFAULT_R_MAX)
    t.add_argument("--format", choices=("md", "tsv", "json"), default="md")
    t.add_argument("--verify-golden", action="store_true")
    t.add_argument("--out", type=Path)

    v = sub.add_parser("verify-existence", help="check every constructible Existence graph")
    v.add_argument("--format", choices=("md", "json"), default="md")
    v.add_argument("--out", type=Path)
    return p


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _load_graph(args) -> Graph:
    sources = [s for s in (args.spec, args.graph_opt, args.graph6_file) if s is not None]
    if len(sources) != 1:
        raise ParseError("give exactly one of SPEC, --graph or --graph6-file")
    if args.graph6_file is not None:
        try:
            lines = [ln for ln in args.graph6_file.read_text().splitlines() if ln.strip()]
        except OSError as e:
            raise ParseError(f"cannot read {args.graph6_file}: {e}") from None
        if not lines:
            raise ParseError(f"{args.graph6_file} is empty")
        return parse_graph6(lines[0])
    return construct(sources[0])


# --- analyze --------------------------------------------------------------------------


def analyze_graph(g: Graph, tau_max: int = DEFAULT_TAU_MAX, l_max: int = DEFAULT_L_MAX) -> dict:
    pred = basic_predicates(g)
    if not pred.connected:
        raise UnsupportedGraph(f"{g.label} is not connected")
    if pred.regular is None:
        raise UnsupportedGraph(f"{g.label} is not regular")
    spectral_data(g)  # raises for eigenvalues of degree > 2
    swr = classify_swr(g, l_max)
    srg = srg_recognize(g)
    report = minimal_time_scan(g, tau_max).to_dict()
    witness = swr.witness
    if srg is not None and witness == srg:
        witness = list(srg.astuple())
    return {
        **report,
        "n": g.n,
        "edges": g.num_edges,
        "predicates": {
            "regular": pred.regular,
            "connected": pred.connected,
            "complete": pred.complete,
            "bipartite": pred.bipartite,
        },
        "swr": {"class": swr.tag, "witness": witness},
        "srg": list(srg.astuple()) if srg is not None else None,
    }


def _analyze_markdown(r: dict) -> str:
    filt = r["filter"]
    filt_text = filt["result"] + (f" (fails at {filt['failing']})" if filt.get("failing") else "")
    times = r["checked_times"]
    if not times:
        times_text = "none (filter short-circuit)"
    elif times == [6, 12]:
        times_text = "6, 12"
    else:
        times_text = f"1..{times[-1]}"
    lines = [
        f"# {r['graph']}",
        "",
        f"- vertices: {r['n']}, edges: {r['edges']}",
        f"- regular: {r['predicates']['regular']}, bipartite: {r['predicates']['bipartite']}",
        f"- spectrum: {r['spectrum']}",
        f"- walk-regularity class: {r['swr']['class']}" + (f" ({r['swr']['witness']})" if r["swr"]["witness"] else ""),
        f"- algebraic-integer filter: {filt_text}",
        f"- periodic: {r['periodic']}" + (f", period {r['period']}" if r["period"] else ""),
        f"- times checked: {times_text}",
        f"- PST pairs: {len(r['pst'])}",
    ]
    if r["pst"]:
        lines += ["", "| x | y | tau | angles |", "|---|---|---|---|"]
        for p in r["pst"]:
            ang = ", ".join(f"{k}: j={v}" for k, v in p["angles"].items())
            lines.append(f"| {p['x']} | {p['y']} | {p['tau']} | {ang} |")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    if args.dump_operators is not None:
        args.dump_operators.write_text(build_operators(g).to_json())
    report = analyze_graph(g, args.tau_max, args.l_max)
    if args.format == "json":
        text = json.dumps(report, sort_keys=True) + "\n"
    else:
        text = _analyze_markdown(report)
    _emit(text, args.out)
    return EXIT_OK


# --- tables -----------------------------------------------------------------------------


def cmd_tables(args) -> int:
    rows = enumerate_tables(args.k_max)
    kept = [r for r in rows if closed_walk_filter(r, args.r_max).kept]
    for r in rows:
        if r not in kept:
            print(f"closed-walk filter removed k={r.k} n={r.n}", file=sys.stderr)
    golden = load_golden()
    status = EXIT_OK
    if args.verify_golden:
        diffs = compare_with_golden(kept, golden, args.k_max)
        for d in diffs:
            print(f"golden mismatch: {d}", file=sys.stderr)
        if diffs:
            status = EXIT_GOLDEN
    if args.format == "tsv":
        text = to_tsv(kept)
    elif args.format == "json":
        text = to_json_lines(kept)
    else:
        text = to_markdown(kept, golden)
    _emit(text, args.out)
    return status


# --- verify-existence ---------------------------------------------------------------


def check_existence_row(k: int, n: int, expression: str) -> dict:
    entry = {"k": k, "n": n, "graph": expression, "status": "pass", "candidate": None,
             "periodic": None, "period": None, "pst_pairs": None, "problems": []}
    problems = entry["problems"]
    try:
        row = next(r for r in feasible_rows(k) if r.n == n)
        g = construct(expression)
        cand = verify_candidate_graph(g, row)
        per = check_periodic_spectral(g)
        scan = minimal_time_scan(g)
    except Exception as e:  # reported per row, never fatal for the whole run
        problems.append(f"construction/analysis: {type(e).__name__}: {e}")
        entry["status"] = "fail"
        return entry
    problems += cand.mismatches
    if not per.periodic:
        problems.append(f"periodicity: {per.reason}")
    if scan.checked_times != (6, 12):
        problems.append(f"scan times {scan.checked_times}")
    if scan.pairs:
        problems.append(f"PST pairs found: {[(p.x, p.y, p.tau) for p in scan.pairs]}")
    entry.update(candidate=cand.ok, periodic=per.periodic, period=per.period,
                 pst_pairs=len(scan.pairs), status="fail" if problems else "pass")
    return entry


def _threads() -> int:
    raw = os.environ.get("GROVER_LAB_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return os.cpu_count() or 1


def verify_existence(threads: int | None = None) -> list[dict]:
    """One entry per Existence graph, in table order; coset graphs are skipped."""
    slots: list = []
    jobs = []
    for gr in load_golden():
        if gr.status != "exists":
            continue
        if gr.construction is None:
            slots.append({"k": gr.k, "n": gr.n, "graph": gr.existence_tex, "status": "skipped",
                          "problems": [], "note": "skipped: coset graph, construction data not included"})
        else:
            slots.append(len(jobs))
            jobs.append((gr.k, gr.n, gr.construction))
    threads = threads or _threads()
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
            results = list(pool.map(check_existence_row, *zip(*jobs)))
    else:
        results = [check_existence_row(*j) for j in jobs]
    return [results[s] if isinstance(s, int) else s for s in slots]


def cmd_verify_existence(args) -> int:
    entries = verify_existence()
    if args.format == "json":
        text = json.dumps(entries, sort_keys=True) + "\n"
    else:
        lines = ["| k | n | graph | spectrum/counts/Hoffman | periodic | period | PST at 6,12 | result |",
                 "|---|---|---|---|---|---|---|---|"]
        for r in entries:
            if r["status"] == "skipped":
                lines.append(f"| {r['k']} | {r['n']} | {r['graph']} | - | - | - | - | {r['note']} |")
                continue
            verdict = "pass" if r["status"] == "pass" else "FAIL: " + "; ".join(r["problems"])
            cand = {True: "ok", False: "mismatch", None: "-"}[r["candidate"]]
            pairs = "-" if r["pst_pairs"] is None else f"{r['pst_pairs']} pairs"
            lines.append(f"| {r['k']} | {r['n']} | {r['graph']} | {cand} | "
                         f"{r['periodic']} | {r['period']} | {pairs} | {verdict} |")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    for r in entries:
        for prob in r["problems"]:
            print(f"{r['graph']} (k={r['k']}, n={r['n']}): {prob}", file=sys.stderr)
    return EXIT_FAIL if any(r["status"] == "fail" for r in entries) else EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "tables": cmd_tables, "verify-existence": cmd_verify_existence}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, GraphDomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedGraph as e:
        print(f"unsupported graph: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
