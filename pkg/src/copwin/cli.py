"""Command-line entry point.

Subcommands: ``solve`` (capture table for a finite graph), ``check`` (run the
claim-verification suite), ``growth`` (capture-time table over truncation
sizes), ``play`` (simulate one game), ``serve`` (session service).

Exit codes: 0 success, 1 claim/assertion failure, 2 usage or IO error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from .claims import FULL, QUICK, run_claims
from .graphs import GraphFormatError, QuadrantGraph, Vertex
from .solver import CaptureTable, is_finite, solve_capture_times
from .strategies import (
    AxisPushCop,
    BoundedMinimaxRobber,
    Convention,
    RandomRobber,
    SidestepRobber,
    StayPutRobber,
    TableCop,
    TableRobber,
    run_game,
)
from . import service

USAGE_ERROR = 2
CLAIM_FAILURE = 1


def _load_graph(spec: str):
    try:
        return service.build_graph(spec)
    except service.ApiError as e:
        raise SystemExit(_usage_fail(e.message))


def _usage_fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _fmt_value(v) -> str:
    return str(int(v)) if is_finite(v) else "robber-win"


def cmd_solve(args) -> int:
    graph = _load_graph(args.graph)
    if isinstance(graph, QuadrantGraph):
        return _usage_fail("solve needs a finite graph, not the infinite quadrant graph")
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    cache_path = os.path.join(out_dir, f"table_{graph.content_hash()[:16]}.json")
    table = CaptureTable.read_cache(cache_path, graph)
    cached = table is not None
    if table is None:
        table = solve_capture_times(graph).table
        table.write_cache(cache_path)
    csv_path = os.path.join(out_dir, f"table_{graph.content_hash()[:16]}.csv")
    with open(csv_path, "w", newline="") as f:
        table.write_csv(f)
    print(f"graph: {graph.name or args.graph}  vertices: {graph.n}  edges: {graph.edge_count}")
    print(f"eta_G: {_fmt_value(table.best_capture_time)}")
    print(f"rho_G: {_fmt_value(table.worst_capture_time)}")
    print(f"copwin: {table.copwin}")
    print(f"cache: {cache_path}{' (hit)' if cached else ''}")
    print(f"csv: {csv_path}")
    return 0


def cmd_check(args) -> int:
    only = args.only.split(",") if args.only else None
    reports = run_claims(args.level, args.seed, only)
    for r in reports:
        print(r.line())
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "claims.csv")
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["claim_id", "passed", "runtime_s", "params", "measured", "note"])
            for r in reports:
                w.writerow(
                    [r.claim_id, r.passed, f"{r.runtime_s:.3f}", json.dumps(r.params),
                     json.dumps(r.measured, default=str), r.note]
                )
        print(f"report: {path}")
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} claims passed")
    return CLAIM_FAILURE if failed else 0


def cmd_growth(args) -> int:
    from .graphs import triangular_truncation

    ks = sorted({int(k) for k in args.k.split(",")})
    if any(k < 1 for k in ks):
        return _usage_fail("truncation sizes must be >= 1")
    rows = []
    for k in ks:
        g = triangular_truncation(k)
        table = solve_capture_times(g).table
        rows.append((k, g.n, table.best_capture_time, table.worst_capture_time))
    print(f"{'k':>4} {'|V|':>6} {'eta_G':>8} {'rho_G':>8}")
    for k, n, eta_g, rho_g in rows:
        print(f"{k:>4} {n:>6} {_fmt_value(eta_g):>8} {_fmt_value(rho_g):>8}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "growth.csv")
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["k", "vertices", "eta_G", "rho_G"])
            for row in rows:
                w.writerow(row)
        print(f"csv: {path}")
    worsts = [r[3] for r in rows]
    if any(a > b for a, b in zip(worsts, worsts[1:])):
        print("error: rho_G decreased along the size list", file=sys.stderr)
        return CLAIM_FAILURE
    return 0


def _parse_start(text: str, graph) -> "Vertex | int":
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError as e:
        raise SystemExit(_usage_fail(f"bad start {text!r}: expected X,Y ({e})"))
    if isinstance(graph, QuadrantGraph) or graph.has_coords:
        if len(parts) != 2:
            raise SystemExit(_usage_fail(f"bad start {text!r}: expected X,Y"))
        return Vertex(parts[0], parts[1])
    # abstract finite graphs address vertices by id
    if len(parts) == 2 and parts[1] == 0:
        return parts[0]
    if len(parts) == 1:
        return parts[0]
    raise SystemExit(_usage_fail(f"bad start {text!r}: abstract graphs use a vertex id"))


def _make_strategy(name: str, side: str, graph, args, solved: dict):
    cap = 4 * args.cap_hint if args.cap_hint else 200
    coords = isinstance(graph, QuadrantGraph) or graph.has_coords
    if name in ("pushcop", "sidestep", "random", "minimax") and not coords:
        raise SystemExit(_usage_fail(f"{name} plays on coordinate graphs only"))
    if side == "cop":
        if name == "pushcop":
            return AxisPushCop()
        if name == "tablecop":
            return TableCop(_solved(graph, solved))
    else:
        if name == "sidestep":
            return SidestepRobber()
        if name == "stay":
            return StayPutRobber()
        if name == "random":
            return RandomRobber(args.seed, cap)
        if name == "minimax":
            return BoundedMinimaxRobber(3, cap)
        if name == "tablerobber":
            return TableRobber(_solved(graph, solved))
    raise SystemExit(_usage_fail(f"unknown {side} strategy {name!r}"))


def _solved(graph, cache: dict):
    if isinstance(graph, QuadrantGraph):
        raise SystemExit(_usage_fail("table strategies need a finite graph"))
    if "result" not in cache:
        cache["result"] = solve_capture_times(graph)
    return cache["result"]


def cmd_play(args) -> int:
    graph = _load_graph(args.graph)
    cop_start = _parse_start(args.cop_start, graph)
    robber_start = _parse_start(args.robber_start, graph)
    if isinstance(graph, QuadrantGraph):
        playing = graph
    elif graph.has_coords:
        playing = graph.oracle()
    else:
        playing = graph
    if isinstance(cop_start, Vertex):
        args.cap_hint = max(cop_start.x, cop_start.y, robber_start.x, robber_start.y, 1)
    else:
        args.cap_hint = graph.n
    solved: dict = {}
    cop = _make_strategy(args.cop, "cop", graph, args, solved)
    robber = _make_strategy(args.robber, "robber", graph, args, solved)
    convention = Convention(args.convention)
    transcript = run_game(
        playing, cop, robber, cop_start, robber_start, convention, move_cap=args.move_cap
    )
    print(f"{args.cop} vs {args.robber} on {getattr(graph, 'name', 'quadrant')}, {convention.value}")
    print(f"outcome: {transcript.outcome} after {transcript.cop_moves} cop moves "
          f"({len(transcript.moves)} moves total)")
    if args.out:
        with open(args.out, "w") as f:
            json.dump(transcript.to_dict(), f, indent=2)
        print(f"transcript: {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    app = service.create_app(coordinate_cap=args.coordinate_cap)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="copwin", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve a finite graph's capture table")
    sp.add_argument("--graph", required=True,
                    help="path, or builtin:p5 | builtin:path:M | builtin:tri:K | builtin:sq:N")
    sp.add_argument("--out", help="output directory for CSV and cache")
    sp.set_defaults(fn=cmd_solve)

    cp = sub.add_parser("check", help="run the claim-verification suite")
    cp.add_argument("--level", choices=[QUICK, FULL], default=QUICK)
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("--only", help="comma-separated claim ids")
    cp.add_argument("--out", help="output directory for the CSV report")
    cp.set_defaults(fn=cmd_check)

    gp = sub.add_parser("growth", help="capture-time table over truncation sizes")
    gp.add_argument("--k", required=True, help="comma-separated truncation sizes")
    gp.add_argument("--out", help="output directory for the CSV table")
    gp.set_defaults(fn=cmd_growth)

    pp = sub.add_parser("play", help="simulate one game")
    pp.add_argument("--graph", default="builtin:quadrant",
                    help="path or builtin spec (default: the infinite quadrant graph)")
    pp.add_argument("--cop", default="pushcop", help="pushcop | tablecop")
    pp.add_argument("--robber", default="sidestep",
                    help="sidestep | stay | random | minimax | tablerobber")
    pp.add_argument("--cop-start", required=True, metavar="X,Y")
    pp.add_argument("--robber-start", required=True, metavar="X,Y")
    pp.add_argument("--convention", choices=[c.value for c in Convention],
                    default=Convention.ROBBER_FIRST.value)
    pp.add_argument("--move-cap", type=int, default=None)
    pp.add_argument("--seed", type=int, default=0)
    pp.add_argument("--out", help="transcript JSON path")
    pp.set_defaults(fn=cmd_play)

    vp = sub.add_parser("serve", help="run the session service")
    vp.add_argument("--host", default="127.0.0.1")
    vp.add_argument("--port", type=int, default=8642)
    vp.add_argument("--coordinate-cap", type=int, default=service.DEFAULT_COORDINATE_CAP)
    vp.set_defaults(fn=cmd_serve)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except (GraphFormatError, OSError, ValueError) as e:
        return _usage_fail(str(e))


if __name__ == "__main__":
    sys.exit(main())
