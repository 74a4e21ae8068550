"""Command-line entry point: ``python -m cyclebasis <subcommand>``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import ballsbins
from .baselines import cheeger_exact, min_weight_cycle_basis
from .basis import CycleBasis
from .engine import RunStats, build_cycle_basis, variant
from .experiments import (
    DESK_SIZES, TrialSchedule, case_frequency_report, fit_coefficient, median_points,
    read_aggregate_csv, run_on_file, run_schedule, write_aggregate_csv, write_raw_csv,
)
from .gf2 import NoCycleError, girth_lower_bound, max_edge_participation, verify_basis, verify_weakly_fundamental
from .graph import format_edge_list, is_connected, read_edge_list
from .randgraph import random_connected_regular, random_regular

STATS_COLUMNS = ["n", "m", "variant", "seed", "mu", "case1", "case2a", "case2b", "case3",
                 "max_case3_cycle_len"]


def basis_document(basis: CycleBasis, stats: Optional[RunStats] = None, **meta) -> str:
    doc = dict(meta)
    doc["cycles"] = [list(c.edges) for c in basis]
    if stats is not None:
        doc["stats"] = stats.as_record()
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def stats_csv(row: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=STATS_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerow(row)
    return buf.getvalue()


def _emit(args, name: str, text: str) -> None:
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)
        print(out / name)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    make = random_connected_regular if args.connected else random_regular
    g = make(args.n, args.d, args.seed)
    _emit(args, f"rrg_n{args.n}_d{args.d}_s{args.seed}.txt", format_edge_list(g))
    return 0


def cmd_basis(args) -> int:
    g = read_edge_list(args.graph)
    v = int(args.variant)
    basis, stats = build_cycle_basis(g, variant(v), args.seed)
    doc = basis_document(basis, stats, variant=v, seed=args.seed)
    row = {"n": g.n, "m": g.m, "variant": v, "seed": args.seed, **stats.as_record()}
    if args.out_dir:
        _emit(args, "basis.json", doc)
        _emit(args, "stats.csv", stats_csv(row))
    else:
        sys.stdout.write(doc)
    return 0


def cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    doc = json.loads(Path(args.basis).read_text())
    cycles = doc["cycles"] if isinstance(doc, dict) else doc
    report = verify_basis(g, cycles).as_dict()
    report["weakly_fundamental"] = verify_weakly_fundamental(cycles)
    report["mu"] = max_edge_participation(cycles)
    if is_connected(g):
        try:
            report["girth_lower_bound"] = str(girth_lower_bound(g))
        except NoCycleError:
            pass
    _emit(args, "verify.json", json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0 if report["is_basis"] else 1


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x]


def cmd_experiment(args) -> int:
    if args.full:
        schedule = TrialSchedule.full()
    else:
        schedule = TrialSchedule.default(args.divisor, args.min_trials, args.sizes, args.degrees)
    rows, records = run_schedule(schedule, args.variants, args.seed, args.jobs)
    _emit(args, "raw.csv", write_raw_csv(records))
    _emit(args, "aggregate.csv", write_aggregate_csv(rows))
    return 0


def cmd_fit(args) -> int:
    rows = read_aggregate_csv(args.aggregate)
    pts = median_points(rows, args.variant, args.degree)
    fit = fit_coefficient(pts, args.model)
    lines = [f"model={fit.model} c={fit.c:.6f}", "n,median,ratio"]
    lines += [f"{n},{mu},{r:.6f}" for (n, mu), r in zip(pts, fit.ratios)]
    _emit(args, f"fit_v{args.variant}_d{args.degree}_{args.model}.csv", "\n".join(lines) + "\n")
    return 0


def cmd_bins(args) -> int:
    buf = io.StringIO()
    if args.process == "process1":
        res = ballsbins.process1(args.M, args.m_min, args.seed)
        w = csv.DictWriter(buf, fieldnames=["iteration", "m", "k", "max_load"], lineterminator="\n")
        w.writeheader()
        w.writerows(res.trajectory)
        name = "process1.csv"
    elif args.process == "process2":
        res = ballsbins.process2(args.M, args.m_min, args.seed, args.c, args.balls)
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["epoch", "m", "k", "max_load", "bad", "rounds", "mean_increment"])
        for e in res.epochs:
            w.writerow([e.epoch, e.m, e.k, e.max_load, e.bad, e.rounds, f"{e.mean_increment:.6f}"])
        name = "process2.csv"
    else:
        m = args.M
        k = args.k if args.k else ballsbins.balls_per_cycle(m)
        res = ballsbins.coupled_p1_p1a_p2(m, k, args.seed)
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "p1", "p1a", "p2"])
        for i, (a, b, c) in enumerate(zip(res.p1, res.p1a, res.p2)):
            w.writerow([i, int(a), int(b), int(c)])
        name = "couple.csv"
    _emit(args, name, buf.getvalue())
    return 0


def cmd_cheeger(args) -> int:
    g = read_edge_list(args.graph)
    h = cheeger_exact(g)
    _emit(args, "cheeger.txt", f"{h} {float(h):.6f}\n")
    return 0


def cmd_minbasis(args) -> int:
    g = read_edge_list(args.graph)
    basis = min_weight_cycle_basis(g)
    doc = basis_document(basis, total_length=basis.total_length(), mu=max_edge_participation(basis))
    _emit(args, "minbasis.json", doc)
    return 0


def cmd_cases(args) -> int:
    shares = case_frequency_report(args.n, args.d, args.variant, args.trials, args.seed, args.jobs)
    text = "case,percent\n" + "".join(f"{k},{v:.4f}\n" for k, v in shares.items())
    _emit(args, f"cases_n{args.n}_d{args.d}_v{args.variant}.csv", text)
    return 0


def cmd_compare(args) -> int:
    rows = run_on_file(args.graph, args.variants, args.trials, args.seed)
    _emit(args, "compare.csv", write_aggregate_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out-dir", default=None)

    p = argparse.ArgumentParser(prog="cyclebasis", parents=[common],
                                description="Cycle bases with low maximum edge participation.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="random d-regular graph as an edge list")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--connected", action="store_true", help="redraw until connected")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("basis", parents=[common], help="cycle basis of an edge-list file")
    s.add_argument("graph")
    s.add_argument("--variant", type=int, default=3, choices=range(5))
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("verify", parents=[common], help="check a basis JSON against a graph")
    s.add_argument("graph")
    s.add_argument("basis")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("experiment", parents=[common], help="batch run on random regular graphs")
    s.add_argument("--sizes", type=_int_list, default=list(DESK_SIZES))
    s.add_argument("--degrees", type=_int_list, default=[3, 8])
    s.add_argument("--variants", type=_int_list, default=[0, 1, 2, 3, 4])
    s.add_argument("--divisor", type=int, default=10)
    s.add_argument("--min-trials", type=int, default=20)
    s.add_argument("--full", action="store_true", help="full published schedule (days of CPU)")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("fit", parents=[common], help="fit c*log2(n) or c*log2(n)^2 to medians")
    s.add_argument("aggregate")
    s.add_argument("--variant", type=int, default=0)
    s.add_argument("--degree", type=int, default=3)
    s.add_argument("--model", choices=["log", "log2"], default="log2")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("bins", parents=[common], help="balls-into-bins processes")
    s.add_argument("process", choices=["process1", "process2", "couple"])
    s.add_argument("--M", type=int, default=3 * 2 ** 12, help="initial buckets (couple: m)")
    s.add_argument("--m-min", type=int, default=12)
    s.add_argument("--c", type=float, default=0.1)
    s.add_argument("--balls", choices=["k", "k-3"], default="k")
    s.add_argument("--k", type=int, default=0, help="couple only; default 2*ceil(log2(2m/3))")
    s.set_defaults(func=cmd_bins)

    s = sub.add_parser("cheeger", parents=[common], help="exact Cheeger constant (n <= 26)")
    s.add_argument("graph")
    s.set_defaults(func=cmd_cheeger)

    s = sub.add_parser("minbasis", parents=[common], help="minimum total length basis")
    s.add_argument("graph")
    s.set_defaults(func=cmd_minbasis)

    s = sub.add_parser("cases", parents=[common], help="case frequency report")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--variant", type=int, default=3)
    s.add_argument("--trials", type=int, default=25)
    s.set_defaults(func=cmd_cases)

    s = sub.add_parser("compare", parents=[common], help="V0, V3 and min-basis on one file")
    s.add_argument("graph")
    s.add_argument("--variants", type=_int_list, default=[0, 3])
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_compare)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
