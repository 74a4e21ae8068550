"""Batch runs on random regular graphs and ingested graphs, with aggregation.

Every recorded mu comes from a basis that has passed the GF(2) checks; a
failing trial aborts the batch naming its ``(n, d, variant, seed)``.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .baselines import min_weight_cycle_basis
from .engine import VARIANTS, build_cycle_basis, short_cycle_bound, variant
from .gf2 import NoCycleError, girth, verify_basis, verify_weakly_fundamental
from .graph import MultiGraph, is_connected, read_edge_list
from .randgraph import random_connected_regular

# Random d-regular graphs per size used for the published boxplots.
TABLE2_TRIALS: Dict[int, Dict[int, int]] = {
    3: {32: 4000, 64: 4000, 128: 4000, 256: 2000, 512: 1000, 1024: 500,
        2048: 250, 4096: 100, 8192: 50, 16384: 20},
    8: {32: 4000, 64: 4000, 128: 2000, 256: 1000, 512: 500, 1024: 250,
        2048: 100, 4096: 50, 8192: 20},
}
DESK_SIZES = (32, 64, 128, 256, 512, 1024)

RAW_COLUMNS = ["n", "d", "variant", "seed", "mu", "case1", "case2a", "case2b", "case3",
               "max_case3_cycle_len", "runtime_ms"]


class TrialVerificationError(RuntimeError):
    def __init__(self, n: int, d: int, variant: int, seed: int, reason: str) -> None:
        super().__init__(f"trial (n={n}, d={d}, variant={variant}, seed={seed}) failed: {reason}")
        self.key = (n, d, variant, seed)


@dataclass
class TrialSchedule:
    entries: List[Tuple[int, int, int]]

    def __post_init__(self) -> None:
        for n, d, t in self.entries:
            if t < 1:
                raise ValueError(f"trial count must be >= 1, got {t} for n={n}, d={d}")
            if (n * d) % 2 or d >= n:
                raise ValueError(f"no simple {d}-regular graph on {n} vertices")

    @classmethod
    def default(cls, divisor: int = 10, min_trials: int = 20,
                sizes: Sequence[int] = DESK_SIZES, degrees: Sequence[int] = (3, 8)) -> "TrialSchedule":
        """Published trial counts divided by ``divisor`` (floored at ``min_trials``)."""
        entries = []
        for d in degrees:
            for n in sizes:
                full = TABLE2_TRIALS.get(d, {}).get(n)
                if full is None:
                    continue
                entries.append((n, d, max(min_trials, full // divisor)))
        return cls(entries)

    @classmethod
    def full(cls) -> "TrialSchedule":
        return cls([(n, d, t) for d, row in TABLE2_TRIALS.items() for n, t in row.items()])

    @property
    def total_trials(self) -> int:
        return sum(t for _, _, t in self.entries)


@dataclass
class TrialRecord:
    n: int
    d: int
    variant: int
    seed: int
    mu: int
    case1: int
    case2a: int
    case2b: int
    case3: int
    max_case3_cycle_len: int
    runtime_ms: float
    # Extra checks; not part of the CSV.
    short_cycle_ok: Optional[bool] = field(default=None, compare=False)
    girth_bound_ok: Optional[bool] = field(default=None, compare=False)

    def csv_row(self) -> Dict[str, object]:
        return {k: getattr(self, k) for k in RAW_COLUMNS}


def run_trial(g: MultiGraph, variants: Iterable[int], seed: int, n: int, d: int,
              check_girth: bool = True) -> List[TrialRecord]:
    """Run each variant on ``g`` with ``seed`` and verify every basis."""
    g_len = None
    if check_girth and is_connected(g):
        try:
            g_len = girth(g)
        except NoCycleError:
            g_len = None
    out = []
    for v in variants:
        cfg = variant(v)
        t0 = time.perf_counter()
        basis, stats = build_cycle_basis(g, cfg, seed)
        elapsed = (time.perf_counter() - t0) * 1000.0
        report = verify_basis(g, basis)
        if not report.is_basis:
            raise TrialVerificationError(n, d, v, seed, f"not a basis: {report.as_dict()}")
        if not verify_weakly_fundamental(basis):
            raise TrialVerificationError(n, d, v, seed, "emission order is not weakly fundamental")
        short_ok = None
        if cfg.cross_edge == "first":
            short_ok = all(length <= short_cycle_bound(live) for length, live in
                           zip(stats.case3_lengths, stats.case3_live_vertices))
        girth_ok = None
        if g_len is not None and g.m:
            # mu * m >= girth * (m - n + 1), compared in integers.
            girth_ok = stats.mu * g.m >= g_len * (g.m - g.n + 1)
        out.append(TrialRecord(n, d, v, seed, stats.mu, stats.case1, stats.case2a, stats.case2b,
                               stats.case3, stats.max_case3_cycle_len, round(elapsed, 3),
                               short_ok, girth_ok))
    return out


def _job(args) -> List[TrialRecord]:
    n, d, seed, variants, check_girth = args
    g = random_connected_regular(n, d, seed)
    return run_trial(g, variants, seed, n, d, check_girth)


def run_trials(schedule: TrialSchedule, variants: Sequence[int] = tuple(VARIANTS),
               base_seed: int = 0, jobs: int = 1, check_girth: bool = True) -> List[TrialRecord]:
    """Raw per-trial records; trial ``t`` of every ``(n, d)`` uses seed ``base_seed + t``."""
    for v in variants:
        variant(v)
    tasks = [(n, d, base_seed + t, tuple(variants), check_girth)
             for n, d, trials in schedule.entries for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_job, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        chunks = [_job(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def run_schedule(schedule: TrialSchedule, variants: Sequence[int] = tuple(VARIANTS),
                 base_seed: int = 0, jobs: int = 1,
                 raw_csv: Union[str, Path, None] = None) -> Tuple[List["AggregateRow"], List[TrialRecord]]:
    records = run_trials(schedule, variants, base_seed, jobs)
    if raw_csv is not None:
        write_raw_csv(records, raw_csv)
    return aggregate(records), records


# -- aggregation ---------------------------------------------------------


@dataclass
class AggregateRow:
    n: int
    d: int
    variant: Union[int, str]
    trials: int
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: int
    mean: float
    case1_pct: float = 0.0
    case2a_pct: float = 0.0
    case2b_pct: float = 0.0
    case3_pct: float = 0.0


def box_stats(values: Sequence[float]) -> Dict[str, float]:
    """Median, quartiles, 1.5*IQR whiskers (to the furthest datum inside) and outliers."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("no values")
    q1, med, q3 = np.percentile(arr, [25, 50, 75])
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = arr[(arr >= lo_fence) & (arr <= hi_fence)]
    return {
        "median": float(med),
        "q1": float(q1),
        "q3": float(q3),
        "whisker_low": float(inside.min()),
        "whisker_high": float(inside.max()),
        "outliers": int(arr.size - inside.size),
        "mean": float(arr.mean()),
    }


def _shares(r: TrialRecord) -> List[float]:
    total = r.case1 + r.case2a + r.case2b + r.case3
    if total == 0:
        return [0.0, 0.0, 0.0, 0.0]
    return [100.0 * x / total for x in (r.case1, r.case2a, r.case2b, r.case3)]


def aggregate(records: Iterable[TrialRecord]) -> List[AggregateRow]:
    groups: Dict[Tuple[int, int, int], List[TrialRecord]] = {}
    for r in records:
        groups.setdefault((r.n, r.d, r.variant), []).append(r)
    rows = []
    for (n, d, v), rs in sorted(groups.items(), key=lambda kv: (kv[0][1], kv[0][0], str(kv[0][2]))):
        box = box_stats([r.mu for r in rs])
        shares = np.mean([_shares(r) for r in rs], axis=0)
        rows.append(AggregateRow(n, d, v, len(rs), **box,
                                 case1_pct=float(shares[0]), case2a_pct=float(shares[1]),
                                 case2b_pct=float(shares[2]), case3_pct=float(shares[3])))
    return rows


def write_raw_csv(records: Iterable[TrialRecord], path: Union[str, Path, None] = None) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=RAW_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.csv_row())
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_raw_csv(path: Union[str, Path]) -> List[TrialRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(TrialRecord(
                **{k: int(row[k]) for k in RAW_COLUMNS if k != "runtime_ms"},
                runtime_ms=float(row["runtime_ms"])))
    return out


def write_aggregate_csv(rows: Iterable[AggregateRow], path: Union[str, Path, None] = None) -> str:
    names = [f.name for f in fields(AggregateRow)]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_aggregate_csv(path: Union[str, Path]) -> List[AggregateRow]:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            v = row["variant"]
            rows.append(AggregateRow(
                n=int(row["n"]), d=int(row["d"]), variant=int(v) if v.isdigit() else v,
                trials=int(row["trials"]),
                **{k: float(row[k]) for k in ("median", "q1", "q3", "whisker_low", "whisker_high", "mean",
                                              "case1_pct", "case2a_pct", "case2b_pct", "case3_pct")},
                outliers=int(row["outliers"])))
    return rows


# -- growth fits ---------------------------------------------------------


@dataclass
class FitResult:
    model: str
    c: float
    ns: List[int]
    ratios: List[float]


def _model_value(n: float, model: str) -> float:
    if model == "log":
        return math.log2(n)
    if model == "log2":
        return math.log2(n) ** 2
    raise ValueError(f"unknown model {model!r}; expected 'log' or 'log2'")


def fit_coefficient(points: Sequence[Tuple[float, float]], model: str = "log2") -> FitResult:
    """Least-squares ``c`` for ``mu ~ c * f(n)`` and the ratios ``mu / (c f(n))``.

    ``model`` is ``"log"`` for ``log2 n`` or ``"log2"`` for ``(log2 n)**2``.
    """
    if len(points) < 2:
        raise ValueError("need at least two points")
    fs, mus = [], []
    for n, mu in points:
        if n < 2:
            raise ValueError(f"n must be >= 2, got {n}")
        fs.append(_model_value(n, model))
        mus.append(float(mu))
    denom = sum(f * f for f in fs)
    c = sum(m * f for m, f in zip(mus, fs)) / denom
    if c == 0:
        raise ValueError("all observations are zero; ratios undefined")
    ratios = [m / (c * f) for m, f in zip(mus, fs)]
    return FitResult(model, c, [int(n) for n, _ in points], ratios)


def median_points(rows: Iterable[AggregateRow], variant_id: Union[int, str], d: int) -> List[Tuple[int, float]]:
    return sorted((r.n, r.median) for r in rows if r.variant == variant_id and r.d == d)


# -- case frequencies ----------------------------------------------------


def case_frequencies(records: Iterable[TrialRecord]) -> Dict[str, float]:
    """Per-trial case percentages averaged over ``records``."""
    shares = [_shares(r) for r in records]
    if not shares:
        raise ValueError("no trials")
    mean = np.mean(shares, axis=0)
    return dict(zip(("case1", "case2a", "case2b", "case3"), map(float, mean)))


def case_frequency_report(n: int, d: int, variant_id: int = 3, trials: int = 25,
                          seed: int = 0, jobs: int = 1) -> Dict[str, float]:
    records = run_trials(TrialSchedule([(n, d, trials)]), [variant_id], seed, jobs, check_girth=False)
    return case_frequencies(records)


# -- ingested graphs -----------------------------------------------------


def ingest_graph(path: Union[str, Path]) -> MultiGraph:
    return read_edge_list(path)


def run_on_file(path: Union[str, Path], variants: Sequence[int] = (0, 3), trials: int = 100,
                seed: int = 0) -> List[AggregateRow]:
    """Median mu over ``trials`` seeds per variant, plus the minimum-length basis."""
    g = ingest_graph(path)
    return run_on_graph(g, variants, trials, seed)


def run_on_graph(g: MultiGraph, variants: Sequence[int] = (0, 3), trials: int = 100,
                 seed: int = 0) -> List[AggregateRow]:
    d = max((g.degree(v) for v in g.vertices()), default=0)
    records = []
    for v in variants:
        for t in range(trials):
            records.extend(run_trial(g, [v], seed + t, g.n, d, check_girth=False))
    rows = aggregate(records)
    mb = min_weight_cycle_basis(g)
    if not verify_basis(g, mb).is_basis:
        raise TrialVerificationError(g.n, d, -1, seed, "minimum basis failed verification")
    # Deterministic: one evaluation stands for every trial.
    mu = max(mb.participation().values(), default=0)
    box = box_stats([mu])
    rows.append(AggregateRow(g.n, d, "min-basis", trials, **box))
    return rows


def ratio_spread(ratios: Sequence[float]) -> float:
    return max(ratios) / min(ratios)


def strictly_increasing(xs: Sequence[float]) -> bool:
    return all(a < b for a, b in zip(xs, xs[1:]))


__all__ = [
    "TABLE2_TRIALS", "DESK_SIZES", "RAW_COLUMNS", "TrialSchedule", "TrialRecord", "AggregateRow",
    "FitResult", "TrialVerificationError", "run_trial", "run_trials", "run_schedule", "aggregate",
    "box_stats", "write_raw_csv", "read_raw_csv", "write_aggregate_csv", "read_aggregate_csv",
    "fit_coefficient", "median_points", "case_frequencies", "case_frequency_report",
    "ingest_graph", "run_on_file", "run_on_graph", "ratio_spread", "strictly_increasing",
]
