from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclebasis.experiments import (
    DESK_SIZES, RAW_COLUMNS, TABLE2_TRIALS, AggregateRow, TrialSchedule, TrialVerificationError,
    aggregate, box_stats, case_frequencies, fit_coefficient, median_points, read_aggregate_csv,
    read_raw_csv, run_on_file, run_on_graph, run_schedule, run_trial, run_trials, write_aggregate_csv,
    write_raw_csv,
)
from cyclebasis.graph import MultiGraph, write_edge_list
from cyclebasis import experiments
from cyclebasis.baselines import min_weight_cycle_basis
from cyclebasis.gf2 import max_edge_participation

from graphs import path, petersen, triangle


def test_schedule_defaults():
    s = TrialSchedule.default()
    assert {n for n, _, _ in s.entries} == set(DESK_SIZES)
    assert (32, 3, 400) in s.entries and (1024, 8, 25) in s.entries
    assert all(t >= 20 for _, _, t in s.entries)
    assert TrialSchedule.full().total_trials == sum(sum(r.values()) for r in TABLE2_TRIALS.values())


def test_schedule_validation():
    with pytest.raises(ValueError):
        TrialSchedule([(32, 3, 0)])
    with pytest.raises(ValueError):
        TrialSchedule([(33, 3, 5)])
    with pytest.raises(ValueError):
        TrialSchedule([(8, 8, 5)])


def test_run_schedule_bookkeeping(tmp_path):
    rows, records = run_schedule(TrialSchedule([(32, 3, 50)]), [0, 3], base_seed=7,
                                 raw_csv=tmp_path / "raw.csv")
    assert len(records) == 100
    assert len(rows) == 2
    assert {r.variant for r in rows} == {0, 3}
    assert sorted({r.seed for r in records}) == list(range(7, 57))
    assert all(r.short_cycle_ok is not False and r.girth_bound_ok for r in records)
    back = read_raw_csv(tmp_path / "raw.csv")
    assert back == records
    assert aggregate(back) == rows


def test_run_trials_deterministic_and_parallel():
    s = TrialSchedule([(32, 3, 6), (32, 8, 4)])
    a = run_trials(s, [0, 4], base_seed=3)
    b = run_trials(s, [0, 4], base_seed=3, jobs=2)
    key = lambda r: (r.n, r.d, r.variant, r.seed, r.mu, r.case1, r.case2a, r.case2b, r.case3)
    assert sorted(map(key, a)) == sorted(map(key, b))


def test_verification_failure_names_trial(monkeypatch):
    from cyclebasis.gf2 import VerificationReport

    def broken(g, basis):
        return VerificationReport(True, True, 0, 1, 1, False, False, [])

    monkeypatch.setattr(experiments, "verify_basis", broken)
    with pytest.raises(TrialVerificationError) as info:
        run_trials(TrialSchedule([(32, 3, 1)]), [2], base_seed=5)
    assert info.value.key == (32, 3, 2, 5)
    assert "seed=5" in str(info.value)


def test_box_stats():
    b = box_stats([1, 2, 3, 4, 100])
    assert b["median"] == 3 and b["q1"] == 2 and b["q3"] == 4
    assert b["whisker_high"] == 4 and b["outliers"] == 1
    with pytest.raises(ValueError):
        box_stats([])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=1, max_size=60))
def test_box_stats_ordering(values):
    b = box_stats(values)
    assert b["q1"] <= b["median"] <= b["q3"]
    assert b["whisker_low"] >= b["q1"] - 1.5 * (b["q3"] - b["q1"])
    assert b["whisker_low"] <= b["whisker_high"]
    assert b["median"] == np.median(values)


def test_aggregate_csv_round_trip(tmp_path):
    rows = [AggregateRow(32, 3, 0, 10, 4.0, 3.0, 5.0, 2.0, 7.0, 1, 4.2, 1.0, 50.0, 9.0, 40.0),
            AggregateRow(10, 3, "min-basis", 10, 3.0, 3.0, 3.0, 3.0, 3.0, 0, 3.0)]
    write_aggregate_csv(rows, tmp_path / "a.csv")
    assert read_aggregate_csv(tmp_path / "a.csv") == rows


def test_raw_columns():
    assert RAW_COLUMNS == ["n", "d", "variant", "seed", "mu", "case1", "case2a", "case2b", "case3",
                           "max_case3_cycle_len", "runtime_ms"]
    assert write_raw_csv([]).strip() == ",".join(RAW_COLUMNS)


def test_fit_examples():
    pts = [(n, 2 * math.log2(n)) for n in (8, 64, 512)]
    fit = fit_coefficient(pts, "log")
    assert fit.c == pytest.approx(2)
    assert fit.ratios == pytest.approx([1, 1, 1])
    pts = [(n, 0.5 * math.log2(n) ** 2) for n in (8, 64, 512, 4096)]
    r = fit_coefficient(pts, "log").ratios
    assert all(a < b for a, b in zip(r, r[1:]))
    assert fit_coefficient(pts, "log2").c == pytest.approx(0.5)
    fit = fit_coefficient([(64, 9.0), (64, 9.0)], "log2")
    assert fit.c == pytest.approx(9 / 36) and fit.ratios == pytest.approx([1, 1])


def test_fit_errors():
    with pytest.raises(ValueError):
        fit_coefficient([(64, 3)])
    with pytest.raises(ValueError):
        fit_coefficient([(1, 3), (4, 3)])
    with pytest.raises(ValueError):
        fit_coefficient([(4, 3), (8, 3)], "cubic")
    with pytest.raises(ValueError):
        fit_coefficient([(4, 0), (8, 0)])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(2, 10 ** 5), st.floats(0.5, 100)), min_size=2, max_size=10),
       st.sampled_from(["log", "log2"]))
def test_fit_is_least_squares(points, model):
    fit = fit_coefficient(points, model)
    f = np.array([math.log2(n) ** (1 if model == "log" else 2) for n, _ in points])
    mu = np.array([m for _, m in points])
    c, *_ = np.linalg.lstsq(f[:, None], mu, rcond=None)
    assert fit.c == pytest.approx(float(c[0]))


def test_median_points():
    rows = [AggregateRow(64, 3, 0, 1, 5, 5, 5, 5, 5, 0, 5), AggregateRow(32, 3, 0, 1, 4, 4, 4, 4, 4, 0, 4),
            AggregateRow(32, 8, 0, 1, 9, 9, 9, 9, 9, 0, 9), AggregateRow(32, 3, 1, 1, 3, 3, 3, 3, 3, 0, 3)]
    assert median_points(rows, 0, 3) == [(32, 4), (64, 5)]


def test_case_frequencies_tree():
    records = run_trial(path(9), [0, 3], 0, 9, 2)
    shares = case_frequencies(records)
    assert shares["case3"] == 0 and shares["case2b"] == 0
    assert shares["case1"] + shares["case2a"] == pytest.approx(100)


def test_case_frequencies_sum_to_100():
    rec = run_trials(TrialSchedule([(64, 3, 5)]), [3])
    assert sum(case_frequencies(rec).values()) == pytest.approx(100)
    with pytest.raises(ValueError):
        case_frequencies([])


def test_run_on_file(tmp_path):
    g = petersen()
    write_edge_list(g, tmp_path / "p.txt")
    rows = run_on_file(tmp_path / "p.txt", trials=8, seed=2)
    assert [r.variant for r in rows] == [0, 3, "min-basis"]
    mb = rows[-1]
    # Least total length does not mean least mu.
    expected = max_edge_participation(min_weight_cycle_basis(g))
    assert mb.median == mb.q1 == mb.q3 == expected
    for r in rows:
        assert r.median >= 2


def test_triangle_file_all_one(tmp_path):
    write_edge_list(triangle(), tmp_path / "t.txt")
    assert [r.median for r in run_on_file(tmp_path / "t.txt", trials=5)] == [1, 1, 1]


def test_run_on_graph_variants():
    rows = run_on_graph(petersen(), variants=(0, 1, 2, 3, 4), trials=3)
    assert len(rows) == 6
