from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cyclebasis.cli import main
from cyclebasis.graph import read_edge_list, write_edge_list

from graphs import complete, cycle, petersen


@pytest.fixture
def petersen_file(tmp_path):
    p = tmp_path / "petersen.txt"
    write_edge_list(petersen(), p)
    return p


def test_gen_and_basis_and_verify(tmp_path, capsys):
    out = tmp_path / "o"
    assert main(["gen", "--n", "20", "--d", "3", "--seed", "4", "--connected", "--out-dir", str(out)]) == 0
    gfile = out / "rrg_n20_d3_s4.txt"
    g = read_edge_list(gfile)
    assert g.n == 20 and g.m == 30
    assert main(["basis", str(gfile), "--variant", "3", "--seed", "2", "--out-dir", str(out)]) == 0
    doc = json.loads((out / "basis.json").read_text())
    assert len(doc["cycles"]) == 11
    assert doc["variant"] == 3 and doc["seed"] == 2
    assert set(doc["stats"]) == {"mu", "case1", "case2a", "case2b", "case3", "max_case3_cycle_len"}
    header, row = (out / "stats.csv").read_text().splitlines()
    assert header.startswith("n,m,variant,seed,mu")
    assert row.startswith("20,30,3,2,")
    capsys.readouterr()
    assert main(["verify", str(gfile), str(out / "basis.json")]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["is_basis"] and report["weakly_fundamental"]


def test_verify_rejects_bad_basis(tmp_path, capsys):
    g = tmp_path / "k4.txt"
    write_edge_list(complete(4), g)
    bad = tmp_path / "b.json"
    bad.write_text(json.dumps({"cycles": [[0, 1, 3], [0, 1, 3], [1, 2, 5]]}))
    assert main(["verify", str(g), str(bad)]) == 1
    assert json.loads(capsys.readouterr().out)["is_basis"] is False


def test_basis_stdout_is_deterministic(petersen_file, capsys):
    main(["basis", str(petersen_file), "--variant", "4", "--seed", "9"])
    first = capsys.readouterr().out
    main(["basis", str(petersen_file), "--variant", "4", "--seed", "9"])
    assert capsys.readouterr().out == first


def test_cheeger_and_minbasis(tmp_path, capsys):
    c6 = tmp_path / "c6.txt"
    write_edge_list(cycle(6), c6)
    main(["cheeger", str(c6)])
    assert capsys.readouterr().out.split()[0] == "2/3"
    main(["minbasis", str(c6)])
    doc = json.loads(capsys.readouterr().out)
    assert doc["total_length"] == 6 and doc["mu"] == 1


def test_bins(tmp_path):
    out = tmp_path / "b"
    main(["bins", "process1", "--M", "96", "--seed", "1", "--out-dir", str(out)])
    lines = (out / "process1.csv").read_text().splitlines()
    assert lines[0] == "iteration,m,k,max_load" and len(lines) == 1 + (96 - 12) // 3
    main(["bins", "process2", "--M", "384", "--out-dir", str(out)])
    assert (out / "process2.csv").read_text().startswith("epoch,m,k,max_load,bad")
    main(["bins", "couple", "--M", "24", "--out-dir", str(out)])
    rows = (out / "couple.csv").read_text().splitlines()[1:]
    assert len(rows) == 12
    for r in rows:
        _, a, b, c = map(int, r.split(","))
        assert a >= b >= c


def test_experiment_fit_cases(tmp_path, capsys):
    out = tmp_path / "e"
    main(["experiment", "--sizes", "32,64", "--degrees", "3", "--variants", "0,3",
          "--min-trials", "6", "--divisor", "100000", "--out-dir", str(out)])
    raw = (out / "raw.csv").read_text().splitlines()
    assert len(raw) == 1 + 2 * 2 * 6
    capsys.readouterr()
    main(["fit", str(out / "aggregate.csv"), "--variant", "0", "--degree", "3", "--model", "log"])
    text = capsys.readouterr().out
    assert text.startswith("model=log c=")
    main(["cases", "--n", "32", "--d", "3", "--trials", "3"])
    shares = dict(l.split(",") for l in capsys.readouterr().out.splitlines()[1:])
    assert sum(map(float, shares.values())) == pytest.approx(100)


def test_compare(petersen_file, capsys):
    main(["compare", str(petersen_file), "--trials", "4"])
    lines = capsys.readouterr().out.splitlines()
    assert [l.split(",")[2] for l in lines[1:]] == ["0", "3", "min-basis"]


def test_module_entry_point(petersen_file):
    out = subprocess.run([sys.executable, "-m", "cyclebasis", "cheeger", str(petersen_file)],
                         capture_output=True, text=True, check=True)
    assert out.stdout.split()[0] == "1"


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["basis"])
    with pytest.raises(SystemExit):
        main(["nonsense"])
