import subprocess
import sys

import pytest

from metric_median import GenSpec, generate, query_trace, write_instance
from metric_median.cli import CSV_FIELDS, main


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def line4(tmp_path):
    path = tmp_path / "line4.txt"
    assert run("gen", "--kind", "line", "--n", 4, "--out", path) == 0
    return path


def test_gen_writes_files(tmp_path):
    a = tmp_path / "a.txt"
    assert run("gen", "--kind", "line", "--n", 16, "--out", a) == 0
    assert a.read_text().splitlines()[1] == "n 16"
    b1, b2 = tmp_path / "b1.txt", tmp_path / "b2.txt"
    for path in (b1, b2):
        assert run("gen", "--kind", "euclidean", "--n", 10, "--dim", 2, "--seed", 7, "--out", path) == 0
    assert b1.read_text() == b2.read_text()
    assert b1.read_text().startswith("euclidean-points 1\nn 10 dim 2\n")


def test_gen_bad_n_exits_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        run("gen", "--kind", "graph", "--n", 0, "--out", tmp_path / "x.txt")
    assert info.value.code == 2


def test_solve_line4(line4, capsys):
    assert run("solve", "--input", line4, "--h", 2) == 0
    assert capsys.readouterr().out.strip() == "index=0 proxy=6 queries=12 t=2"


def test_solve_uniform16(tmp_path, capsys):
    path = tmp_path / "u.txt"
    run("gen", "--kind", "uniform", "--n", 16, "--out", path)
    capsys.readouterr()
    assert run("solve", "--input", path, "--h", 2, "--validate", "--parallel") == 0
    assert capsys.readouterr().out.startswith("index=0 ")


def test_solve_h1_exits_2(line4):
    with pytest.raises(SystemExit) as info:
        run("solve", "--input", line4, "--h", 1)
    assert info.value.code == 2


def test_solve_missing_file_exits_1(tmp_path):
    assert run("solve", "--input", tmp_path / "nope.txt", "--h", 2) == 1


def test_solve_malformed_file_exits_1(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("metric-matrix 1\nn 3\n0 1 1\n")
    assert run("solve", "--input", path, "--h", 2) == 1
    assert "line" in capsys.readouterr().err


def test_solve_validate_rejects_non_metric(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("metric-matrix 1\nn 3\n0 5 10\n5 0 1\n10 1 0\n")
    assert run("solve", "--input", path, "--h", 2, "--validate") == 1


def test_solve_trace_equals_schedule(tmp_path):
    inst = tmp_path / "g.txt"
    write_instance(generate(GenSpec("graph", 16, seed=3)), inst)
    trace = tmp_path / "trace.txt"
    assert run("solve", "--input", inst, "--h", 3, "--trace", trace) == 0
    expected = "".join(f"{i} {j}\n" for i, j in query_trace(16, 3))
    assert trace.read_bytes() == expected.encode()


def test_trace_command(capsys):
    assert run("trace", "--n", 4, "--h", 2) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:4] == ["0 1", "1 2", "2 3", "3 0"] and len(lines) == 12


def test_verify_outputs(line4, tmp_path, capsys):
    assert run("verify", "--input", line4, "--h", 2) == 0
    assert capsys.readouterr().out.strip() == "ratio=1.5 bound=4 PASS"
    u = tmp_path / "u.txt"
    run("gen", "--kind", "uniform", "--n", 16, "--out", u)
    assert run("verify", "--input", u, "--h", 2) == 0
    assert capsys.readouterr().out.strip() == "ratio=1.0 bound=4 PASS"
    one = tmp_path / "one.txt"
    run("gen", "--kind", "line", "--n", 1, "--out", one)
    assert run("verify", "--input", one, "--h", 2) == 0
    assert capsys.readouterr().out.strip() == "ratio=1.0 bound=4 PASS"


def _read_csv(path):
    lines = path.read_text().splitlines()
    rows = [line.split(",") for line in lines if not line.startswith("#")]
    comments = [line for line in lines if line.startswith("#")]
    return rows, comments


def test_bench_csv_and_slope(tmp_path):
    out = tmp_path / "b.csv"
    assert run("bench", "--kind", "cycle", "--h", 2, "--n-list", "256,1024,4096", "--exact-max", 1024, "--csv", out) == 0
    rows, comments = _read_csv(out)
    assert rows[0] == CSV_FIELDS
    assert ",".join(rows[0]) == "kind,n,h,t,queries,distinct_pairs,proxy_cost,true_cost,opt_cost,ratio,elapsed_ms,seed"
    body = [dict(zip(rows[0], r)) for r in rows[1:]]
    assert [int(r["n"]) for r in body] == [256, 1024, 4096]
    assert body[0]["ratio"] == "1.0" and body[2]["opt_cost"] == "" and body[2]["ratio"] == ""
    for r in body:
        n, h, t = int(r["n"]), int(r["h"]), int(r["t"])
        assert int(r["queries"]) <= 2 * h * n * t
        assert int(r["distinct_pairs"]) <= h * n * t
    assert len(comments) == 1
    slope = float(comments[0].split("=")[1])
    assert 1.4 <= slope <= 1.6


def test_bench_single_n_omits_slope(tmp_path):
    out = tmp_path / "b.csv"
    assert run("bench", "--kind", "line", "--h", 3, "--n-list", "64", "--csv", out) == 0
    _, comments = _read_csv(out)
    assert comments == []


def test_bench_empty_list_exits_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        run("bench", "--kind", "line", "--h", 2, "--n-list", "", "--csv", tmp_path / "x.csv")
    assert info.value.code == 2


def test_module_entry_point(line4):
    proc = subprocess.run(
        [sys.executable, "-m", "metric_median", "solve", "--input", str(line4), "--h", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "index=0 proxy=6 queries=12 t=2"
    proc = subprocess.run([sys.executable, "-m", "metric_median", "solve"], capture_output=True, text=True)
    assert proc.returncode == 2
