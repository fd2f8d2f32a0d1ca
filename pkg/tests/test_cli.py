import csv
import json
import subprocess
import sys
from io import StringIO

import numpy as np
import pytest

import qfactor as qf
from qfactor.cli import CliError, bench_rows, main, parse_grid, parse_range


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(state, tmp_path, name="s.json"):
    path = tmp_path / name
    qf.write_state(state, path)
    return path


def test_check_product_exits_zero(tmp_path, capsys):
    path = write(qf.make_basis_state(4, "++++"), tmp_path)
    code, out, _ = run(["check", "--in", path], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "product" and report["n"] == 4
    assert report["constraint_count"] == 11


def test_check_ghz_exits_one_with_witness(tmp_path, capsys):
    path = write(qf.named_state("ghz", 3), tmp_path)
    code, out, _ = run(["check", "--in", path], capsys)
    assert code == 1
    report = json.loads(out)
    w = report["factorization"]["witness"]
    assert w["subset_k"] == 1
    assert w["indices"] == [[7, 8], [1, 2]]
    assert report["subsets"]["verdict"] == "entangled"


def test_check_wrong_length_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 3, "amps": [[0.5, 0]] * 7}))
    code, _, err = run(["check", "--in", path], capsys)
    assert code == 2 and "error" in err


def test_check_zero_vector_exits_two(tmp_path, capsys):
    path = write(qf.StateVector(np.zeros(4)), tmp_path)
    assert run(["check", "--in", path], capsys)[0] == 2


def test_check_missing_file_exits_two(tmp_path, capsys):
    assert run(["check", "--in", tmp_path / "nope.json"], capsys)[0] == 2


def test_strict_mode_zero_coefficient_exits_two(tmp_path, capsys):
    path = write(qf.named_state("bell_phi_plus", 2), tmp_path)
    code, _, err = run(["check", "--in", path, "--mode", "strict"], capsys)
    assert code == 2 and "c_2" in err


def test_subsets_n7(capsys):
    code, out, _ = run(["subsets", "--n", 7], capsys)
    lines = out.strip().split("\n")
    assert code == 0 and len(lines) == 6
    assert lines[-1] == "S_6: c_32 c_128 = c_64 c_96"
    assert lines[4] == "S_5: c_16/c_32 = c_48/c_64 = c_80/c_96 = c_112/c_128"


def test_subsets_n3(capsys):
    assert run(["subsets", "--n", 3, "--k", 2], capsys)[1] == "S_2: c_2 c_8 = c_4 c_6\n"
    assert run(["subsets", "--n", 3, "--k", 2, "--alt"], capsys)[1] == "S_2: c_1 c_7 = c_3 c_5\n"


def test_subsets_json(capsys):
    code, out, _ = run(["subsets", "--n", 4, "--json"], capsys)
    obj = json.loads(out)
    assert obj["constraint_count"] == 11
    assert obj["subsets"][2]["pairs"] == [[4, 8], [12, 16]]


@pytest.mark.parametrize("argv", [["--n", 1], ["--n", 27], ["--n", 3, "--k", 3], ["--n", 3, "--k", 0]])
def test_subsets_out_of_range(argv, capsys):
    assert run(["subsets", *argv], capsys)[0] == 2


def test_generate_check_round_trip(tmp_path, capsys):
    path = tmp_path / "s.json"
    for n in range(2, 11):
        for seed in range(100):
            assert run(["generate", "--n", n, "--seed", seed, "--out", path], capsys)[0] == 0
            assert run(["check", "--in", path], capsys)[0] == 0


def test_deterministic_output(tmp_path, capsys):
    outs = []
    for i in range(2):
        path = tmp_path / f"s{i}.json"
        run(["generate", "--n", 5, "--seed", 7, "--kind", "random", "--out", path], capsys)
        code, out, _ = run(["check", "--in", path], capsys)
        assert code == 1
        outs.append((path.read_bytes(), out))
    assert outs[0] == outs[1]


def test_generate_kinds(tmp_path, capsys):
    path = tmp_path / "s.json"
    run(["generate", "--n", 3, "--kind", "basis", "--pattern=-+-", "--out", path], capsys)
    amps = qf.read_state(path).amps
    assert amps[0b101] == 1 and np.count_nonzero(amps) == 1
    code, out, _ = run(["generate", "--n", 2, "--kind", "bell_phi_plus"], capsys)
    assert code == 0 and json.loads(out)["n"] == 2


def test_factorize_command(tmp_path, capsys):
    path = write(qf.tensor([(0.6, 0.8), (1, 0)]), tmp_path)
    code, out, _ = run(["factorize", "--in", path], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["verdict"] == "product"


def test_entropy_command(tmp_path, capsys):
    path = write(qf.named_state("bell_phi_plus", 2), tmp_path)
    code, out, _ = run(["entropy", "--in", path, "--cut", "1"], capsys)
    obj = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(obj["per_qubit_entropy"], [np.log(2)] * 2)
    np.testing.assert_allclose(obj["schmidt"]["1"], [2**-0.5] * 2)
    assert run(["entropy", "--in", path, "--cut", "x"], capsys)[0] == 2


def test_couple_command(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    assert run(["couple", "--a-grid", "0:4pi:5", "--out", out_path], capsys)[0] == 0
    rows = list(csv.DictReader(out_path.open()))
    assert len(rows) == 5
    assert float(rows[0]["residual"]) == 0
    assert float(rows[1]["a"]) == pytest.approx(np.pi)
    assert float(rows[1]["residual"]) == pytest.approx(0.5)
    assert float(rows[-1]["residual"]) <= 1e-12
    assert run(["couple", "--a-grid", "0:1"], capsys)[0] == 2


def test_parse_helpers():
    np.testing.assert_allclose(parse_grid("0:8pi:3"), [0, 4 * np.pi, 8 * np.pi])
    np.testing.assert_allclose(parse_grid("-1:0.5pi:2"), [-1, np.pi / 2])
    assert parse_range("3:5") == [3, 4, 5]
    assert parse_range("7") == [7]
    for bad in ["5:3", "a:b"]:
        with pytest.raises(CliError):
            parse_range(bad)
    with pytest.raises(CliError):
        parse_grid("0:xyz:3")


def test_max_n_guard(tmp_path, capsys, monkeypatch):
    path = write(qf.random_state(5, 0), tmp_path)
    monkeypatch.setenv("QFACTOR_MAX_N", "4")
    assert run(["check", "--in", path], capsys)[0] == 2
    assert run(["generate", "--n", 5], capsys)[0] == 2
    monkeypatch.setenv("QFACTOR_MAX_N", "lots")
    assert run(["generate", "--n", 2], capsys)[0] == 2


def test_bench_csv(capsys):
    code, out, _ = run(["bench", "--n", "12:13", "--reps", 1], capsys)
    rows = list(csv.DictReader(StringIO(out)))
    assert code == 0
    assert [r["n"] for r in rows] == ["12", "13"]
    assert rows[0]["oracle_s"] != "" and rows[1]["oracle_s"] == ""
    assert run(["bench", "--n", "1:3"], capsys)[0] == 2


def test_bench_n20_row():
    row = bench_rows([20], reps=1, seed=0)[0]
    assert row["constraint_count"] == 1048555
    assert row["oracle_s"] is None


def test_factorize_time_roughly_doubles():
    ns = list(range(15, 21))
    rows = bench_rows(ns, reps=3, seed=1)
    t = np.array([r["factorize_s"] for r in rows])
    slope = np.polyfit(ns, np.log2(t), 1)[0]
    # Expected growth factor 2 per qubit, with 4x slack either way.
    assert 0.5 <= 2**slope <= 8


def test_module_entry_point(tmp_path):
    path = write(qf.named_state("w", 3), tmp_path)
    proc = subprocess.run(
        [sys.executable, "-m", "qfactor", "check", "--in", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "entangled"
