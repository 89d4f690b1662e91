import csv
import io
import json
import subprocess
import sys

import pytest

from lsape.cli import main
from lsape.generators import GeneratorSpec, generate
from lsape.textio import read_matrix, write_matrix

from conftest import EXAMPLE_41, EXAMPLE_41_OPTIMUM
from lsape import EditCostMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.txt"
    write_matrix(EditCostMatrix(EXAMPLE_41), path, header=["worked example"])
    return path


def test_solve(capsys, example_file):
    code, out, _ = run(capsys, "solve", str(example_file))
    assert code == 0
    data = json.loads(out)
    assert data["cost"] == EXAMPLE_41_OPTIMUM
    assert {"rho", "varrho", "u", "v", "stats"} <= set(data)


@pytest.mark.parametrize("flags", [["--solver", "slsape"], ["--no-preprocess"], ["--tolerance", "1e-9"]])
def test_solve_variants(capsys, example_file, flags):
    code, out, _ = run(capsys, "solve", str(example_file), *flags)
    assert code == 0 and json.loads(out)["cost"] == EXAMPLE_41_OPTIMUM


def test_solve_zero_matrix(capsys, tmp_path):
    path = tmp_path / "zero.txt"
    path.write_text("2 3\n0 0 0 0\n0 0 0 0\n0 0 0 0\n")
    code, out, _ = run(capsys, "solve", str(path))
    assert code == 0 and json.loads(out)["cost"] == 0


@pytest.mark.parametrize("content", ["2 2\n1 2\n", "1 1\n1 1\n1 1\n", "garbage"])
def test_solve_bad_input(capsys, tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    code, _, err = run(capsys, "solve", str(path))
    assert code == 2 and "error" in err


def test_solve_missing_file(capsys, tmp_path):
    assert run(capsys, "solve", str(tmp_path / "nope.txt"))[0] == 2


def test_generate(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--family", "product", "--n", "2", "--m", "2")
    assert code == 0
    assert out.splitlines()[0].startswith("# family=product")
    path = tmp_path / "g.txt"
    path.write_text(out)
    assert read_matrix(path).costs.tolist() == [[1, 2, 3], [2, 4, 6], [3, 6, 0]]


def test_generate_is_deterministic(capsys):
    argv = ["generate", "--n", "4", "--m", "6", "--seed", "7", "--range", "1:20", "--integer"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    assert "seed=7" in first


@pytest.mark.parametrize("argv", [
    ["generate", "--n", "2", "--m", "2", "--range", "5:1"],
    ["generate", "--n", "2", "--m", "2", "--range", "oops"],
    ["generate", "--n", "-2", "--m", "2"],
    ["generate", "--family", "nope", "--n", "2", "--m", "2"],
])
def test_generate_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def _solution_file(tmp_path, data):
    path = tmp_path / "sol.json"
    path.write_text(json.dumps(data))
    return path


def test_verify_solver_output(capsys, tmp_path, example_file):
    _, out, _ = run(capsys, "solve", str(example_file))
    sol = _solution_file(tmp_path, json.loads(out))
    code, report, _ = run(capsys, "verify", str(example_file), str(sol))
    assert code == 0
    assert "class: complete" in report and "slackness: ok" in report


def test_verify_real_valued_output(capsys, tmp_path):
    inst = tmp_path / "real.txt"
    write_matrix(generate(GeneratorSpec("uniform-random", 12, 9, seed=4)), inst)
    _, out, _ = run(capsys, "solve", str(inst))
    sol = _solution_file(tmp_path, json.loads(out))
    assert run(capsys, "verify", str(inst), str(sol))[0] == 0


def test_verify_tampered_rho(capsys, tmp_path, example_file):
    _, out, _ = run(capsys, "solve", str(example_file))
    data = json.loads(out)
    data["rho"][0] = data["rho"][1]
    code, report, _ = run(capsys, "verify", str(example_file), str(_solution_file(tmp_path, data)))
    assert code == 1
    assert "class: invalid" in report and "violation" in report


def test_verify_partial(capsys, tmp_path, example_file):
    data = {"rho": [4, 0, 1, 5], "varrho": [3, 5, 5, 1, 4]}
    code, report, _ = run(capsys, "verify", str(example_file), str(_solution_file(tmp_path, data)))
    assert code == 1 and "class: partial" in report


def test_verify_wrong_cost_and_duals(capsys, tmp_path, example_file):
    _, out, _ = run(capsys, "solve", str(example_file))
    data = json.loads(out)
    data["cost"] = 17
    assert run(capsys, "verify", str(example_file), str(_solution_file(tmp_path, data)))[0] == 1
    data = json.loads(out)
    data["u"][0] += 1
    code, report, _ = run(capsys, "verify", str(example_file), str(_solution_file(tmp_path, data)))
    assert code == 1 and "VIOLATED" in report


def test_verify_bad_json(capsys, tmp_path, example_file):
    path = tmp_path / "sol.json"
    path.write_text("{")
    assert run(capsys, "verify", str(example_file), str(path))[0] == 2


@pytest.mark.parametrize("n, m, expected", [("1", "1", "2"), ("2", "3", "13"), ("0", "0", "1")])
def test_count(capsys, n, m, expected):
    code, out, _ = run(capsys, "count", "--n", n, "--m", m)
    assert code == 0 and out.strip() == expected


def test_count_big(capsys):
    out = run(capsys, "count", "--n", "60", "--m", "60")[1]
    assert int(out) > 2**200


def test_bench_sweep(capsys, tmp_path):
    out_csv = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--n", "30", "--m-range", "30:300:90", "--reps", "5", "--out", str(out_csv))
    assert code == 0
    rows = list(csv.DictReader(out_csv.open()))
    assert len(rows) == 8
    assert list(rows[0]) == ["family", "n", "m", "solver", "reps", "median_s", "mean_s"]
    assert sorted({int(r["m"]) for r in rows}) == [30, 120, 210, 300]
    assert all(float(r["median_s"]) > 0 and r["reps"] == "5" for r in rows)


def test_bench_sizes_to_stdout(capsys):
    code, out, _ = run(capsys, "bench", "--families", "product,flipped-product", "--sizes", "3:4,5:2", "--reps", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 1 + 2 * 2 * 2


@pytest.mark.parametrize("argv", [
    ["bench", "--sizes", "3x4"],
    ["bench", "--sizes", "3:-4"],
    ["bench", "--n", "3", "--m-range", "1:2"],
    ["bench", "--n", "3", "--m-range", "9:2:1"],
    ["bench"],
    ["bench", "--sizes", "3:3", "--reps", "0"],
    ["bench", "--sizes", "3:3", "--families", "what"],
])
def test_bench_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_module_entry_point(example_file):
    proc = subprocess.run(
        [sys.executable, "-m", "lsape", "solve", str(example_file)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cost"] == EXAMPLE_41_OPTIMUM
