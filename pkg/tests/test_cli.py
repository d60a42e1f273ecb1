import json

from click.testing import CliRunner
import pytest

from goldenlat.cli import main
from goldenlat.constructions import e8_golden_inputs, f4
from goldenlat.qseries import QExp
from goldenlat.table import EXPECTED_TABLE


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(main, list(args), env=env, catch_exceptions=False)
    return invoke


def test_hmf_extremal_weight_6(run):
    r = run("--format", "json", "hmf", "extremal", "-w", "6")
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert (data["nu"], data["s_eta"], data["s_one"], data["pm"]) == ([2, 4], 196560, 37800, "+")


def test_hmf_extremal_weight_18(run):
    r = run("--format", "tsv", "hmf", "extremal", "-w", "18")
    assert r.output.split("\t")[2] == "6218175600"


@pytest.mark.parametrize("w", ["3", "0", "-2"])
def test_hmf_extremal_bad_weight(run, w):
    assert run("hmf", "extremal", "-w", w).exit_code == 2


def test_hmf_precision_below_three_is_usage_error(run):
    assert run("hmf", "extremal", "-w", "2", "--prec", "2").exit_code == 2


def test_hmf_insufficient_precision_exit_code(run):
    assert run("hmf", "extremal", "-w", "30", "--prec", "4").exit_code == 3


def test_hmf_generator_dump(run):
    r = run("hmf", "generator", "A2", "--prec", "3")
    f = QExp.loads(r.output)
    assert f[1, 2] == 120 and f.prec == 3


def test_table_reproduce(run):
    r = run("table", "reproduce")
    assert r.exit_code == 0
    assert r.output.strip().splitlines()[-1] == "12/12 rows match"
    assert "30\t(6,13)\t45792819072000\t3217294080000\t-" in r.output


def test_table_reproduce_corrupted_expectation(run, tmp_path):
    rows = [dict(r, nu=list(r["nu"])) for r in EXPECTED_TABLE]
    rows[2]["s_one"] = 37801
    path = tmp_path / "expected.json"
    path.write_text(json.dumps(rows))
    r = run("table", "reproduce", "--expected", str(path))
    assert r.exit_code == 1
    assert "mismatch weight 6 s_one: expected 37801, got 37800" in r.output
    assert "11/12 rows match" in r.output


def test_table_reproduce_low_precision(run):
    r = run("table", "reproduce", "--prec", "4")
    assert r.exit_code == 3
    assert "weight 30" in r.output


def test_precision_from_environment(run):
    r = run("table", "reproduce", env={"GOLDENLAT_PREC": "4"})
    assert r.exit_code == 3


def test_lattice_theta_f4(run):
    r = run("lattice", "theta", "--construct", "f4", "--prec", "3")
    f = QExp.loads(r.output)
    assert f[1, 2] == f[1, 3] == f[2, 3] == 120


def test_lattice_theta_threads_do_not_change_output(run):
    a = run("lattice", "theta", "--construct", "f4", "--prec", "3").output
    b = run("--threads", "2", "lattice", "theta", "--construct", "f4", "--prec", "3").output
    assert a == b


def test_lattice_golden_check_f4perp2(run):
    r = run("--format", "json", "lattice", "golden-check", "--construct", "f4perp2")
    assert r.exit_code == 0
    assert json.loads(r.output)["golden"] is True


def test_lattice_family(run):
    r = run("--format", "json", "lattice", "family", "--construct", "f4", "--a", "1")
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert (data["p"], data["min"], data["modular"]) == (11, 3, True)


def test_lattice_construct_round_trip(run, tmp_path):
    r = run("lattice", "construct", "f4")
    path = tmp_path / "f4.json"
    path.write_text(r.output)
    r = run("--format", "json", "lattice", "golden-check", "--file", str(path))
    assert json.loads(r.output)["golden"] is True


def test_lattice_file_parse_error_has_line(run, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 1,\n "entries": [[[2, 0]]\n}')
    r = CliRunner().invoke(main, ["lattice", "theta", "--file", str(path)])
    assert r.exit_code == 1
    assert "bad.json:3:" in r.output


def test_lattice_needs_exactly_one_source(run):
    r = CliRunner().invoke(main, ["lattice", "theta"])
    assert r.exit_code == 2


def test_import_golden(run, tmp_path):
    t, T, sigma, _ = e8_golden_inputs()
    path = tmp_path / "e8.json"
    path.write_text(json.dumps({"gram": {"m": 8, "entries": t}, "T": T, "sigma": sigma, "label": "E8"}))
    r = run("--format", "json", "lattice", "import-golden", str(path))
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["golden"] is True and data["galois"] is True


def test_import_golden_rejects(run, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"gram": [[2, 1], [1, 2]], "T": [[1, 0], [0, 1]]}))
    r = run("lattice", "import-golden", str(path))
    assert r.exit_code == 1
    assert "rejected: T does not satisfy T^2 + T = 1" in r.stderr
