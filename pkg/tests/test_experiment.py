import csv
import io
import json

from sdrkit.cli import main
from sdrkit.experiment import COLUMNS, records_to_csv, run_experiment, write_results

TWO_SWEEP = {"name": "ts", "family": "random_two_sweep", "algorithm": "two-sweep", "grid": {"n": [2, 3]}}


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_two_sweep_grid():
    rows = _rows(records_to_csv(run_experiment(TWO_SWEEP, 10, 1)))
    assert len(rows) == 20
    assert all(r["agreement"] == "true" and r["status"] == "ok" for r in rows)
    assert all(int(r["oracle_size"]) >= int(r["n"]) == int(r["sdr_size"]) for r in rows)


def test_rerun_identical():
    a = records_to_csv(run_experiment(TWO_SWEEP, 4, 9))
    b = records_to_csv(run_experiment(TWO_SWEEP, 4, 9))
    assert a == b
    assert a != records_to_csv(run_experiment(TWO_SWEEP, 4, 10))


def test_workers_do_not_change_output():
    assert records_to_csv(run_experiment(TWO_SWEEP, 3, 2, workers=2)) == \
        records_to_csv(run_experiment(TWO_SWEEP, 3, 2))


def test_quadratic_points():
    spec = {"name": "quad", "family": "quadratic_lower", "algorithm": "oracle",
            "points": [{"n": 6, "m": 3}, {"n": 8, "m": 4}]}
    rows = _rows(records_to_csv(run_experiment(spec, 1, 0)))
    assert [(r["n"], r["oracle_size"]) for r in rows] == [("6", "4"), ("8", "7")]
    assert all(int(r["node_count"]) > 0 for r in rows)


def test_budget_recorded_not_fatal():
    spec = {"family": "quadratic_lower", "algorithm": "oracle", "points": [{"n": 8, "m": 4}],
            "node_budget": 10}
    (row,) = _rows(records_to_csv(run_experiment(spec, 1, 0)))
    assert row["status"] == "budget-exceeded" and row["agreement"] == "false"


def test_written_layout(tmp_path):
    recs = run_experiment(TWO_SWEEP, 2, 0)
    csv_path, man = write_results(recs, TWO_SWEEP, tmp_path, 2, 0, timing=True)
    assert csv_path.parent == tmp_path / "ts"
    manifest = json.loads(man.read_text())
    assert manifest["spec"] == TWO_SWEEP and manifest["rows"] == 4
    header = csv_path.read_text().splitlines()[0].split(",")
    assert header == list(COLUMNS) + ["wall_time_ms"]


def test_cli(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(TWO_SWEEP))
    assert main(["experiment", "--spec", str(spec), "--trials", "2", "--seed", "3"]) == 0
    assert len(_rows(capsys.readouterr().out)) == 4
    assert main(["experiment", "--spec", str(spec), "--trials", "2", "--out", str(tmp_path / "r")]) == 0
    assert json.loads(capsys.readouterr().out)["agreement"] == 4
