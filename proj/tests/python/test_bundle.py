"""Reads result bundles the way a plotting front end would."""

import csv
import json
import subprocess

import pytest

import boussinesq as bq


def read_csv(path):
    with open(path) as f:
        rows = [line for line in f if not line.startswith("#")]
    reader = csv.reader(rows)
    header = next(reader)
    return header, [[float(x) for x in row] for row in reader]


@pytest.fixture(scope="module")
def bundle(tmp_path_factory):
    out = tmp_path_factory.mktemp("bundle") / "dingemans"
    cfg = {
        "scenario": "dingemans",
        "h": 0.2,
        "t_end": 2,
        "snapshot_times": [1],
        "output_dir": str(out),
    }
    result = bq.run(json.dumps(cfg))
    assert result["bundle"] == str(out)
    return out, result


def test_manifest_fields(bundle, schema):
    out, result = bundle
    m = json.loads((out / "manifest.json").read_text())
    assert m["version"] == bq.version()
    assert m["steps"] == result["steps"] == 50
    assert m["final_time"] == pytest.approx(2.0)
    assert m["mass"]["initial"] == result["initial_mass"]
    assert abs(m["mass"]["final"] / m["mass"]["initial"] - 1) < 1e-13
    assert m["grid"]["h"] == pytest.approx(0.2)
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(m["config"], schema)


def test_gauge_columns_follow_manifest_order(bundle):
    out, _ = bundle
    m = json.loads((out / "manifest.json").read_text())
    header, rows = read_csv(out / m["files"]["gauges"])
    assert header == ["t"] + [g["column"] for g in m["gauges"]]
    assert len(m["gauges"]) == 6
    assert [g["x"] for g in m["gauges"]] == m["config"]["gauges"]
    # the comment line carries the same locations
    with open(out / m["files"]["gauges"]) as f:
        comments = [line for line in f if line.startswith("# gauge x")]
    assert [float(x) for x in comments[0].split(",")[1:]] == [g["x"] for g in m["gauges"]]
    times = [r[0] for r in rows]
    assert all(b > a for a, b in zip(times, times[1:]))
    assert len(rows) == m["steps"] + 1


def test_snapshots_listed_in_manifest(bundle):
    out, _ = bundle
    m = json.loads((out / "manifest.json").read_text())
    files = {s["requested_t"]: s for s in m["snapshots"]}
    assert sorted(files) == [1, 2]
    assert files[2]["file"] == "snapshot_t2.csv"
    header, rows = read_csv(out / files[1]["file"])
    assert header == ["x", "b", "d", "v", "s"]
    assert len(rows) == m["grid"]["n"]
    for x, b, d, v, s in rows:
        assert s == pytest.approx(d + b - 0.8, abs=1e-15)
        assert d > 0


def test_steps_csv(bundle):
    out, _ = bundle
    m = json.loads((out / "manifest.json").read_text())
    header, rows = read_csv(out / m["files"]["steps"])
    assert header == ["t", "E", "min_depth", "dt"]
    assert len(rows) == m["steps"] + 1
    assert rows[0][0] == 0.0


def test_overlap_window_of_shifted_series(bundle):
    # simulation against itself shifted by a constant: the overlapping window
    # is the simulation interval cut by the shift
    out, _ = bundle
    _, rows = read_csv(out / "gauges.csv")
    shift = 0.5
    t_sim = [r[0] for r in rows]
    t_exp = [t + shift for t in t_sim]
    lo, hi = max(t_sim[0], t_exp[0]), min(t_sim[-1], t_exp[-1])
    assert (lo, hi) == (pytest.approx(0.5), pytest.approx(2.0))


def test_error_curve_csv_from_cli(cli, tmp_path):
    path = tmp_path / "err.csv"
    subprocess.run([cli, "dispersion", "--set", "set3", "--kmax", "6.283185307179586", "--n", "100",
                    "--out", str(path)], check=True)
    header, rows = read_csv(path)
    assert header == ["k", "omega_euler", "omega_model", "rel_err", "abs_err"]
    assert len(rows) == 100
    for k, we, wm, rel, ab in rows:
        assert ab == pytest.approx(abs(wm - we), abs=1e-15)
        assert rel == pytest.approx(ab / we, rel=1e-12)


def test_config_error_writes_nothing(tmp_path):
    out = tmp_path / "never"
    with pytest.raises(bq.ConfigError):
        bq.run(json.dumps({"scenario": "dingemans", "h": 0.2, "params": "set1", "output_dir": str(out)}))
    assert not out.exists()
