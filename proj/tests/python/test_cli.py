import csv
import json
import subprocess


def run(cli, *args, **kw):
    return subprocess.run([cli, *args], capture_output=True, text=True, **kw)


def read_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_help_exits_zero(cli):
    assert run(cli, "--help").returncode == 0
    assert run(cli, "fit", "--help").returncode == 0


def test_usage_errors_exit_two(cli, tmp_path):
    assert run(cli).returncode != 0
    assert run(cli, "bogus").returncode == 2
    assert run(cli, "fit", "--nonsense").returncode == 2

    sim = str(tmp_path / "d.csv")
    assert run(cli, "simulate", "--example", "1", "--n", "50", "--seed", "1", "--out", sim).returncode == 0
    r = run(cli, "fit", "--input", sim, "--label", "y", "--lambda", "1")
    assert r.returncode == 2
    assert "--marker" in r.stderr


def test_computation_errors_exit_three(cli, data_dir, tmp_path):
    out = str(tmp_path / "curve.csv")
    r = run(cli, "pima", "--input", data_dir + "/pima_synth.csv", "--out", out,
            "--grid", "smoke", "--age-min", "900", "--age-max", "905")
    assert r.returncode == 3
    assert "support" in r.stderr


def test_simulate_is_deterministic(cli, tmp_path):
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    run(cli, "simulate", "--example", "2", "--n", "40", "--seed", "11", "--out", a)
    run(cli, "simulate", "--example", "2", "--n", "40", "--seed", "11", "--out", b)
    assert open(a).read() == open(b).read()
    header = open(a).readline().strip()
    assert header == "x,y,z1"


def test_fit_predict_curve_pipeline(cli, tmp_path):
    sim = str(tmp_path / "train.csv")
    model = str(tmp_path / "model.json")
    pred = str(tmp_path / "pred.csv")
    curve = str(tmp_path / "curve.csv")

    assert run(cli, "simulate", "--example", "1", "--n", "150", "--seed", "3", "--out", sim).returncode == 0
    r = run(cli, "fit", "--input", sim, "--marker", "x", "--label", "y",
            "--lambda", "0.05", "--out", model)
    assert r.returncode == 0
    assert "objective=" in r.stdout
    assert "dca_iterations=" in r.stdout
    saved = json.load(open(model))
    assert saved["delta"] == 0.1
    assert len(saved["a"]) == 150

    assert run(cli, "predict", "--model", model, "--input", sim, "--out", pred).returncode == 0
    rows = read_rows(pred)
    assert len(rows) == 150
    assert all(float(r_["c_hat"]) for r_ in rows)

    r = run(cli, "youden-curve", "--model", model, "--input", sim, "--marker", "x",
            "--label", "y", "--h", "0.5", "--grid", "1.5:4.5:0.5", "--out", curve)
    assert r.returncode == 0
    rows = read_rows(curve)
    assert len(rows) == 7
    assert all(-1.0 <= float(r_["j_hat"]) <= 1.0 for r_ in rows)
    zs = [float(r_["z1"]) for r_ in rows]
    assert zs == sorted(zs)

    # default query set: the training profiles themselves
    r = run(cli, "youden-curve", "--model", model, "--input", sim, "--marker", "x",
            "--label", "y", "--h", "0.5", "--out", curve)
    assert r.returncode == 0
    assert len(read_rows(curve)) == 150


def test_pooled_outputs(cli, tmp_path):
    data = str(tmp_path / "d.csv")
    with open(data, "w") as fh:
        fh.write("marker,status\n2,1\n3,1\n0,0\n1,0\n")
    roc = str(tmp_path / "roc.csv")
    r = run(cli, "pooled", "--input", data, "--marker", "marker", "--label", "status",
            "--roc-out", roc)
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "cut,youden"
    cut, youden = map(float, lines[1].split(","))
    assert cut == 1.5
    assert youden == 1.0
    pts = read_rows(roc)
    assert pts[0]["one_minus_spec"] == "1"
    assert pts[-1]["sensitivity"] == "0"


def test_bench_csv_schema(cli, tmp_path):
    out = str(tmp_path / "table.csv")
    r = run(cli, "bench", "--example", "1", "--n", "60", "--reps", "3", "--grid", "smoke",
            "--seed", "5", "--out", out)
    assert r.returncode == 0
    rows = read_rows(out)
    assert {r_["metric"] for r_ in rows} == {"eise_c", "eise_j"}
    assert {r_["method"] for r_ in rows} == {"CAE", "NRM"}
    assert all(float(r_["mean"]) >= 0 for r_ in rows)


def test_config_file_precedence(cli, tmp_path):
    sim = str(tmp_path / "train.csv")
    run(cli, "simulate", "--example", "1", "--n", "60", "--seed", "8", "--out", sim)
    cfg = tmp_path / "fit.json"
    cfg.write_text(json.dumps({"input": sim, "marker": "x", "label": "y", "lambda": 0.5}))
    model = str(tmp_path / "m.json")

    r = run(cli, "fit", "--config", str(cfg), "--out", model)
    assert r.returncode == 0
    assert json.load(open(model))["lambda"] == 0.5

    # explicit flag wins over config value
    r = run(cli, "fit", "--config", str(cfg), "--lambda", "2.0", "--out", model)
    assert r.returncode == 0
    assert json.load(open(model))["lambda"] == 2.0

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"no_such_key": 1}))
    assert run(cli, "fit", "--config", str(bad), "--out", model).returncode == 2


def test_pima_workflow(cli, data_dir, tmp_path):
    out = str(tmp_path / "curve.csv")
    r = run(cli, "pima", "--input", data_dir + "/pima_synth.csv", "--out", out,
            "--grid", "smoke", "--seed", "1")
    assert r.returncode == 0
    assert "lambda=" in r.stdout
    rows = read_rows(out)
    assert rows[0]["age"] == "22"
    assert rows[-1]["age"] == "59"
    c = [float(r_["c_hat"]) for r_ in rows]
    j = [float(r_["j_hat"]) for r_ in rows]
    assert c[-1] > c[0]
    assert j[-1] < j[0]
